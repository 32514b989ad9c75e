import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from er_dirichlet.errors import DomainError
from er_dirichlet.identities import (
    PROP1_X_BOUND,
    PROP1_Y_BOUND,
    HalfIntegerGrid,
    IdentityReport,
    check_arctan_telescope,
    check_entry11,
    check_log_identity,
    check_prop1,
    check_prop3_twisted,
    check_prop4_helicoid,
    check_prop6,
    er_product_check,
    half_integer_arrays,
    twisted_arguments,
)

in_x = st.floats(-1.05, 1.05)
in_y = st.floats(-1.2, 1.2)


class TestHalfIntegerGrid:
    def test_values(self):
        g = HalfIntegerGrid(1)
        assert g.e == 1.0
        assert math.isclose(g.c, math.pi / 2) and math.isclose(g.d, 1.5 * math.pi)

    def test_ordering(self):
        _, c, d, e, f = half_integer_arrays(50)
        assert np.all(c < d)
        assert np.all((0 < f) & (f < e) & (e <= 1))
        assert np.all(np.diff(e) < 0)


class TestProduct:
    def test_trivial(self):
        r = er_product_check(0, 1.0, 10, 1e-9)
        assert r.lhs == r.rhs == 1 and r.abs_residual == 0 and r.passed

    def test_cosine_oracle(self):
        r = er_product_check(0.5, 0.3, 100_000, 1e-6)
        assert abs(r.lhs - oracles.COS_RATIO) <= 1e-15
        assert r.abs_residual <= r.tail_bound and r.passed

    def test_excluded_a(self):
        with pytest.raises(DomainError) as info:
            er_product_check(0.5, math.pi / 2, 100, 1e-6)
        assert "pi/2" in str(info.value)

    def test_sign_changes(self):
        # X + A past pi/2 makes the ratio negative
        r = er_product_check(1.5, 0.4, 100_000, 1e-6)
        assert r.lhs.real < 0 and r.passed


class TestLogIdentity:
    def test_equal_arguments(self):
        r = check_log_identity(0.3, 0.3, 100, 1e-12)
        assert r.lhs == 0 and r.rhs == 0 and r.passed

    def test_oracle(self):
        r = check_log_identity(0.3, 0.5, 100_000, 1e-6)
        assert abs(r.lhs - oracles.LOG_COS_RATIO) <= 1e-15
        assert r.abs_residual <= r.tail_bound

    def test_domain(self):
        with pytest.raises(DomainError):
            check_log_identity(math.pi / 2, 0.1, 100, 1e-6)
        with pytest.raises(DomainError):
            check_log_identity(0.1, 2.0, 100, 1e-6)


class TestProp1:
    def test_zero(self):
        r = check_prop1(0, 0, 100, 1e-12)
        assert r.lhs == 0 and r.rhs == 0 and r.passed

    def test_example(self):
        r = check_prop1(0.3, 0.5, 10_000, 1e-5)
        assert abs(r.lhs - oracles.LOG_COS_RATIO) <= 1e-15
        assert r.passed

    @pytest.mark.parametrize("x,y,bound", [(1.2, 0, "1.1107"), (0, 1.3, "1.2533")])
    def test_box(self, x, y, bound):
        with pytest.raises(DomainError) as info:
            check_prop1(x, y, 100, 1e-6)
        assert bound in str(info.value)

    def test_box_constants(self):
        assert math.isclose(PROP1_X_BOUND, math.pi / (2 * math.sqrt(2)))
        assert math.isclose(PROP1_Y_BOUND, math.sqrt(math.pi / 2))

    @settings(max_examples=25)
    @given(in_x, in_y)
    def test_agrees_with_log_identity(self, x, y):
        K = 2000
        tol = 1e-6
        a = check_prop1(x, y, K, tol)
        b = check_log_identity(x, y, K, tol)
        assert abs(a.rhs - b.rhs) <= 2 * (tol / (10 * K)) * K
        assert abs(a.lhs - b.lhs) <= 1e-15

    @settings(max_examples=20)
    @given(in_x, in_y)
    def test_tail_bound_by_doubling(self, x, y):
        K = 1000
        r1 = check_prop1(x, y, K, 1e-9)
        r2 = check_prop1(x, y, 2 * K, 1e-9)
        assert r1.abs_residual <= r1.tail_bound + 1e-12
        assert r1.abs_residual >= r2.abs_residual - 2 * r2.tail_bound

    @settings(max_examples=15)
    @given(in_x, in_y)
    def test_lhs_is_log_cosine(self, x, y):
        r = check_prop1(x, y, 100, 1e-6)
        assert abs(r.lhs - math.log(math.cos(y) / math.cos(x))) <= 1e-13


class TestProp3:
    def test_half_pi_is_prop1(self):
        a = check_prop3_twisted(0.3, 0.5, math.pi / 2, 10_000, 1e-5)
        b = check_prop1(0.3, 0.5, 10_000, 1e-5)
        assert (a.lhs, a.rhs, a.abs_residual, a.tail_bound) == (b.lhs, b.rhs, b.abs_residual,
                                                                b.tail_bound)

    def test_pi_over_3(self):
        r = check_prop3_twisted(0.4, 0.2, math.pi / 3, 10_000, 1e-5)
        assert abs(r.lhs - oracles.PROP3_PI3) <= 1e-14
        assert r.passed

    def test_substitution(self):
        xs, ys = twisted_arguments(0.4, 0.2, math.pi / 3)
        # x = u + v cos(theta), y = v sin(theta) solved for (u, v)
        assert math.isclose(xs, 0.4 - 0.2 / math.sqrt(3))
        assert math.isclose(ys, 0.2 / math.sin(math.pi / 3))

    def test_degenerate_theta(self):
        with pytest.raises(DomainError):
            check_prop3_twisted(0.3, 0.5, 0, 100, 1e-5)


class TestArctan:
    def test_entry11_zero(self):
        r = check_entry11(0, 1.0, 10, 1e-12)
        assert r.lhs == 0 and r.rhs == 0 and r.passed

    def test_entry11_half_pi(self):
        r = check_entry11(1.0, math.pi / 2, 10_000, 1e-4)
        assert abs(r.lhs) <= 1e-16 and r.passed

    def test_entry11_generic(self):
        r = check_entry11(1.0, 0.7, 10_000, 1e-4)
        assert abs(r.lhs - oracles.ENTRY11_LHS) <= 1e-15
        assert r.passed and r.abs_residual <= r.tail_bound
        assert any("k pi - A" in n for n in r.notes)

    def test_entry11_degenerate(self):
        with pytest.raises(DomainError):
            check_entry11(1.0, math.pi, 100, 1e-4)

    def test_telescope(self):
        assert check_arctan_telescope(0, 10, 1e-12).abs_residual == 0
        r = check_arctan_telescope(math.pi / 2, 10_000, 1e-3)
        assert abs(r.lhs - math.pi / 4) <= 1e-16 and r.passed
        r = check_arctan_telescope(5, 10_000, 1e-2)
        assert abs(r.lhs - oracles.ATAN_10_OVER_PI) <= 1e-15
        assert r.abs_residual <= r.tail_bound

    @pytest.mark.parametrize("X", [0.5, 1, math.pi / 2, 5])
    def test_telescope_bound_size(self, X):
        r = check_arctan_telescope(X, 10_000, 0)
        assert r.abs_residual <= r.tail_bound <= 2.5 * 2 * X / (math.pi * 10_000)

    @given(st.floats(-6, 6))
    def test_oddness(self, X):
        a = check_arctan_telescope(X, 500, 1e-3)
        b = check_arctan_telescope(-X, 500, 1e-3)
        assert a.lhs == -b.lhs
        assert a.abs_residual == b.abs_residual

    @given(st.floats(-3, 3), st.floats(0.1, 3.0))
    def test_entry11_oddness(self, X, A):
        a = check_entry11(X, A, 300, 1e-3)
        b = check_entry11(-X, A, 300, 1e-3)
        assert a.lhs == -b.lhs and a.abs_residual == b.abs_residual


class TestHelicoid:
    def test_prop4_zero(self):
        r = check_prop4_helicoid(0, 1e-12)
        assert r.lhs == 0 and r.rhs == 0

    def test_prop4_half(self):
        r = check_prop4_helicoid(0.5, 1e-10)
        assert abs(r.rhs - oracles.ATAN_HALF) <= 1e-15 and r.passed
        assert r.details["sign_convention"] == -0.5

    def test_prop4_domain(self):
        with pytest.raises(DomainError):
            check_prop4_helicoid(1.5, 1e-10)

    @given(st.floats(-0.95, 0.95))
    def test_prop4_everywhere(self, t):
        r = check_prop4_helicoid(t, 1e-12)
        assert abs(r.rhs - math.atan(t)) <= 1e-12
        assert r.details["imag_residue"] <= 1e-12

    def test_prop6_zero(self):
        r = check_prop6(0, 10, 1e-12)
        assert r.lhs == 0 and r.passed

    @pytest.mark.parametrize("t", [0.3, 0.5, 0.9])
    def test_prop6(self, t):
        r = check_prop6(t, 10_000, 1e-3)
        assert abs(r.lhs.real + 2 * math.atan(t)) <= 1e-15
        assert r.passed and r.abs_residual <= r.tail_bound

    @pytest.mark.parametrize("t", [0.2, 0.7])
    def test_prop4_prop6_consistent(self, t):
        r6 = check_prop6(t, 10_000, 1e-3)
        assert abs(-0.5 * r6.rhs.real - math.atan(t)) <= r6.tail_bound + 1e-10


class TestReport:
    def test_round_trip(self):
        r = check_prop6(0.5, 1000, 1e-3)
        d = json.loads(json.dumps(r.to_dict()))
        back = IdentityReport.from_dict(d)
        assert back == r
        assert back.rejudge() == r.passed

    @given(in_x, in_y, st.floats(1e-12, 1e-2))
    @settings(max_examples=20)
    def test_pass_rule(self, x, y, tol):
        r = check_prop1(x, y, 200, tol)
        assert r.passed == (r.abs_residual <= r.tail_bound + r.tolerance)
        assert r.abs_residual == abs(r.lhs - r.rhs)
