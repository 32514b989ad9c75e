import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from er_dirichlet.errors import DomainError
from er_dirichlet.series import (
    Family,
    SeriesSpec,
    closed_form_s1,
    eval_alt,
    eval_batch,
    eval_geo,
    eval_heli,
    eval_series,
    probe_oscillation,
    probe_sigma_limit,
)
from er_dirichlet.special_functions import Precision


EPS = np.finfo(float).eps


def rounding_scale(s, x):
    """sum |x|^n n^-sigma: the size of the terms that cancel in the sum."""
    return eval_geo(complex(s).real, abs(x)).value.real


def mp_series(family, s, x):
    phase = {Family.ALT: lambda n: (-1) ** (n - 1),
             Family.GEO: lambda n: 1,
             Family.HELI: lambda n: mpmath.mpc(0, 1) ** (n + 1)}[family]
    return complex(mpmath.nsum(lambda n: phase(n) * mpmath.mpf(x) ** n / n ** mpmath.mpc(s),
                               [1, mpmath.inf]))


class TestFrozenValues:
    @pytest.mark.parametrize("s,a,expected", oracles.ALT)
    def test_alt(self, s, a, expected):
        r = eval_alt(s, a)
        assert abs(r.value - expected) <= 32 * EPS * max(1, rounding_scale(s, a))

    @pytest.mark.parametrize("s,b,expected", oracles.GEO)
    def test_geo(self, s, b, expected):
        assert abs(eval_geo(s, b).value - expected) <= 1e-14

    @pytest.mark.parametrize("s,t,expected", oracles.HELI)
    def test_heli(self, s, t, expected):
        assert abs(eval_heli(s, t).value - expected) <= 1e-14

    def test_alt_s1(self):
        r = eval_alt(1, 0.5)
        assert abs(r.value - math.log(1.5)) <= 1e-16
        assert r.tail_bound <= 1e-16

    def test_zero_parameter(self):
        r = eval_alt(3, 0.0)
        assert r.value == 0 and r.tail_bound == 0


class TestClosedForms:
    @given(st.floats(0, 0.99))
    def test_alt_log(self, a):
        assert abs(eval_alt(1, a).value - closed_form_s1(Family.ALT, a)) <= 4e-16 * max(1, a)

    @given(st.floats(-0.99, 0.99))
    def test_geo_log(self, b):
        ref = closed_form_s1(Family.GEO, b)
        assert abs(eval_geo(1, b).value - ref) <= 1e-15 * max(1, abs(ref))

    @given(st.floats(-0.99, 0.99))
    def test_heli_log(self, t):
        ref = closed_form_s1(Family.HELI, t)
        assert abs(eval_heli(1, t).value - ref) <= 1e-15
        # the real part is -arctan t
        assert abs(ref.real + math.atan(t)) <= 1e-16

    def test_alt_s0(self):
        # sum (-1)^(n-1) a^n = a / (1 + a)
        assert abs(eval_alt(0, 0.5).value - 1 / 3) <= 1e-16


class TestAgainstMpmath:
    @given(st.sampled_from(list(Family)), st.floats(-4, 6), st.floats(-8, 8),
           st.floats(0.01, 0.95))
    def test_random(self, family, x, y, p):
        s = complex(x, y)
        ref = mp_series(family, s, p)
        r = eval_series(family, s, p)
        assert abs(r.value - ref) <= 32 * EPS * max(1, rounding_scale(s, p))


class TestTailBounds:
    @given(st.floats(-3, 4), st.floats(-5, 5), st.floats(0.05, 0.95))
    def test_bound_holds_at_loose_precision(self, x, y, a):
        # stop early, then compare with a tight evaluation
        loose = eval_alt(complex(x, y), a, Precision(rel_tol=1e-6))
        tight = eval_alt(complex(x, y), a)
        slack = 32 * EPS * max(1, rounding_scale(complex(x, y), a))
        assert abs(loose.value - tight.value) <= loose.tail_bound + slack

    def test_negative_sigma_growth(self):
        # terms first grow like n^2.5 here; the bound must still be honoured
        loose = eval_alt(-2.5, 0.9, Precision(rel_tol=1e-4))
        tight = eval_alt(-2.5, 0.9)
        slack = 32 * EPS * rounding_scale(-2.5, 0.9)
        assert abs(loose.value - tight.value) <= loose.tail_bound + slack

    def test_terms_monotone_in_tolerance(self):
        a = eval_alt(0.5, 0.9, Precision(rel_tol=1e-6)).terms_used
        b = eval_alt(0.5, 0.9, Precision(rel_tol=1e-12)).terms_used
        assert a < b


class TestBatch:
    def test_batch_equals_scalar(self):
        params = np.linspace(0, 0.95, 37)
        vals, terms, bounds = eval_batch(Family.ALT, 0.7 - 2j, params)
        for p, v, n in zip(params, vals, terms):
            r = eval_alt(0.7 - 2j, p)
            assert v == r.value and n == r.terms_used

    def test_batch_shape_preserved(self):
        vals, terms, bounds = eval_batch(Family.GEO, 2, np.full((3, 4), 0.2))
        assert vals.shape == terms.shape == bounds.shape == (3, 4)

    def test_batch_rejects_bad_member(self):
        with pytest.raises(DomainError):
            eval_batch(Family.ALT, 1, [0.2, 1.0])


class TestDomain:
    @pytest.mark.parametrize("family,p", [(Family.ALT, 1.0), (Family.ALT, -0.1),
                                          (Family.GEO, 1.0), (Family.GEO, -1.0),
                                          (Family.HELI, 1.5), (Family.ALT, math.nan)])
    def test_rejected(self, family, p):
        with pytest.raises(DomainError):
            eval_series(family, 1, p)

    def test_spec_object(self):
        spec = SeriesSpec("heli", 1, 0.5)
        assert spec.evaluate().value == eval_heli(1, 0.5).value
        with pytest.raises(DomainError):
            SeriesSpec("alt", 1, 2.0)

    def test_nonfinite_s(self):
        with pytest.raises(DomainError):
            eval_alt(complex(math.inf, 0), 0.5)


class TestLargeSigma:
    def test_sigma_30(self):
        res, bound = probe_sigma_limit(0.9, 30)
        assert abs(res.value - 0.9) <= 8e-9
        assert abs(res.value - 0.9) <= bound

    def test_sigma_60(self):
        res, bound = probe_sigma_limit(0.5, 60)
        assert abs(res.value - 0.5) <= 1e-15

    @given(st.floats(1, 200), st.floats(0.01, 0.99))
    def test_bound_general(self, sigma, a):
        res, bound = probe_sigma_limit(a, sigma)
        assert abs(res.value - a) <= bound * (1 + 1e-12) + 1e-16

    def test_oscillation_bounded(self):
        vals = probe_oscillation(0.5, 0.5, [10, 100, 1000])
        assert len(vals) == 3
        # |L| <= sum a^n / n^sigma < a / (1 - a)
        assert all(abs(v) < 1 for v in vals)

    def test_probe_domain(self):
        with pytest.raises(DomainError):
            probe_sigma_limit(1.0, 30)
