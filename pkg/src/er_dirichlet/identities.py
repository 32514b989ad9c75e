"""Numerical checks of the Euler-Ramanujan identities and their Dirichlet-series forms.

Every check returns an :class:`IdentityReport` holding both sides, the
residual, a bound on the truncation error of the right-hand side and the
tolerance it was judged against.  A report passes exactly when
``abs_residual <= tail_bound + tolerance``.

Outer tail bounds are rigorous first-order bounds multiplied by a safety
factor of two (the factor also absorbs rounding in the partial sums).
Inner Dirichlet-series tails are certified by :mod:`er_dirichlet.series`
and added on top.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .series import Family, eval_batch
from .special_functions import Precision, csum

__all__ = [
    "IdentityReport",
    "HalfIntegerGrid",
    "half_integer_arrays",
    "er_product_check",
    "check_log_identity",
    "check_prop1",
    "check_prop3_twisted",
    "check_entry11",
    "check_arctan_telescope",
    "check_prop4_helicoid",
    "check_prop6",
    "PROP1_X_BOUND",
    "PROP1_Y_BOUND",
]

SAFETY = 2.0
GUARD = 1e-8
PROP1_X_BOUND = math.pi / (2 * math.sqrt(2))
PROP1_Y_BOUND = math.sqrt(math.pi / 2)

HELI_SIGN_NOTE = ("helicoid bracket uses the -1/2 factor: arctan(y/x) = "
                  "-1/2 [L(1, y/x) - M(1, -y/x)]; the stated +1/2 contradicts the "
                  "closed form -i log(1 - i t)")
ENTRY11_NOTE = ("evaluated in corrected form arctan(tanh X cot A) = arctan(X/A) + "
                "sum_k [arctan(X/(k pi + A)) - arctan(X/(k pi - A))]; the printed form "
                "repeats k pi + A and sums to zero")


def _encode(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _decode(d):
    if isinstance(d, dict):
        return complex(d["re"], d["im"])
    return complex(d)


@dataclass(frozen=True)
class IdentityReport:
    check_name: str
    inputs: dict
    lhs: complex
    rhs: complex
    abs_residual: float
    tail_bound: float
    terms_used: int
    tolerance: float
    passed: bool
    notes: tuple = ()
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "check_name": self.check_name,
            "inputs": dict(self.inputs),
            "lhs": _encode(self.lhs),
            "rhs": _encode(self.rhs),
            "abs_residual": self.abs_residual,
            "tail_bound": self.tail_bound,
            "terms_used": self.terms_used,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "notes": list(self.notes),
            "details": dict(self.details),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            check_name=d["check_name"],
            inputs=dict(d["inputs"]),
            lhs=_decode(d["lhs"]),
            rhs=_decode(d["rhs"]),
            abs_residual=float(d["abs_residual"]),
            tail_bound=float(d["tail_bound"]),
            terms_used=int(d["terms_used"]),
            tolerance=float(d["tolerance"]),
            passed=bool(d["pass"]),
            notes=tuple(d.get("notes", ())),
            details=dict(d.get("details", {})),
        )

    def rejudge(self):
        """Recompute pass/fail from the stored numbers."""
        return self.abs_residual <= self.tail_bound + self.tolerance


def make_report(name, inputs, lhs, rhs, tail_bound, terms_used, tolerance,
                notes=(), details=None):
    lhs, rhs = complex(lhs), complex(rhs)
    residual = abs(lhs - rhs)
    tail_bound = float(tail_bound)
    return IdentityReport(
        check_name=name,
        inputs={k: float(v) for k, v in inputs.items()},
        lhs=lhs,
        rhs=rhs,
        abs_residual=residual,
        tail_bound=tail_bound,
        terms_used=int(terms_used),
        tolerance=float(tolerance),
        passed=bool(residual <= tail_bound + tolerance),
        notes=tuple(notes),
        details=details or {},
    )


@dataclass(frozen=True)
class HalfIntegerGrid:
    """c_k = (k - 1/2) pi, d_k = (k + 1/2) pi, e_k = pi/(2 c_k), f_k = pi/(2 d_k)."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise DomainError("k must be a positive integer", self.k)

    @property
    def c(self):
        return (self.k - 0.5) * math.pi

    @property
    def d(self):
        return (self.k + 0.5) * math.pi

    @property
    def e(self):
        return 1.0 / (2 * self.k - 1)

    @property
    def f(self):
        return 1.0 / (2 * self.k + 1)


def half_integer_arrays(K):
    """Arrays (k, c_k, d_k, e_k, f_k) for k = 1..K."""
    if K < 1:
        raise DomainError("number of terms must be >= 1", K)
    k = np.arange(1, K + 1, dtype=float)
    return k, (k - 0.5) * np.pi, (k + 0.5) * np.pi, 1.0 / (2 * k - 1), 1.0 / (2 * k + 1)


def _fsum(arr):
    return math.fsum(np.asarray(arr, dtype=float).tolist())


def _finite(name, *vals):
    for v in vals:
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite", v)


def _log_tail(x, y, K):
    """Bound on sum_{k>K} |log((c_k^2 - y^2)/(c_k^2 - x^2))|.

    With w_k = (x^2 - y^2)/(c_k^2 - x^2), |log(1 + w)| <= |w|/(1 - |w|), and
    sum_{k>K} 1/c_k^2 <= 1/(pi^2 (K - 1/2)).
    """
    diff = abs(x * x - y * y)
    if diff == 0:
        return 0.0
    c = (K + 0.5) * math.pi
    m = max(x * x, y * y)
    if c * c <= 2 * m:
        return math.inf
    shrink = 1 - x * x / (c * c)
    w = diff / (c * c - x * x)
    return SAFETY * diff / (math.pi ** 2 * (K - 0.5)) / (shrink * (1 - w))


def _odd_half_pi_distance(v):
    """Distance from v to the nearest odd multiple of pi/2."""
    r = math.fmod(abs(v) - math.pi / 2, math.pi)
    return min(abs(r), math.pi - abs(r))


# ---------------------------------------------------------------------------
# Euler-Ramanujan product and its logarithm


def er_product_check(X, A, K, tol):
    """cos(X + A)/cos(A) against the partial product
    prod_{k<=K} (1 - X/(c_k - A)) (1 + X/(c_k + A))."""
    X, A = float(X), float(A)
    _finite("X, A", X, A)
    if _odd_half_pi_distance(A) < GUARD:
        m = round(A / (math.pi / 2))
        raise DomainError(f"A is within {GUARD} of the odd multiple {m}*pi/2", A)
    _, c, _, _, _ = half_integer_arrays(K)
    factors = (1 - X / (c - A)) * (1 + X / (c + A))
    if np.any(factors == 0):
        rhs = 0.0
    else:
        sign = -1.0 if np.count_nonzero(factors < 0) % 2 else 1.0
        rhs = sign * math.exp(_fsum(np.log(np.abs(factors))))
    lhs = math.cos(X + A) / math.cos(A)
    log_tail = _log_tail(A, X + A, K)
    tail = abs(rhs) * math.expm1(log_tail) if math.isfinite(log_tail) else math.inf
    return make_report("product", {"X": X, "A": A, "K": K}, lhs, rhs, tail, K, tol)


def check_log_identity(x, y, K, tol):
    """log(cos y / cos x) against sum_{k<=K} log((c_k^2 - y^2)/(c_k^2 - x^2))."""
    x, y = float(x), float(y)
    _finite("x, y", x, y)
    if _odd_half_pi_distance(x) < GUARD:
        raise DomainError("x is an odd multiple of pi/2", x)
    cx, cy = math.cos(x), math.cos(y)
    if cx <= 0 or cy <= 0:
        raise DomainError("log identity needs cos x > 0 and cos y > 0", {"x": x, "y": y})
    _, c, _, _, _ = half_integer_arrays(K)
    c2 = c * c
    terms = np.log1p((x * x - y * y) / (c2 - x * x))
    rhs = _fsum(terms)
    lhs = math.log(cy / cx)
    return make_report("log", {"x": x, "y": y, "K": K}, lhs, rhs,
                       _log_tail(x, y, K), K, tol)


# ---------------------------------------------------------------------------
# Dirichlet decompositions


def _check_prop1_box(x, y):
    if not abs(x) < PROP1_X_BOUND:
        raise DomainError(f"need |x| < pi/(2 sqrt 2) = {PROP1_X_BOUND:.4f}", x)
    if not abs(y) < PROP1_Y_BOUND:
        raise DomainError(f"need |y| < sqrt(pi/2) = {PROP1_Y_BOUND:.4f}", y)


def _prop1_core(x, y, K, tol):
    """Shared path of the log-cosine checks: returns (lhs, rhs, tail, details)."""
    _check_prop1_box(x, y)
    _, c, _, _, _ = half_integer_arrays(K)
    c2 = c * c
    a = x * x / (c2 - x * x)
    b = y * y / c2
    inner = Precision(abs_tol=tol / (10 * K))
    L, _, Lb = eval_batch(Family.ALT, 1, a, inner)
    M, _, Mb = eval_batch(Family.GEO, 1, b, inner)
    L, M = L.real, M.real
    rhs = _fsum(np.concatenate([L, -M]))
    lhs = math.log(math.cos(y) / math.cos(x))
    inner_bound = _fsum(Lb) + _fsum(Mb)
    tail = _log_tail(x, y, K) + inner_bound
    dev = max(float(np.max(np.abs(L - np.log1p(a)) - Lb)),
              float(np.max(np.abs(M + np.log1p(-b)) - Mb)))
    details = {
        "inner_tolerance": inner.abs_tol,
        "inner_tail_bound": inner_bound,
        # worst excess of |series - closed form| over its certified bound
        "inner_closed_form_excess": dev,
        "inner_closed_form_ok": bool(dev <= 4 * np.finfo(float).eps),
    }
    return lhs, rhs, tail, details


def check_prop1(x, y, K, tol):
    """log(cos y/cos x) = sum_k [L(1, x^2/(c_k^2 - x^2)) - M(1, y^2/c_k^2)]
    inside |x| < pi/(2 sqrt 2), |y| < sqrt(pi/2)."""
    x, y = float(x), float(y)
    _finite("x, y", x, y)
    lhs, rhs, tail, details = _prop1_core(x, y, K, tol)
    return make_report("prop1", {"x": x, "y": y, "K": K}, lhs, rhs, tail, K, tol,
                       details=details)


def twisted_arguments(x, y, theta):
    """(x - y cot theta, y / sin theta) with cot snapped to 0 at odd multiples of pi/2."""
    s, c = math.sin(theta), math.cos(theta)
    if abs(s) <= GUARD:
        raise DomainError("twisted identity needs sin(theta) != 0 (theta = 0 is a plane)",
                          theta)
    cot = 0.0 if abs(c) <= 1e-15 else c / s
    if cot == 0.0:
        s = math.copysign(1.0, s)
    return x - y * cot, y / s


def check_prop3_twisted(x, y, theta, K, tol):
    """Twisted identity for the Scherk theta-family:
    log(cos(y/sin t)/cos(x - y cot t)) = sum_k [L(1, .) - M(1, .)]."""
    x, y, theta = float(x), float(y), float(theta)
    _finite("x, y, theta", x, y, theta)
    u, v = twisted_arguments(x, y, theta)
    lhs, rhs, tail, details = _prop1_core(u, v, K, tol)
    details = dict(details, substituted_x=u, substituted_y=v)
    return make_report("prop3", {"x": x, "y": y, "theta": theta, "K": K},
                       lhs, rhs, tail, K, tol, details=details)


# ---------------------------------------------------------------------------
# arctan identities


def check_entry11(X, A, K, tol):
    """arctan(tanh X cot A) = arctan(X/A) + sum_k [arctan(X/(k pi + A)) - arctan(X/(k pi - A))]."""
    X, A = float(X), float(A)
    _finite("X, A", X, A)
    r = math.fmod(abs(A), math.pi)
    if min(r, math.pi - r) < GUARD:
        raise DomainError("A must not be a multiple of pi", A)
    k = np.arange(1, K + 1, dtype=float)
    terms = np.arctan(X / (k * np.pi + A)) - np.arctan(X / (k * np.pi - A))
    rhs = math.atan(X / A) + _fsum(terms)
    lhs = math.atan(math.tanh(X) * (math.cos(A) / math.sin(A)))
    # |term_k| <= |X| 2|A| / (k^2 pi^2 - A^2) and sum_{k>K} 1/(k^2 - al^2) <= 1/(K - al)
    al = abs(A) / math.pi
    if K > al:
        tail = SAFETY * 2 * abs(X) * abs(A) / (math.pi ** 2 * (K - al))
    else:
        tail = math.inf
    return make_report("entry11", {"X": X, "A": A, "K": K}, lhs, rhs, tail, K, tol,
                       notes=(ENTRY11_NOTE,))


def _telescope_tail(X, K):
    # |arctan(X/c_k) - arctan(X/d_k)| <= |X| pi/(c_k d_k) = |X|/(pi (k^2 - 1/4)),
    # and sum_{k>K} 1/(k^2 - 1/4) = 1/(K + 1/2) exactly
    return SAFETY * abs(X) / (math.pi * (K + 0.5))


def check_arctan_telescope(X, K, tol):
    """arctan(2X/pi) = sum_k [arctan(X/c_k) - arctan(X/d_k)]."""
    X = float(X)
    _finite("X", X)
    _, c, d, _, _ = half_integer_arrays(K)
    rhs = _fsum(np.arctan(X / c) - np.arctan(X / d))
    lhs = math.atan(2 * X / math.pi)
    return make_report("telescope", {"X": X, "K": K}, lhs, rhs,
                       _telescope_tail(X, K), K, tol)


def _heli_bracket(t, precision=None):
    """L(1, t) - M(1, -t) = H(1, t) - H(1, -t) elementwise, with summed tail bounds."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    hp, np_, bp = eval_batch(Family.HELI, 1, t, precision)
    hm, nm, bm = eval_batch(Family.HELI, 1, -t, precision)
    return hp - hm, bp + bm, np.maximum(np_, nm)


def _check_ratio(t):
    if not abs(t) < 1:
        raise DomainError("needs |y| < |x|, i.e. |t| < 1", t)


def check_prop4_helicoid(t, tol):
    """arctan t = -1/2 [L(1, t) - M(1, -t)] for |t| < 1."""
    t = float(t)
    _finite("t", t)
    _check_ratio(t)
    bracket, bound, nterms = _heli_bracket(t)
    bracket = complex(bracket[0])
    rhs = -0.5 * bracket.real
    lhs = math.atan(t)
    details = {"bracket": _encode(bracket), "imag_residue": abs(bracket.imag),
               "sign_convention": -0.5}
    return make_report("prop4", {"t": t}, lhs, rhs, 0.5 * float(bound[0]), int(nterms[0]),
                       tol, notes=(HELI_SIGN_NOTE,), details=details)


def check_prop6(t, K, tol):
    """L(1,t) - M(1,-t) = sum_k [(L - M)(1, e_k t) - (L - M)(1, f_k t)], all via H(1, .)."""
    t = float(t)
    _finite("t", t)
    _check_ratio(t)
    _, _, _, e, f = half_integer_arrays(K)
    lhs_b, lhs_bound, lhs_n = _heli_bracket(t)
    be, bnd_e, _ = _heli_bracket(e * t)
    bf, bnd_f, _ = _heli_bracket(f * t)
    rhs = csum(np.concatenate([be, -bf]))
    lhs = complex(lhs_b[0])
    # the k-sum is -2 x (arctan telescope at X = pi t / 2)
    tail = 2 * _telescope_tail(math.pi * t / 2, K)
    tail += float(lhs_bound[0]) + _fsum(bnd_e) + _fsum(bnd_f)
    return make_report("prop6", {"t": t, "K": K}, lhs, rhs, tail, K, tol,
                       notes=(HELI_SIGN_NOTE,),
                       details={"lhs_closed_form": -2 * math.atan(t)})
