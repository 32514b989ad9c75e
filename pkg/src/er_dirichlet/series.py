"""Evaluators for the three Dirichlet-series families.

* ``ALT``:  L(s, a) = sum_{n>=1} (-1)^(n-1) a^n / n^s,   0 <= a < 1
* ``GEO``:  M(s, b) = sum_{n>=1} b^n / n^s,              |b| < 1
* ``HELI``: H(s, t) = sum_{n>=1} i^(n+1) t^n / n^s,       |t| < 1

All three are power series in a parameter of modulus below one, so they
converge absolutely for every complex ``s``.  Sums are accumulated in
ascending ``n`` with error-free transformations and stop once a certified
bound on the neglected tail meets the requested :class:`Precision`.

The batch functions evaluate one ``s`` against an array of parameters and
are what the identity checks use; the scalar functions wrap them.
"""

import enum
import math

import numpy as np

from .errors import DomainError
from .special_functions import (
    EvalResult,
    Precision,
    as_complex,
    check_finite,
    principal_log,
    two_sum,
)

__all__ = [
    "Family",
    "SeriesSpec",
    "eval_alt",
    "eval_geo",
    "eval_heli",
    "eval_series",
    "eval_batch",
    "closed_form_s1",
    "probe_sigma_limit",
    "probe_oscillation",
]


class Family(enum.Enum):
    ALT = "alt"
    GEO = "geo"
    HELI = "heli"


_PHASES = {
    Family.ALT: (1, -1),          # (-1)^(n-1), period 2 starting at n = 1
    Family.GEO: (1,),
    Family.HELI: (-1, -1j, 1, 1j),  # i^(n+1) for n = 1, 2, 3, 4
}


def _check_param(family, p):
    p = float(p)
    if not math.isfinite(p):
        raise DomainError("series parameter must be finite", p)
    if family is Family.ALT:
        if not 0 <= p < 1:
            raise DomainError("ALT series needs 0 <= a < 1", p)
    elif not abs(p) < 1:
        raise DomainError(f"{family.name} series needs |param| < 1", p)
    return p


class SeriesSpec:
    """Family, exponent and parameter of one series, validated on creation."""

    __slots__ = ("family", "s", "param")

    def __init__(self, family, s, param):
        self.family = Family(family)
        self.s = as_complex(s)
        self.param = _check_param(self.family, param)

    def evaluate(self, precision=None):
        return eval_series(self.family, self.s, self.param, precision)

    def __repr__(self):
        return f"SeriesSpec({self.family.name}, s={self.s}, param={self.param})"


def _growth(n, sigma):
    """Largest ratio ((m+1)/m)^-sigma over m > n (equals 1 when sigma >= 0)."""
    return max(1.0, ((n + 2) / (n + 1)) ** (-sigma))


_SCALAR_SWITCH = 8


def _finish_scalar(n, x, power, acc, comp, s, sigma, phases, real_terms, p):
    ax = abs(x)
    power = float(power)
    if real_terms:
        acc, comp = float(acc), float(comp)
    else:
        acc, comp = complex(acc), complex(comp)
    while True:
        n += 1
        power = power * x
        if real_terms:
            coef = phases[(n - 1) % len(phases)] * math.exp(-sigma * math.log(n))
        else:
            coef = phases[(n - 1) % len(phases)] * complex(np.exp(-s * math.log(n)))
        acc, err = two_sum(acc, coef * power)
        comp += err
        q = ax * _growth(n, sigma)
        tail = abs(power) * ax * math.exp(-sigma * math.log(n + 1)) / (1 - q) if q < 1 else math.inf
        if tail <= max(p.abs_tol, p.rel_tol * abs(acc)) or n >= p.max_terms:
            return acc + comp, n, tail


def eval_batch(family, s, params, precision=None):
    """Evaluate one family at a fixed ``s`` for every parameter in ``params``.

    Returns ``(values, terms_used, tail_bounds)`` as numpy arrays.  Each
    element is computed independently, so results do not depend on what
    else is in the batch.

    Tail bound after ``n`` terms: for m > n the ratio of consecutive term
    moduli is at most ``q = |x| * max(1, ((n+2)/(n+1))^-sigma)``, so once
    ``q < 1`` the tail is at most ``|x|^(n+1) (n+1)^-sigma / (1 - q)``.

    The bound covers truncation only.  Rounding error grows with the sum of
    term moduli ``M(sigma, |x|)``, which for Re(s) < 0 and ``|x|`` near one
    can exceed the result by several orders of magnitude.
    """
    family = Family(family)
    s = as_complex(s)
    p = precision or Precision()
    x = np.atleast_1d(np.asarray(params, dtype=float))
    if family is Family.ALT:
        ok = (x >= 0) & (x < 1)
    else:
        ok = np.abs(x) < 1
    if not ok.all():
        _check_param(family, x[~ok].ravel()[0])
    shape = x.shape
    x = x.ravel()
    sigma = s.real
    phases = _PHASES[family]
    real_terms = s.imag == 0 and family is not Family.HELI
    dtype = float if real_terms else complex

    values = np.zeros(x.size, dtype=complex)
    terms = np.ones(x.size, dtype=np.int64)
    bounds = np.zeros(x.size)

    act = np.flatnonzero(x != 0)
    xa = x[act]
    ax = np.abs(xa)
    power = np.ones(act.size)
    acc = np.zeros(act.size, dtype=dtype)
    comp = np.zeros(act.size, dtype=dtype)
    n = 0
    while act.size:
        if act.size <= _SCALAR_SWITCH:
            # numpy call overhead dominates for a handful of slow elements;
            # finish them one by one with the same arithmetic
            for j, i in enumerate(act):
                values[i], terms[i], bounds[i] = _finish_scalar(
                    n, float(xa[j]), power[j], acc[j], comp[j], s, sigma,
                    phases, real_terms, p)
            break
        n += 1
        power = power * xa
        if real_terms:
            coef = phases[(n - 1) % len(phases)] * math.exp(-sigma * math.log(n))
        else:
            coef = phases[(n - 1) % len(phases)] * complex(np.exp(-s * math.log(n)))
        acc, err = two_sum(acc, coef * power)
        comp += err
        q = ax * _growth(n, sigma)
        with np.errstate(under="ignore", divide="ignore"):
            tail = np.abs(power) * ax * math.exp(-sigma * math.log(n + 1)) / (1 - q)
        tail[q >= 1] = np.inf
        target = np.maximum(p.abs_tol, p.rel_tol * np.abs(acc))
        done = tail <= target
        if n >= p.max_terms:
            done[:] = True
        if done.any():
            idx = act[done]
            values[idx] = acc[done] + comp[done]
            terms[idx] = n
            bounds[idx] = tail[done]
            keep = ~done
            act, xa, ax = act[keep], xa[keep], ax[keep]
            power, acc, comp = power[keep], acc[keep], comp[keep]

    # an infinite bound is possible when max_terms stops the sum before the
    # ratio test applies; the values themselves must always be finite
    bad = ~np.isfinite(values)
    if bad.any():
        check_finite(complex(values[bad][0]), "series value")
    return values.reshape(shape), terms.reshape(shape), bounds.reshape(shape)


def eval_series(family, s, param, precision=None):
    values, terms, bounds = eval_batch(family, s, [param], precision)
    return EvalResult(complex(values[0]), int(terms[0]), float(bounds[0]))


def eval_alt(s, a, precision=None):
    """L(s, a) = sum (-1)^(n-1) a^n / n^s for 0 <= a < 1."""
    return eval_series(Family.ALT, s, a, precision)


def eval_geo(s, b, precision=None):
    """M(s, b) = sum b^n / n^s for |b| < 1 (positive-term convention)."""
    return eval_series(Family.GEO, s, b, precision)


def eval_heli(s, t, precision=None):
    """H(s, t) = sum i^(n+1) t^n / n^s for |t| < 1."""
    return eval_series(Family.HELI, s, t, precision)


def closed_form_s1(family, param):
    """Exact value at s = 1: ln(1+a), -ln(1-b) and -i log(1 - i t)."""
    family = Family(family)
    p = _check_param(family, param)
    if family is Family.ALT:
        return complex(math.log1p(p), 0.0)
    if family is Family.GEO:
        return complex(-math.log1p(-p), 0.0)
    return -1j * principal_log(1 - 1j * p)


def probe_sigma_limit(a, sigma, precision=None):
    """L(sigma, a) for large real sigma; tends to ``a`` as sigma grows.

    Returns ``(result, bound)`` where ``|result.value - a| <= bound`` with
    ``bound = a^2 2^-sigma / (1 - a)``.
    """
    a = float(a)
    if not 0 < a < 1:
        raise DomainError("sigma-limit probe needs 0 < a < 1", a)
    if not sigma >= 1:
        raise DomainError("sigma-limit probe needs sigma >= 1", sigma)
    res = eval_alt(sigma, a, precision)
    bound = a * a * 2.0 ** (-sigma) / (1 - a)
    return res, bound


def probe_oscillation(a, sigma, t_values, precision=None):
    """Samples L(sigma + i t, a) along a vertical line; nothing is asserted."""
    a = float(a)
    if not 0 < a < 1:
        raise DomainError("oscillation probe needs 0 < a < 1", a)
    return [eval_alt(complex(sigma, t), a, precision).value for t in t_values]
