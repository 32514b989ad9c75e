"""Complex special functions used throughout the package.

Everything here is a pure function of its arguments.  Complex values are
plain Python ``complex``; results never contain NaN or infinities, an
overflow raises :class:`~er_dirichlet.errors.NonFiniteError` instead.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, NonFiniteError, PoleError

__all__ = [
    "Precision",
    "EvalResult",
    "principal_log",
    "principal_arctan",
    "complex_gamma",
    "upper_incomplete_gamma",
    "dirichlet_lambda",
]

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Precision:
    """Truncation policy for series: stop once the certified tail is below
    ``max(abs_tol, rel_tol * |partial sum|)`` or after ``max_terms`` terms."""

    rel_tol: float = EPS / 2
    abs_tol: float = 1e-300
    max_terms: int = 1_000_000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("rel_tol and abs_tol must be positive",
                              {"rel_tol": self.rel_tol, "abs_tol": self.abs_tol})
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1", self.max_terms)


@dataclass(frozen=True)
class EvalResult:
    """A series value with the number of terms summed and a bound on
    ``|value - exact|`` coming from the neglected tail."""

    value: complex
    terms_used: int
    tail_bound: float


def as_complex(z):
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("input must be finite", z)
    return z


def check_finite(z, what="result"):
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteError(f"{what} is not finite ({z})")
    return z


def two_sum(a, b):
    """Error-free transformation ``a + b = s + e`` (Knuth).

    Works elementwise on numpy arrays and componentwise on complex values.
    """
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def csum(values):
    """Correctly rounded sum of an iterable of complex numbers."""
    values = np.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(values.real.tolist()), math.fsum(values.imag.tolist()))


def sinpi(x):
    """sin(pi*x) with exact zeros at integers; real x, array or scalar."""
    x = np.asarray(x, dtype=float)
    r = np.fmod(x, 2.0)
    return np.sin(np.pi * r)


def _csinpi(s):
    # argument reduction of the real part keeps sin(pi*s) accurate for |Re s| >> 1
    n = math.floor(s.real)
    f = complex(s.real - n, s.imag)
    v = cmath.sin(math.pi * f)
    return -v if n % 2 else v


# ---------------------------------------------------------------------------
# elementary functions on the principal branch


def principal_log(z):
    """Principal logarithm with imaginary part in (-pi, pi]."""
    z = as_complex(z)
    if z == 0:
        raise DomainError("logarithm of zero", z)
    w = cmath.log(z)
    if w.imag == -math.pi:
        # a signed-zero imaginary part on the negative axis
        w = complex(w.real, math.pi)
    return w


def principal_arctan(z):
    """arctan z = (i/2) [log(1 - i z) - log(1 + i z)]."""
    z = as_complex(z)
    if z == 1j or z == -1j:
        raise DomainError("arctan has logarithmic singularities at +-i", z)
    w = 0.5j * (principal_log(1 - 1j * z) - principal_log(1 + 1j * z))
    if z.imag == 0:
        w = complex(w.real, 0.0)
    return w


# ---------------------------------------------------------------------------
# gamma

_LANCZOS_G = 7
_LANCZOS_P = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _nonpositive_integer(s):
    return s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real)


def complex_gamma(s):
    """Gamma function for complex ``s`` (Lanczos, g=7, with reflection)."""
    s = as_complex(s)
    if _nonpositive_integer(s):
        raise PoleError(int(s.real))
    if s.real < 0.5:
        return check_finite(math.pi / (_csinpi(s) * complex_gamma(1 - s)), "gamma")
    z = s - 1
    x = _LANCZOS_P[0]
    for i in range(1, _LANCZOS_G + 2):
        x += _LANCZOS_P[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    try:
        val = math.sqrt(2 * math.pi) * cmath.exp((z + 0.5) * cmath.log(t) - t) * x
    except OverflowError:
        raise NonFiniteError(f"gamma({s}) overflows") from None
    if s.imag == 0:
        val = complex(val.real, 0.0)
    return check_finite(val, "gamma")


# ---------------------------------------------------------------------------
# incomplete gamma


def _lower_gamma_series(s, x, max_iter=100_000):
    """gamma(s, x) = x^s e^-x sum_n x^n / (s (s+1) ... (s+n))."""
    term = 1.0 / s
    acc, comp = term, 0j
    n = 0
    while True:
        n += 1
        if n > max_iter:
            raise NonFiniteError("incomplete gamma series did not converge")
        term *= x / (s + n)
        acc, e = two_sum(acc, term)
        comp += e
        if abs(term) <= EPS * 1e-2 * abs(acc):
            break
    return cmath.exp(s * math.log(x) - x) * (acc + comp)


def _upper_gamma_cf(s, x, max_iter=200_000):
    """Legendre continued fraction, modified Lentz."""
    tiny = 1e-300
    b = x + 1.0 - s
    f = b if b != 0 else tiny
    C, D = f, 0j
    for n in range(1, max_iter + 1):
        an = -n * (n - s)
        b += 2.0
        D = b + an * D
        D = tiny if D == 0 else D
        C = b + an / C
        C = tiny if C == 0 else C
        D = 1.0 / D
        delta = C * D
        f *= delta
        if abs(delta - 1.0) <= EPS:
            break
    else:
        raise NonFiniteError("incomplete gamma continued fraction did not converge")
    return cmath.exp(s * math.log(x) - x) / f


def _near_pole(s, radius=0.25):
    if s.real > radius:
        return False
    n = round(s.real)
    return n <= 0 and abs(s - n) < radius


def upper_incomplete_gamma(s, x):
    """Gamma(s, x) = int_x^inf t^(s-1) e^-t dt for complex s and real x > 0.

    Power series (through the complete gamma) for ``x < |s| + 1`` and the
    continued fraction otherwise.  Near a non-positive integer the series
    route cancels two large numbers, so the continued fraction is used
    there for every ``x``.
    """
    s = as_complex(s)
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise DomainError("upper incomplete gamma needs x > 0", x)
    if s == 1:
        return complex(math.exp(-x), 0.0)
    if x >= abs(s) + 1 or _near_pole(s):
        val = _upper_gamma_cf(s, x)
    else:
        val = complex_gamma(s) - _lower_gamma_series(s, x)
    if s.imag == 0:
        val = complex(val.real, 0.0)
    return check_finite(val, "incomplete gamma")


def lower_incomplete_gamma(s, x):
    """gamma(s, x) = int_0^x t^(s-1) e^-t dt, Re(s) > 0; internal consistency helper."""
    s = as_complex(s)
    if s.real <= 0:
        raise DomainError("lower incomplete gamma needs Re(s) > 0", s)
    return check_finite(_lower_gamma_series(s, float(x)), "lower incomplete gamma")


# ---------------------------------------------------------------------------
# Dirichlet lambda

_BERNOULLI = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
              Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510)]
_EM_ORDER = len(_BERNOULLI)
# zeta(2p) for the Euler-Maclaurin remainder, p = _EM_ORDER
_ZETA_2P = 1.0000152822594087


def _rising(s, m):
    out = 1 + 0j
    for j in range(m):
        out *= s + j
    return out


def _lambda_em(s, N):
    """sum_{k>=0} (2k+1)^-s: N direct terms plus Euler-Maclaurin tail."""
    k = np.arange(N, dtype=float)
    direct = csum(np.exp(-s * np.log(2 * k + 1)))
    u = 2 * N + 1.0
    lu = math.log(u)
    tail = cmath.exp((1 - s) * lu) / (2 * (s - 1))  # integral from N to inf
    tail += 0.5 * cmath.exp(-s * lu)
    for j, B in enumerate(_BERNOULLI, start=1):
        m = 2 * j - 1
        # f^(m)(N) = (-2)^m (s)_m u^(-s-m)
        deriv = (-2.0) ** m * _rising(s, m) * cmath.exp((-s - m) * lu)
        tail -= float(B) / math.factorial(2 * j) * deriv
    p2 = 2 * _EM_ORDER
    sigma = s.real
    bound = (2 * _ZETA_2P / (2 * math.pi) ** p2) * 2.0 ** p2 * abs(_rising(s, p2)) \
        * u ** (1 - sigma - p2) / (2 * (sigma + p2 - 1))
    return direct + tail, bound


def dirichlet_lambda(s, precision=None):
    """lambda(s) = sum_{k>=0} (2k+1)^-s for Re(s) > 1, as an :class:`EvalResult`."""
    s = as_complex(s)
    if not s.real > 1:
        raise DomainError("dirichlet_lambda needs Re(s) > 1", s)
    p = precision or Precision()
    N = 16 + int(abs(s.imag))
    while True:
        value, bound = _lambda_em(s, N)
        if bound <= max(p.abs_tol, p.rel_tol * abs(value)) or N >= p.max_terms:
            break
        N *= 2
    if s.imag == 0:
        value = complex(value.real, 0.0)
    return EvalResult(check_finite(value, "lambda"), N, bound)
