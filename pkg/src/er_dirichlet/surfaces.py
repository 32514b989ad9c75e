"""Scherk-type translation surfaces and the helicoid.

Weierstrass-Enneper parametrisations in a complex parameter ``zeta``,
the theta-family ``X_theta(u, v) = alpha(u) + beta_theta(v)``, the two
surface identities (Scherk decomposition for |zeta| < 1/2, helicoid
bracket for |y| < |x|), mesh sampling and a finite-difference probe of
mean curvature.
"""

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .identities import (
    HELI_SIGN_NOTE,
    _heli_bracket,
    _prop1_core,
    check_prop3_twisted,
    check_prop4_helicoid,
    make_report,
)
from .special_functions import as_complex, principal_arctan, principal_log

__all__ = [
    "SurfacePoint3",
    "ThetaFamilyParams",
    "Mesh",
    "Surface",
    "Residual",
    "scherk_we",
    "scherk_family",
    "scherk_alpha",
    "scherk_beta",
    "helicoid_we",
    "check_prop2",
    "check_prop5",
    "sample_mesh",
    "mean_curvature_probe",
]

GUARD = 1e-8
SCHERK_SINGULAR = (1, -1, 1j, -1j)


class SurfacePoint3(NamedTuple):
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class ThetaFamilyParams:
    theta: float = math.pi / 2


class Surface(enum.Enum):
    SCHERK_WE = "scherk-we"
    SCHERK_FAMILY = "scherk-family"
    HELICOID_WE = "helicoid"


class Residual(enum.Enum):
    NONE = "none"
    PROP1 = "prop1"
    PROP2 = "prop2"
    PROP4 = "prop4"
    PROP5 = "prop5"


def _point(x, y, z):
    for v in (x, y, z):
        if not math.isfinite(v):
            raise DomainError("surface point is not finite", (x, y, z))
    return SurfacePoint3(float(x), float(y), float(z))


# ---------------------------------------------------------------------------
# Scherk


def scherk_we(zeta):
    """x = 2 Re arctan(zeta), y = -Im log((1+zeta)/(1-zeta)),
    z = Re log((1+zeta^2)/(1-zeta^2))."""
    zeta = as_complex(zeta)
    for p in SCHERK_SINGULAR:
        if abs(zeta - p) < GUARD:
            raise DomainError(f"Scherk parametrisation is singular at {p}", zeta)
    x = 2 * principal_arctan(zeta).real
    y = -principal_log((1 + zeta) / (1 - zeta)).imag
    z = principal_log((1 + zeta * zeta) / (1 - zeta * zeta)).real
    return _point(x, y, z)


def scherk_alpha(u):
    return SurfacePoint3(u, 0.0, -math.log(math.cos(u)))


def scherk_beta(v, theta):
    return SurfacePoint3(v * math.cos(theta), v * math.sin(theta), math.log(math.cos(v)))


def scherk_family(u, v, theta):
    """X_theta(u, v) = (u + v cos t, v sin t, log(cos v / cos u)) built as alpha(u) + beta_t(v)."""
    u, v, theta = float(u), float(v), float(theta)
    if not (math.cos(u) > 0 and math.cos(v) > 0):
        raise DomainError("theta-family needs cos u > 0 and cos v > 0", {"u": u, "v": v})
    a = scherk_alpha(u)
    b = scherk_beta(v, theta)
    return _point(a.x + b.x, a.y + b.y, a.z + b.z)


def check_prop2(zeta, K, tol):
    """Re log((1+z^2)/(1-z^2)) = sum_k [L(1, .) - M(1, .)] at the Weierstrass-Enneper
    coordinates x(zeta), y(zeta), for |zeta| < 1/2."""
    zeta = as_complex(zeta)
    if not abs(zeta) < 0.5:
        raise DomainError("Scherk decomposition needs |zeta| < 1/2", zeta)
    p = scherk_we(zeta)
    _, rhs, tail, details = _prop1_core(p.x, p.y, K, tol)
    closed = math.log(math.cos(p.y) / math.cos(p.x))
    consistency = abs(p.z - closed)
    details = dict(details, x=p.x, y=p.y, consistency_residual=consistency,
                   consistency_ok=bool(consistency <= 1e-12))
    return make_report("prop2", {"zeta_re": zeta.real, "zeta_im": zeta.imag, "K": K},
                       p.z, rhs, tail, K, tol, details=details)


# ---------------------------------------------------------------------------
# helicoid


def helicoid_we(zeta):
    """x = -1/2 Im(zeta + 1/zeta), y = 1/2 Re(zeta - 1/zeta), z = -pi/2 + Im log zeta."""
    zeta = as_complex(zeta)
    if abs(zeta) < GUARD:
        raise DomainError("helicoid parametrisation is singular at 0", zeta)
    inv = 1 / zeta
    x = -0.5 * (zeta + inv).imag
    y = 0.5 * (zeta - inv).real
    z = -math.pi / 2 + principal_log(zeta).imag
    return _point(x, y, z)


def check_prop5(zeta, tol):
    """-pi/2 + Im log zeta = -1/2 [L(1, y/x) - M(1, -y/x)] modulo pi, where |y| < |x|."""
    zeta = as_complex(zeta)
    if not abs(zeta) < 1:
        raise DomainError("helicoid identity needs |zeta| < 1", zeta)
    p = helicoid_we(zeta)
    if p.x == 0 or not abs(p.y) < abs(p.x):
        raise DomainError("helicoid identity needs |y| < |x| at the sampled point",
                          {"zeta_re": zeta.real, "zeta_im": zeta.imag, "x": p.x, "y": p.y})
    t = p.y / p.x
    bracket, bound, nterms = _heli_bracket(t)
    raw = -0.5 * complex(bracket[0]).real
    shift = round((p.z - raw) / math.pi)
    rhs = raw + shift * math.pi
    details = {"ratio": t, "rhs_principal": raw, "branch_shift": shift,
               "imag_residue": abs(complex(bracket[0]).imag)}
    return make_report("prop5", {"zeta_re": zeta.real, "zeta_im": zeta.imag},
                       p.z, rhs, 0.5 * float(bound[0]), int(nterms[0]), tol,
                       notes=(HELI_SIGN_NOTE,), details=details)


# ---------------------------------------------------------------------------
# meshes


@dataclass(frozen=True)
class Mesh:
    """Quad mesh over a parameter rectangle.

    Vertices are ordered with the first parameter varying fastest; face
    ``(i, j)`` is ``(p(i, j), p(i+1, j), p(i+1, j+1), p(i, j+1))``.
    ``valid`` is False where the chosen identity does not apply; the
    residual there is 0 and must not be read as a measurement.
    """

    vertices: np.ndarray        # (n, 3)
    residuals: np.ndarray       # (n,)
    valid: np.ndarray           # (n,) bool
    faces: np.ndarray           # (m, 4) zero-based
    param_coords: np.ndarray    # (n, 2)


def _evaluator(surface, theta):
    if surface is Surface.SCHERK_WE:
        return lambda u, v: scherk_we(complex(u, v))
    if surface is Surface.HELICOID_WE:
        return lambda r, phi: helicoid_we(r * complex(math.cos(phi), math.sin(phi)))
    return lambda u, v: scherk_family(u, v, theta)


def _residual_fn(surface, residual, theta, K, tol):
    if residual is Residual.NONE:
        return None
    if surface is Surface.SCHERK_WE and residual is Residual.PROP2:
        return lambda u, v, p: check_prop2(complex(u, v), K, tol)
    if surface is Surface.SCHERK_FAMILY and residual is Residual.PROP1:
        return lambda u, v, p: check_prop3_twisted(p.x, p.y, theta, K, tol)
    if surface is Surface.HELICOID_WE and residual is Residual.PROP5:
        return lambda r, phi, p: check_prop5(r * complex(math.cos(phi), math.sin(phi)), tol)
    if surface is Surface.HELICOID_WE and residual is Residual.PROP4:
        def prop4(r, phi, p):
            if p.x == 0:
                raise DomainError("x = 0 on this vertex", (r, phi))
            return check_prop4_helicoid(p.y / p.x, tol)
        return prop4
    raise DomainError(f"residual {residual.value} does not apply to {surface.value}",
                      {"surface": surface.value, "residual": residual.value})


def default_region(surface):
    if surface is Surface.SCHERK_WE:
        return ((-0.45, 0.45), (-0.45, 0.45))
    if surface is Surface.HELICOID_WE:
        return ((0.2, 0.9), (0.6, 2.5))
    return ((-1.0, 1.0), (-1.0, 1.0))


def _mesh_row(args):
    surface, theta, us, v, residual, K, tol = args
    ev = _evaluator(surface, theta)
    res_fn = _residual_fn(surface, residual, theta, K, tol)
    out = []
    for u in us:
        p = ev(u, v)
        if res_fn is None:
            out.append((p, 0.0, True))
            continue
        try:
            rep = res_fn(u, v, p)
        except DomainError:
            out.append((p, 0.0, False))
        else:
            out.append((p, rep.abs_residual, True))
    return out


def sample_mesh(surface, params=None, region=None, nu=16, nv=16,
                residual=Residual.NONE, K=10_000, tol=1e-6, workers=1):
    """Sample a surface on an ``nu`` x ``nv`` grid with optional per-vertex residuals.

    ``region`` is ``((u0, u1), (v0, v1))`` in the surface's parameter
    plane: (Re zeta, Im zeta) for the Scherk parametrisation, (r, phi) with
    zeta = r e^(i phi) for the helicoid and (u, v) for the theta-family.
    ``workers > 1`` spreads grid rows over processes; output order does not
    depend on it.
    """
    surface = Surface(surface)
    residual = Residual(residual)
    theta = (params or ThetaFamilyParams()).theta
    if nu < 2 or nv < 2:
        raise DomainError("mesh needs nu, nv >= 2", (nu, nv))
    (u0, u1), (v0, v1) = region or default_region(surface)
    _residual_fn(surface, residual, theta, K, tol)  # reject bad combinations early
    us = np.linspace(u0, u1, nu)
    vs = np.linspace(v0, v1, nv)
    jobs = [(surface, theta, us.tolist(), float(v), residual, K, tol) for v in vs]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_mesh_row, jobs))
    else:
        rows = [_mesh_row(j) for j in jobs]
    flat = [item for row in rows for item in row]
    vertices = np.array([p for p, _, _ in flat], dtype=float)
    residuals = np.array([r for _, r, _ in flat], dtype=float)
    valid = np.array([ok for _, _, ok in flat], dtype=bool)
    if residual is not Residual.NONE and not valid.any():
        raise DomainError("no vertex of the region lies where the identity applies",
                          {"region": [[u0, u1], [v0, v1]], "residual": residual.value})
    uu, vv = np.meshgrid(us, vs)
    params_uv = np.column_stack([uu.ravel(), vv.ravel()])
    j, i = np.meshgrid(np.arange(nv - 1), np.arange(nu - 1), indexing="ij")
    base = (j * nu + i).ravel()
    faces = np.column_stack([base, base + 1, base + nu + 1, base + nu])
    return Mesh(vertices, residuals, valid, faces, params_uv)


# ---------------------------------------------------------------------------
# minimality probe

_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def mean_curvature_probe(surface, params, p, h):
    """Mean curvature at parameter point ``p`` from fourth-order central differences.

    The parametrisation is sampled on a 5 x 5 stencil of spacing ``h``;
    H = (E N - 2 F M + G L) / (2 (E G - F^2)) with the unit normal.
    """
    surface = Surface(surface)
    theta = (params or ThetaFamilyParams()).theta
    ev = _evaluator(surface, theta)
    u0, v0 = map(float, p)
    offs = np.arange(-2, 3) * h
    grid = np.empty((5, 5, 3))
    try:
        for a, du in enumerate(offs):
            for b, dv in enumerate(offs):
                grid[a, b] = ev(u0 + du, v0 + dv)
    except (DomainError, ValueError) as exc:
        raise DomainError("finite-difference stencil leaves the domain",
                          {"p": [u0, v0], "h": h}) from exc
    Xu = np.tensordot(_D1, grid[:, 2], axes=1) / h
    Xv = np.tensordot(_D1, grid[2, :], axes=1) / h
    Xuu = np.tensordot(_D2, grid[:, 2], axes=1) / h ** 2
    Xvv = np.tensordot(_D2, grid[2, :], axes=1) / h ** 2
    Xuv = np.einsum("a,b,abk->k", _D1, _D1, grid) / h ** 2
    n = np.cross(Xu, Xv)
    n /= np.linalg.norm(n)
    E, F, G = Xu @ Xu, Xu @ Xv, Xv @ Xv
    L, M, N = Xuu @ n, Xuv @ n, Xvv @ n
    return float((E * N - 2 * F * M + G * L) / (2 * (E * G - F * F)))
