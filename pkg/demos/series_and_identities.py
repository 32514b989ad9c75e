"""
Series and identities tour
==========================

Evaluate the three Dirichlet families, then check the product and logarithm
identities they feed, each with its certified truncation bound.

Run with ``python demos/series_and_identities.py``.
"""

import math

import numpy as np

from er_dirichlet import (
    check_arctan_telescope,
    check_log_identity,
    check_prop1,
    check_prop4_helicoid,
    er_product_check,
    eval_alt,
    eval_geo,
    eval_heli,
)

# %%
# At s = 1 each family has a logarithm in closed form.  The tail bound is
# the certified truncation error, not an estimate.

for name, fn, p, exact in (("alt", eval_alt, 0.5, math.log(1.5)),
                           ("geo", eval_geo, 0.5, -math.log(0.5)),
                           ("heli", eval_heli, 0.5, complex(-math.atan(0.5),
                                                            -0.5 * math.log(1.25)))):
    r = fn(1, p)
    print(f"{name:5s} value={r.value:.15g} terms={r.terms_used:3d} "
          f"bound={r.tail_bound:.1e} err={abs(r.value - exact):.1e}")

# %%
# Complex s works the same way; the parameter stays real.

r = eval_alt(-2.5 + 1.3j, 0.9)
print("L(-2.5+1.3i, 0.9) =", r.value, "with", r.terms_used, "terms")

# %%
# Growing sigma pulls L(s, a) onto its first term a.

for sigma in (5, 10, 30, 60):
    print(f"sigma={sigma:3d}  L - a = {eval_alt(sigma, 0.9).value.real - 0.9:+.3e}")

# %%
# The cosine product over half-integer multiples of pi converges slowly,
# like 1/K; the report carries that bound.

for K in (100, 1000, 10_000, 100_000):
    rep = er_product_check(0.5, 0.3, K, 1e-6)
    print(f"K={K:6d} residual={rep.abs_residual:.2e} bound={rep.tail_bound:.2e} "
          f"pass={rep.passed}")

# %%
# Taking logs turns the product into a sum of series values.  Inside the box
# |x| < pi/(2 sqrt 2), |y| < sqrt(pi/2) the same sum can be rearranged into
# the Dirichlet-series form.

rep_log = check_log_identity(0.3, 0.5, 10_000, 1e-5)
rep_p1 = check_prop1(0.3, 0.5, 10_000, 1e-5)
print("log form   ", rep_log.lhs, rep_log.rhs)
print("series form", rep_p1.lhs, rep_p1.rhs)

# %%
# A coarse sweep: the worst residual stays within its bound everywhere.

xs = np.linspace(-1.0, 1.0, 5)
ys = np.linspace(-1.2, 1.2, 5)
worst = max(check_prop1(x, y, 10_000, 1e-5).abs_residual for x in xs for y in ys)
print(f"5 x 5 sweep, worst residual {worst:.2e}")

# %%
# Arctangent side: the telescoping sum for arctan(2X/pi) and the helicoid
# logarithm, which holds to rounding error.

for X in (0.5, math.pi / 2, 5):
    rep = check_arctan_telescope(X, 10_000, 1e-3)
    print(f"X={X:.4f} arctan={rep.lhs.real:.12f} residual={rep.abs_residual:.1e}")

rep = check_prop4_helicoid(0.5, 1e-12)
print("helicoid log at t=0.5:", rep.rhs.real, "vs", math.atan(0.5))
