"""Dirichlet series from Euler-Ramanujan product identities.

Series evaluation with certified tail bounds, numerical checks of the
identities they satisfy, the associated minimal surfaces and an Abel-
summation functional equation.
"""

from .errors import DomainError, NonFiniteError, PoleError
from .functional_equation import (
    FuncEqTerms,
    Prop7Report,
    I5k_closed,
    I5k_paper_closed,
    I5k_quad,
    closed_I1_via_I3,
    closed_I2,
    closed_I3,
    closed_I4,
    corrected_rhs,
    fourier_F_partial,
    lambda_expansion,
    paper_rhs,
    prop7_compare,
    quad_terms,
    step_F,
)
from .identities import (
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
)
from .series import (
    Family,
    closed_form_s1,
    eval_alt,
    eval_batch,
    eval_geo,
    eval_heli,
    eval_series,
    probe_oscillation,
    probe_sigma_limit,
)
from .special_functions import (
    EvalResult,
    Precision,
    complex_gamma,
    dirichlet_lambda,
    principal_arctan,
    principal_log,
    upper_incomplete_gamma,
)
from .surfaces import (
    Mesh,
    Residual,
    Surface,
    SurfacePoint3,
    ThetaFamilyParams,
    check_prop2,
    check_prop5,
    helicoid_we,
    mean_curvature_probe,
    sample_mesh,
    scherk_family,
    scherk_we,
)

__version__ = "0.1.0"
