"""Generalized Bessel functions attached to dihedral reflection groups.

Evaluates D(x, y) for the group with 2n reflections and constant
multiplicity k through four independent representations (Gegenbauer
series, Horn-type double series, simplex integral, boundary Bessel /
Laplace forms) so each route can serve as an oracle for the others.
"""

from ._backend import BACKEND, backend_name
from .config import DEFAULT_SEED, EvalConfig, EvalResult
from .identities import IDENTITY_SUITES, IdentityReport
from .laplace import (EvenDihedralParams, density_h, disk_bessel_identity,
                      eval_boundary_bessel, eval_laplace, hull_membership,
                      support_probe)
from .series import (DihedralParams, PolarPoint, b_coeffs, boundary_horn,
                     eval_gegenbauer_series, eval_horn_series,
                     normalization_constant, s_n_closed, s_n_direct,
                     wedge_reduce)
from .simplex import (QuadratureScheme, UnsupportedSchemeError,
                      dirichlet_sample, eval_simplex_integral)
from .special import (ConvergenceError, HornArgs, bessel_i, bessel_i_norm,
                      gauss_2f1, gegenbauer, horn_phi2, hyp_0f, pochhammer)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConvergenceError",
    "DEFAULT_SEED",
    "DihedralParams",
    "EvalConfig",
    "EvalResult",
    "EvenDihedralParams",
    "HornArgs",
    "IDENTITY_SUITES",
    "IdentityReport",
    "PolarPoint",
    "QuadratureScheme",
    "UnsupportedSchemeError",
    "b_coeffs",
    "backend_name",
    "bessel_i",
    "bessel_i_norm",
    "boundary_horn",
    "density_h",
    "dirichlet_sample",
    "disk_bessel_identity",
    "eval_boundary_bessel",
    "eval_gegenbauer_series",
    "eval_horn_series",
    "eval_laplace",
    "eval_simplex_integral",
    "gauss_2f1",
    "gegenbauer",
    "horn_phi2",
    "hull_membership",
    "hyp_0f",
    "normalization_constant",
    "pochhammer",
    "s_n_closed",
    "s_n_direct",
    "support_probe",
    "wedge_reduce",
]
