"""Exact spline affine systems, their Walsh/Haar structure and Riesz bound checks."""

from .affine_operators import (
    SplineSpec,
    affine_element,
    build_rho,
    build_spline,
    granados_element,
    kappa,
    s_alpha,
    u_op,
    w0,
    w1,
    w_alpha,
)
from .chaos_spectrum import ChaosDecomposition, decompose, gamma, verify_lemma3, walsh_coeff
from .dyadic_poly import PiecewisePoly, ScaledPoly, inner_product, volterra
from .quadratic import QuadraticNumber
from .riesz_analysis import BoundsCertificate, GramMatrix, full_report, gram
from .walsh_index import MultiIndex, haar_fn, rademacher, walsh_fn, walsh_matrix

__all__ = [
    "BoundsCertificate",
    "ChaosDecomposition",
    "GramMatrix",
    "MultiIndex",
    "PiecewisePoly",
    "QuadraticNumber",
    "ScaledPoly",
    "SplineSpec",
    "affine_element",
    "build_rho",
    "build_spline",
    "decompose",
    "full_report",
    "gamma",
    "granados_element",
    "gram",
    "haar_fn",
    "inner_product",
    "kappa",
    "rademacher",
    "s_alpha",
    "u_op",
    "verify_lemma3",
    "volterra",
    "w0",
    "w1",
    "w_alpha",
    "walsh_coeff",
    "walsh_fn",
    "walsh_matrix",
]

__version__ = "0.1.0"
