"""Curves, Hopf cylinders and mean-curvature operators in 3-dimensional
Sasakian space forms, with dual-route (closed form vs finite difference)
verification of their classification theorems."""

from .spaceform import (
    SpaceForm,
    build_space_form,
    curvature_formula,
    curvature_from_frame,
    curvature_from_table,
)
from .curves import (
    SampledCurve,
    FrenetData,
    covariant_derivative,
    covariant_derivative_field,
    synthesize_frenet_curve,
    synthesize_legendre_curve,
    extract_frenet,
)
from .operators import (
    OperatorValue,
    mean_curvature_vector,
    laplacian_H_closed,
    laplacian_H_oracle,
    normal_laplacian_H,
    normal_laplacian_H_oracle,
    bitension_curve,
    eigen_residual,
    vanishing_residual,
    verdict_tol,
)
from .hopf import (
    HopfCylinder,
    SurfaceOperatorValue,
    build_cylinder,
    cylinder_mean_curvature,
    cylinder_laplacian_H,
    cylinder_normal_laplacian_H,
    cylinder_jacobi_H,
    cylinder_bitension,
    cylinder_frame_oracle,
    solve_natural_equation,
    oneill_base_curvature,
    horizontal_lift_check,
)
from .classify import (
    EigenReport,
    verify_curve_eigen_theorem,
    verify_legendre_theorems,
    verify_hopf_theorems,
)

__version__ = "0.1.0"

__all__ = [
    "SpaceForm",
    "build_space_form",
    "curvature_formula",
    "curvature_from_frame",
    "curvature_from_table",
    "SampledCurve",
    "FrenetData",
    "covariant_derivative",
    "covariant_derivative_field",
    "synthesize_frenet_curve",
    "synthesize_legendre_curve",
    "extract_frenet",
    "OperatorValue",
    "mean_curvature_vector",
    "laplacian_H_closed",
    "laplacian_H_oracle",
    "normal_laplacian_H",
    "normal_laplacian_H_oracle",
    "bitension_curve",
    "eigen_residual",
    "vanishing_residual",
    "verdict_tol",
    "HopfCylinder",
    "SurfaceOperatorValue",
    "build_cylinder",
    "cylinder_mean_curvature",
    "cylinder_laplacian_H",
    "cylinder_normal_laplacian_H",
    "cylinder_jacobi_H",
    "cylinder_bitension",
    "cylinder_frame_oracle",
    "solve_natural_equation",
    "oneill_base_curvature",
    "horizontal_lift_check",
    "EigenReport",
    "verify_curve_eigen_theorem",
    "verify_legendre_theorems",
    "verify_hopf_theorems",
    "__version__",
]
