"""Floating-point side: periods, Abel-Jacobi map, theta and winding numbers."""
from .abeljacobi import abel_jacobi, abel_jacobi_divisor, abel_jacobi_numeric
from .order import (
    KPDirection,
    WindingResult,
    half_periods,
    kp_direction,
    kp_direction_raw,
    order_numeric,
    order_numeric_detail,
    riemann_constant,
)
from .periods import RiemannData, load_riemann_data, period_matrix, save_riemann_data
from .theta import ThetaParams, riemann_theta, theta_lattice, theta_params

__all__ = [
    "KPDirection",
    "RiemannData",
    "ThetaParams",
    "WindingResult",
    "abel_jacobi",
    "abel_jacobi_divisor",
    "abel_jacobi_numeric",
    "half_periods",
    "kp_direction",
    "kp_direction_raw",
    "load_riemann_data",
    "order_numeric",
    "order_numeric_detail",
    "period_matrix",
    "riemann_constant",
    "riemann_theta",
    "save_riemann_data",
    "theta_lattice",
    "theta_params",
]
