"""Orders of vanishing of the theta function on hyperelliptic Jacobians.

The exact side works over the rationals with Riemann-Roch spaces on the
odd model y^2 = f(x); the ``thetanum`` subpackage checks the same integers
numerically with theta functions.
"""
from .curve import INFINITY, CurvePoint, FunctionRep, HyperellipticCurve
from .errors import FormulaMismatch, InputError, KPError, NumericError
from .rrspace import Divisor, canonical_divisor, h0, iota, rr_space_basis
from .vanishing import (
    OrderReport,
    gap_sequence,
    inflectionary_weight,
    order_gap,
    order_report,
    order_sw,
    order_thm41,
    proper_intersection,
    sw_set,
    wronskian_order_at,
)

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "CurvePoint",
    "Divisor",
    "FormulaMismatch",
    "FunctionRep",
    "HyperellipticCurve",
    "InputError",
    "KPError",
    "NumericError",
    "OrderReport",
    "canonical_divisor",
    "gap_sequence",
    "h0",
    "inflectionary_weight",
    "iota",
    "order_gap",
    "order_report",
    "order_sw",
    "order_thm41",
    "proper_intersection",
    "rr_space_basis",
    "sw_set",
    "wronskian_order_at",
]
