"""Riemann constant calibration, the KP direction and the numeric vanishing order.

Coordinates: a degree g-1 bundle Lambda maps to ``AJ(Lambda) - kappa``,
where kappa is the half-period for which theta vanishes on the images of
effective divisors.  The basepoint is a Weierstrass point, so kappa is
2-torsion and its sign is immaterial.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..curve import CurvePoint, HyperellipticCurve, local_expansion
from ..errors import (
    CalibrationFailed,
    DegenerateLine,
    DegreeMismatch,
    NotConverged,
    WindingAmbiguous,
    ZeroOnContour,
)
from ..qalg import series_invert
from ..rrspace import Divisor
from .abeljacobi import abel_jacobi_divisor, abel_jacobi_numeric
from .periods import RiemannData, _reduce
from .theta import ThetaParams, riemann_theta, theta_and_derivative, theta_lattice

CAL_TOL = 1e-6
MAX_SAMPLES = 1 << 16
DEFECT_TOL = 0.1
MAX_RADIUS = 0.5


# ---------------------------------------------------------------------------
# Riemann constant


def half_periods(Omega: np.ndarray) -> list[np.ndarray]:
    g = Omega.shape[0]
    out = []
    for m1 in itertools.product((0, 1), repeat=g):
        for m2 in itertools.product((0, 1), repeat=g):
            out.append((np.array(m1) + Omega @ np.array(m2)) / 2)
    return out


def random_curve_point(RD: RiemannData, rng: np.random.Generator) -> tuple[complex, complex]:
    """A random complex point (x, y) away from the branch points."""
    E = RD.branch_points
    scale = max(1.0, float(np.max(np.abs(E))))
    while True:
        x = complex(*rng.uniform(-1.5 * scale, 1.5 * scale, size=2))
        if np.min(np.abs(E - x)) > 0.05 * scale:
            break
    y = np.sqrt(RD.f_eval(x))
    return x, complex(y if rng.random() < 0.5 else -y)


def riemann_constant(
    RD: RiemannData,
    C: HyperellipticCurve | None = None,
    samples: int = 8,
    tp: ThetaParams = ThetaParams(),
    seed: int = 0,
) -> np.ndarray:
    """Half-period kappa with theta(AJ(D) - kappa) = 0 for effective D of degree g - 1."""
    g = RD.genus
    rng = np.random.default_rng(seed)
    images = []
    for _ in range(max(samples, 1) if g > 1 else 1):
        z = np.zeros(g, dtype=complex)
        for _ in range(g - 1):
            z = z + abel_jacobi_numeric(RD, *random_curve_point(RD, rng))
        images.append(z)
    best, best_val = None, np.inf
    for kappa in half_periods(RD.Omega):
        val = max(abs(riemann_theta(z - kappa, RD, tp)) for z in images)
        if val < best_val:
            best, best_val = kappa, val
    if best_val >= CAL_TOL:
        raise CalibrationFailed(f"best half-period leaves |theta| = {best_val:.2e}")
    return best


# ---------------------------------------------------------------------------
# direction


@dataclass(frozen=True, eq=False)
class KPDirection:
    U: np.ndarray  # normalized differentials against the uniformizer at p
    raw: np.ndarray  # same for x^(k-1) dx / y

    def __post_init__(self):
        if not np.any(self.U):
            raise ValueError("U must be nonzero")

    @property
    def unit(self) -> np.ndarray:
        return self.U / np.linalg.norm(self.U)


def kp_direction_raw(C: HyperellipticCurve, p: CurvePoint) -> list:
    """Exact values at t = 0 of (x^(k-1) dx/y)/dt, k = 1..g."""
    g = C.genus
    prec = 2 * g + 6
    x, y = local_expansion(C, p, prec)
    w = x.derivative() * series_invert(y)
    out = []
    for _ in range(g):
        out.append(w.coeff(0))
        w = w * x
    return out


def kp_direction(RD: RiemannData, C: HyperellipticCurve, p: CurvePoint) -> KPDirection:
    raw = np.array([complex(float(v)) for v in kp_direction_raw(C, p)])
    return KPDirection(RD.norm @ raw, raw)


# ---------------------------------------------------------------------------
# winding number


@dataclass(frozen=True)
class WindingResult:
    order: int
    defect: float
    samples: int
    radius: float
    min_modulus: float
    max_modulus: float
    inner: "WindingResult | None" = field(default=None, repr=False)


def _winding(z0: np.ndarray, U: np.ndarray, r: float, lat, eps: float) -> WindingResult:
    N = 64
    while True:
        t = r * np.exp(2j * np.pi * np.arange(N) / N)
        vals, ders = theta_and_derivative(z0[None, :] + t[:, None] * U[None, :], U, lat)
        mod = np.abs(vals)
        if mod.max() < 1e3 * eps:
            raise DegenerateLine(f"|theta| < {mod.max():.2e} all around |t| = {r:g}")
        if mod.min() < max(100 * eps, 1e-6 * mod.max()):
            raise ZeroOnContour(f"|theta| = {mod.min():.2e} on |t| = {r:g}")
        steps = np.angle(np.roll(vals, -1) / vals)
        if np.all(np.abs(steps) < np.pi / 2):
            break
        N *= 2
        if N > MAX_SAMPLES:
            raise NotConverged("phase tracking needs too many samples")
    count = int(round(steps.sum() / (2 * np.pi)))
    w = np.mean(t * ders / vals)
    defect = float(abs(w - count))
    if defect >= DEFECT_TOL:
        raise WindingAmbiguous(f"winding {w:.4f} vs phase count {count}")
    return WindingResult(count, defect, N, r, float(mod.min()), float(mod.max()))


def order_numeric_detail(
    RD: RiemannData,
    C: HyperellipticCurve,
    lam: Divisor,
    p: CurvePoint,
    r: float = 1e-2,
    tp: ThetaParams = ThetaParams(),
    kappa: np.ndarray | None = None,
    direction: np.ndarray | None = None,
) -> WindingResult:
    g = RD.genus
    if lam.degree != g - 1:
        raise DegreeMismatch(f"deg = {lam.degree}, expected g - 1 = {g - 1}")
    if not r > 0:
        raise ValueError("r must be positive")
    if kappa is None:
        kappa = riemann_constant(RD, C, tp=tp)
    U = kp_direction(RD, C, p).unit if direction is None else np.asarray(direction, dtype=complex)
    U = U / np.linalg.norm(U)
    z0 = _reduce(RD.Omega, abel_jacobi_divisor(RD, C, lam) - kappa)
    lat = theta_lattice(RD.Omega, tp.eps)
    # a high-order zero can leave |theta| ~ r^k below the noise floor; widen
    # the contour before calling the line degenerate
    while True:
        try:
            outer = _winding(z0, U, r, lat, tp.eps)
            break
        except DegenerateLine:
            if 4 * r > MAX_RADIUS:
                raise
            r *= 4
    inner = _winding(z0, U, r / 2, lat, tp.eps)
    if inner.order != outer.order:
        raise WindingAmbiguous(f"{outer.order} zeros inside |t| = {r:g} but {inner.order} inside {r / 2:g}")
    return WindingResult(
        outer.order, max(outer.defect, inner.defect), outer.samples, r,
        min(outer.min_modulus, inner.min_modulus), outer.max_modulus, inner,
    )


def order_numeric(
    RD: RiemannData,
    C: HyperellipticCurve,
    lam: Divisor,
    p: CurvePoint,
    r: float = 1e-2,
    tp: ThetaParams = ThetaParams(),
    kappa: np.ndarray | None = None,
) -> int:
    """Winding number of t -> theta(z0 + t U/|U|) around |t| = r."""
    return order_numeric_detail(RD, C, lam, p, r, tp, kappa).order


def theta_at_bundle(RD, C, lam: Divisor, kappa, tp: ThetaParams = ThetaParams()) -> complex:
    """theta at the coordinate of the bundle lam (degree g - 1)."""
    return riemann_theta(abel_jacobi_divisor(RD, C, lam) - kappa, RD, tp)
