"""Abel-Jacobi map with basepoint at infinity.

Branch points have known images (see ``period_matrix``).  Any other point
(x0, y0) is reached from a branch point e by the straight segment
``x = e + (x0 - e) tau^2``; the substitution removes the square-root
singularity at e, so the integrand is smooth on [0, 1].  The sheet is fixed
by requiring y to end at y0.  The branch point is chosen to keep the segment
as far from the other branch points as possible.
"""
from __future__ import annotations

import numpy as np

from ..curve import CurvePoint, HyperellipticCurve
from ..errors import NotConverged, PathNearBranchCut, PointNotOnCurve
from .periods import RiemannData, _reduce, sqrt_along

AJ_TOL = 1e-11
MIN_CLEARANCE = 1e-3


def _segment_clearance(E: np.ndarray, k: int, x0: complex) -> float:
    """Distance from segment [E[k], x0] to the other branch points, relative to its length."""
    e = E[k]
    d = x0 - e
    L = abs(d)
    best = np.inf
    for m, em in enumerate(E):
        if m == k:
            continue
        s = np.clip(((em - e) * np.conj(d)).real / L**2, 0.0, 1.0)
        best = min(best, abs(em - (e + s * d)))
    return best / max(L, 1e-300)


def _integrate(RD: RiemannData, k: int, x0: complex, y0: complex, N: int) -> np.ndarray:
    E = RD.branch_points
    g = RD.genus
    e = E[k]
    others = np.delete(E, k)
    mid = (e + x0) / 2
    # Gauss-Legendre on [-1, 1]; the integrand in tau is even, so halve it
    s, w = np.polynomial.legendre.leggauss(N)
    x = e + (x0 - e) * s**2
    H = np.ones_like(x)
    for em in others:
        H = H * sqrt_along(x, em, mid)
    H1 = np.prod([sqrt_along(np.array([x0]), em, mid)[0] for em in others])
    base = np.sqrt(RD.lead + 0j) * np.sqrt(x0 - e)
    sigma = y0 / (base * H1)
    if abs(abs(sigma) - 1) > 1e-6 or abs(sigma.imag) > 1e-6:
        raise PointNotOnCurve(f"({x0}, {y0}) is not on the curve numerically")
    sigma = np.sign(sigma.real)
    vals = 2 * (x0 - e) / (sigma * base) * np.vstack([x**j for j in range(g)]) / H
    return 0.5 * (vals @ w)


def abel_jacobi_numeric(RD: RiemannData, x0: complex, y0: complex) -> np.ndarray:
    """Normalized AJ image of the complex point (x0, y0), reduced to the fundamental cell."""
    E = RD.branch_points
    dist = np.abs(E - x0)
    k = int(np.argmin(dist))
    scale = max(1.0, float(np.max(np.abs(E))))
    if dist[k] < 1e-12 * scale:
        return RD.aj_branch[k].copy()
    clear = [_segment_clearance(E, j, x0) for j in range(len(E))]
    k = int(np.argmax(clear))
    if clear[k] < MIN_CLEARANCE:
        raise PathNearBranchCut(f"no clear segment from a branch point to x = {x0}")
    N = 32
    prev = _integrate(RD, k, x0, y0, N)
    while True:
        N *= 2
        cur = _integrate(RD, k, x0, y0, N)
        if np.max(np.abs(cur - prev)) < AJ_TOL * max(1.0, float(np.max(np.abs(cur)))):
            break
        if N >= 4096:
            raise NotConverged(f"AJ quadrature to x = {x0} did not settle")
        prev = cur
    return _reduce(RD.Omega, RD.aj_branch[k] + RD.norm @ cur)


def abel_jacobi(RD: RiemannData, C: HyperellipticCurve, P: CurvePoint) -> np.ndarray:
    """AJ(P) = integral from infinity to P of the normalized differentials, mod the lattice."""
    if not C.contains(P):
        raise PointNotOnCurve(f"{P!r} is not on {C!r}")
    g = RD.genus
    if P.is_infinity:
        return np.zeros(g, dtype=complex)
    return abel_jacobi_numeric(RD, complex(float(P.x)), complex(float(P.y)))


def abel_jacobi_divisor(RD: RiemannData, C: HyperellipticCurve, D) -> np.ndarray:
    z = np.zeros(RD.genus, dtype=complex)
    for P, m in D.items:
        z = z + m * abel_jacobi(RD, C, P)
    return _reduce(RD.Omega, z)
