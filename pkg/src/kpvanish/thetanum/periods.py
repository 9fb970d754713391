"""Period matrices of y^2 = f(x) from a chain of branch-point cycles.

The finite branch points are sorted by real part (ties by imaginary part)
and joined by straight segments, giving an x-monotone, non-self-crossing
chain e_1 - e_2 - ... - e_{2g+1}.  The lift of segment j is a closed cycle
gamma_j (out on one sheet, back on the other); consecutive cycles meet
once at their shared branch point and the others are disjoint.  The sign
of each meeting is read off from the tangent directions of the two cycles
in the local uniformizer sqrt(x - e) there.  A symplectic reduction of that
intersection form gives the a/b basis.

Integrals over a segment carry the inverse square root endpoint
singularities, which Gauss-Chebyshev quadrature absorbs exactly.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..curve import HyperellipticCurve, curve_to_json
from ..errors import BranchPointsTooClose, NotConverged

TAU_SYM = 1e-8
QUAD_TOL = 1e-8
MAX_QUAD_POINTS = 1 << 14


@dataclass(frozen=True, eq=False)
class RiemannData:
    """Numerical Jacobian data; arrays are treated as read-only."""

    branch_points: np.ndarray  # finite branch points in chain order
    lead: complex
    chain_periods: np.ndarray  # g x 2g, periods of x^(k-1)dx/y over gamma_j
    intersection: np.ndarray  # 2g x 2g intersection numbers of the gamma_j
    symplectic: np.ndarray  # 2g x 2g, rows a_1..a_g, b_1..b_g in gamma coordinates
    A: np.ndarray
    B: np.ndarray
    Omega: np.ndarray
    norm: np.ndarray  # A^-1
    aj_branch: np.ndarray  # (2g+1) x g normalized Abel-Jacobi images of the branch points
    quad_points: int  # nodes per segment actually used
    quad_error: float
    curve_hash: str

    @property
    def genus(self) -> int:
        return self.Omega.shape[0]

    def f_eval(self, x):
        """f at complex x from the numerical roots."""
        x = np.asarray(x, dtype=complex)
        return self.lead * np.prod(x[..., None] - self.branch_points, axis=-1)

    def lattice_coordinates(self, z) -> tuple[np.ndarray, np.ndarray]:
        """Real (a, b) with z = a + Omega b."""
        z = np.asarray(z, dtype=complex)
        b = np.linalg.solve(self.Omega.imag, z.imag)
        a = z.real - self.Omega.real @ b
        return a, b

    def in_lattice(self, z, tol: float = 1e-6) -> bool:
        a, b = self.lattice_coordinates(z)
        return bool(np.all(np.abs(a - np.round(a)) < tol) and np.all(np.abs(b - np.round(b)) < tol))

    def reduce(self, z) -> np.ndarray:
        """Representative of z modulo Z^g + Omega Z^g in the fundamental cell."""
        return _reduce(self.Omega, z)


def _reduce(Omega, z):
    z = np.asarray(z, dtype=complex)
    b = np.linalg.solve(Omega.imag, z.imag)
    a = z.real - Omega.real @ b
    a, b = a - np.round(a), b - np.round(b)
    return a + Omega @ b


def curve_hash(C: HyperellipticCurve) -> str:
    blob = json.dumps(curve_to_json(C), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def branch_points(C: HyperellipticCurve) -> np.ndarray:
    """Roots of f, Newton-polished, in chain order."""
    coeffs = np.array([float(a) for a in reversed(C.f.coeffs)])
    roots = np.roots(coeffs).astype(complex)
    dcoeffs = np.polyder(coeffs)
    for _ in range(4):
        step = np.polyval(coeffs, roots) / np.polyval(dcoeffs, roots)
        roots = roots - step
    # snap rational roots exactly
    for r in C.f.rational_roots():
        k = int(np.argmin(np.abs(roots - float(r))))
        roots[k] = float(r)
    idx = sorted(range(len(roots)), key=lambda i: (round(roots[i].real, 10), roots[i].imag))
    return roots[idx]


def sqrt_along(x, e: complex, mid: complex):
    """Branch of sqrt(x - e) continuous along a segment through ``mid`` avoiding ``e``."""
    w = mid - e
    w = w / abs(w)
    return np.sqrt(w) * np.sqrt((x - e) / w)


def _branch_constant(E: np.ndarray, lead: complex, k: int) -> complex:
    """A fixed square root c of f'(e_k); the uniformizer is t = y / c."""
    others = np.delete(E, k)
    return np.sqrt(lead + 0j) * np.prod(np.sqrt(E[k] - others + 0j))


def _segment_data(E: np.ndarray, lead: complex, j: int, N: int):
    """Period vector of gamma_j and the uniformizer directions at both ends."""
    g = (len(E) - 1) // 2
    e0, e1 = E[j], E[j + 1]
    mid, h = (e0 + e1) / 2, (e1 - e0) / 2
    others = [m for m in range(len(E)) if m not in (j, j + 1)]

    def G(s):
        x = mid + h * s
        out = np.ones_like(x, dtype=complex)
        for m in others:
            out = out * sqrt_along(x, E[m], mid)
        return out

    s = np.cos((2 * np.arange(1, N + 1) - 1) * np.pi / (2 * N))
    x = mid + h * s
    pref = 1j * np.sqrt(lead + 0j)
    Gs = G(s)
    powers = np.vstack([x**k for k in range(g)])
    period = 2 * (np.pi / N) * np.sum(powers / (pref * Gs), axis=1)
    # y_+ ~ i h sqrt(lead) sqrt(1 - s^2) G(s): direction of t = y_+/c near each end
    u_end = pref * h * G(np.array([1.0]))[0] / _branch_constant(E, lead, j + 1)
    v_start = pref * h * G(np.array([-1.0]))[0] / _branch_constant(E, lead, j)
    return period, u_end / abs(u_end), v_start / abs(v_start)


def chain_periods(E: np.ndarray, lead: complex, N: int):
    g = (len(E) - 1) // 2
    P = np.zeros((g, 2 * g), dtype=complex)
    ends, starts = [], []
    for j in range(2 * g):
        P[:, j], u, v = _segment_data(E, lead, j, N)
        ends.append(u)
        starts.append(v)
    I = np.zeros((2 * g, 2 * g), dtype=int)
    for j in range(2 * g - 1):
        # gamma_j passes e_{j+1} with tangent -u, gamma_{j+1} leaves it with tangent v
        a, b = -ends[j], starts[j + 1]
        cross = (np.conj(a) * b).imag
        sgn = 1 if cross > 0 else -1
        I[j, j + 1], I[j + 1, j] = sgn, -sgn
    return P, I


def symplectic_basis(I: np.ndarray) -> np.ndarray:
    """Integer T with T I T^t = [[0, 1], [-1, 0]] (rows a_1..a_g then b_1..b_g)."""
    n = I.shape[0]
    vecs = [np.eye(n, dtype=int)[k] for k in range(n)]
    form = lambda u, v: int(u @ I @ v)
    a_list, b_list = [], []
    while vecs:
        a = vecs.pop(0)
        k = next((i for i, v in enumerate(vecs) if abs(form(a, v)) == 1), None)
        if k is None:
            raise NotConverged("intersection form is not unimodular on the chain")
        b = vecs.pop(k)
        if form(a, b) == -1:
            b = -b
        vecs = [v - form(v, b) * a + form(v, a) * b for v in vecs]
        a_list.append(a)
        b_list.append(b)
    return np.array(a_list + b_list)


def _assemble(E, lead, N):
    g = (len(E) - 1) // 2
    P, I = chain_periods(E, lead, N)
    T = symplectic_basis(I)
    A = P @ T[:g].T
    B = P @ T[g:].T
    Omega = np.linalg.solve(A, B)
    return P, I, T, A, B, Omega


def period_matrix(C: HyperellipticCurve, quad_points: int = 256) -> RiemannData:
    if quad_points < 16:
        raise ValueError("quad_points must be >= 16")
    g = C.genus
    E = branch_points(C)
    scale = max(1.0, float(np.max(np.abs(E))))
    gaps = np.abs(E[:, None] - E[None, :])[~np.eye(len(E), dtype=bool)]
    if gaps.min() < 1e-6 * scale:
        raise BranchPointsTooClose(f"branch points {gaps.min():.2e} apart")
    lead = complex(float(C.lead))
    # quad_points is the starting node count; doubled while N and N/2 disagree
    N = quad_points
    Omega_half = _assemble(E, lead, N // 2)[5]
    while True:
        P, I, T, A, B, Omega = _assemble(E, lead, N)
        err = float(np.max(np.abs(Omega - Omega_half)))
        if np.all(np.isfinite(Omega)) and err <= QUAD_TOL:
            break
        if N >= MAX_QUAD_POINTS:
            raise NotConverged(f"Omega changed by {err:.2e} between {N // 2} and {N} nodes")
        Omega_half, N = Omega, 2 * N
    asym = float(np.max(np.abs(Omega - Omega.T)))
    if asym > TAU_SYM * max(1.0, float(np.max(np.abs(Omega)))):
        raise NotConverged(f"Omega not symmetric (|Omega - Omega^t| = {asym:.2e})")
    Omega = (Omega + Omega.T) / 2
    if np.linalg.eigvalsh(Omega.imag).min() <= 0:
        raise NotConverged("Im Omega is not positive definite")
    norm = np.linalg.inv(A)
    # AJ(e_1) from sum_j AJ(e_j) = 0 (the divisor of y), then walk the chain
    steps = P / 2
    ks = np.arange(1, 2 * g + 1)
    aj = np.zeros((2 * g + 1, g), dtype=complex)
    aj[0] = -(steps @ (2 * g + 1 - ks))
    for j in range(1, 2 * g + 1):
        aj[j] = aj[j - 1] + steps[:, j - 1]
    aj_norm = np.array([_reduce(Omega, v) for v in (norm @ aj.T).T])
    return RiemannData(E, lead, P, I, T, A, B, Omega, norm, aj_norm, N, err, curve_hash(C))


# ---------------------------------------------------------------------------
# cache file


def _cx(a):
    a = np.asarray(a)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def _uncx(v):
    v = np.asarray(v, dtype=float)
    return v[..., 0] + 1j * v[..., 1]


def save_riemann_data(RD: RiemannData, C: HyperellipticCurve, path) -> None:
    payload = {
        "curve": curve_to_json(C),
        "curve_hash": RD.curve_hash,
        "quad_points": RD.quad_points,
        "quad_error": RD.quad_error,
        "lead": _cx(RD.lead),
        "branch_points": _cx(RD.branch_points),
        "chain_periods": _cx(RD.chain_periods),
        "intersection": RD.intersection.tolist(),
        "symplectic": RD.symplectic.tolist(),
        "A": _cx(RD.A),
        "B": _cx(RD.B),
        "Omega": _cx(RD.Omega),
        "norm": _cx(RD.norm),
        "aj_branch": _cx(RD.aj_branch),
    }
    Path(path).write_text(json.dumps(payload))


def load_riemann_data(path, C: HyperellipticCurve | None = None) -> RiemannData:
    d = json.loads(Path(path).read_text())
    if C is not None and d["curve_hash"] != curve_hash(C):
        raise ValueError("cache file belongs to a different curve")
    return RiemannData(
        branch_points=_uncx(d["branch_points"]),
        lead=complex(_uncx(d["lead"])),
        chain_periods=_uncx(d["chain_periods"]),
        intersection=np.array(d["intersection"], dtype=int),
        symplectic=np.array(d["symplectic"], dtype=int),
        A=_uncx(d["A"]),
        B=_uncx(d["B"]),
        Omega=_uncx(d["Omega"]),
        norm=_uncx(d["norm"]),
        aj_branch=_uncx(d["aj_branch"]),
        quad_points=d["quad_points"],
        quad_error=d["quad_error"],
        curve_hash=d["curve_hash"],
    )
