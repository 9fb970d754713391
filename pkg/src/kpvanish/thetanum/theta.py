"""Riemann theta function by lattice summation with a certified tail bound.

theta(z) = sum_n exp(pi i n.Omega.n + 2 pi i n.z).  Arguments are first
reduced to the fundamental cell, where ``c = (Im Omega)^-1 Im z`` has
entries in [-1/2, 1/2].  With ``v = sqrt(pi) T (n + c)`` (``Im Omega =
T^t T``) each term has modulus ``exp(pi c.Y.c) exp(-|v|^2)``.  If rho is
the shortest nonzero vector of ``sqrt(pi) T Z^g``, balls of radius rho/2
around the shifted lattice points are disjoint, which bounds the tail
outside |v| >= R by

    g (2/rho)^g  int_{R - rho/2}^inf r^(g-1) exp(-(r - rho/2)^2) dr

(valid for R >= rho/2).  R is the smallest radius on a 1/8 grid for which
that bound, times the cell-wide maximum of ``exp(pi c.Y.c)``, is below eps.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from ..errors import RadiusOverflow

# slack on the reduced cell for rounding at its faces
CELL_MARGIN = 0.05
MAX_TERMS = 2_000_000


@dataclass(frozen=True)
class ThetaParams:
    eps: float = 1e-12
    radius: float | None = None
    workdigits: int = 16

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")


@dataclass(frozen=True, eq=False)
class ThetaLattice:
    Omega: np.ndarray
    eps: float
    radius: float
    rho: float
    points: np.ndarray  # integer vectors, shape (count, g)
    quad_phase: np.ndarray  # pi i n.Omega.n per point

    @property
    def params(self) -> ThetaParams:
        return ThetaParams(self.eps, self.radius)


def _shortest_vector(L: np.ndarray) -> float:
    """Length of the shortest nonzero vector of L Z^g (Fincke-Pohst box search)."""
    g = L.shape[1]
    G = L.T @ L
    Ginv = np.linalg.inv(G)
    r0 = float(np.sqrt(np.min(np.diag(G))))
    bounds = [int(np.floor(r0 * np.sqrt(Ginv[i, i]) + 1e-9)) for i in range(g)]
    best = r0
    for n in itertools.product(*[range(-b, b + 1) for b in bounds]):
        if any(n):
            v = np.asarray(n, dtype=float)
            best = min(best, float(np.sqrt(v @ G @ v)))
    return best


def tail_bound(R: float, rho: float, g: int) -> float:
    if R < rho / 2:
        return np.inf
    lo = R - rho / 2
    val, _ = integrate.quad(lambda r: r ** (g - 1) * np.exp(-((r - rho / 2) ** 2)), lo, np.inf)
    return g * (2 / rho) ** g * val


def _cell_growth(Y: np.ndarray, half: float) -> float:
    """max over the cube |c_i| <= half of pi c.Y.c (attained at a vertex)."""
    g = Y.shape[0]
    best = 0.0
    for signs in itertools.product((-1.0, 1.0), repeat=g):
        c = half * np.asarray(signs)
        best = max(best, float(np.pi * c @ Y @ c))
    return best


def theta_lattice(Omega: np.ndarray, eps: float = 1e-12) -> ThetaLattice:
    Omega = np.asarray(Omega, dtype=complex)
    return _theta_lattice(Omega.tobytes(), Omega.shape[0], float(eps))


@lru_cache(maxsize=64)
def _theta_lattice(blob: bytes, g: int, eps: float) -> ThetaLattice:
    Omega = np.frombuffer(blob, dtype=complex).reshape(g, g).copy()
    Y = Omega.imag
    T = np.linalg.cholesky(Y).T  # Y = T^t T
    L = np.sqrt(np.pi) * T
    rho = _shortest_vector(L)
    growth = _cell_growth(Y, 0.5 + CELL_MARGIN)
    if eps < 50 * np.finfo(float).eps * np.exp(growth):
        raise RadiusOverflow(f"eps = {eps:g} is below double-precision resolution here")
    R = max(rho / 2, (np.sqrt(g) + rho) / 2)
    while np.exp(growth) * tail_bound(R, rho, g) >= eps:
        R += 0.125
        if R > 1e3:
            raise RadiusOverflow("no finite radius reaches eps")
    # every n with |L(n + c)| < R satisfies |L n| < R + max|L c|
    reach = R + np.sqrt(growth)
    Ginv = np.linalg.inv(L.T @ L)
    bounds = [int(np.ceil(reach * np.sqrt(Ginv[i, i]))) for i in range(g)]
    count = int(np.prod([2 * b + 1 for b in bounds]))
    if count > MAX_TERMS:
        raise RadiusOverflow(f"summation box of {count} points exceeds the budget")
    grid = np.array(list(itertools.product(*[range(-b, b + 1) for b in bounds])), dtype=float)
    keep = np.linalg.norm(grid @ L.T, axis=1) < reach
    pts = grid[keep]
    quad = np.pi * 1j * np.einsum("ni,ij,nj->n", pts, Omega, pts)
    return ThetaLattice(Omega, eps, float(R), float(rho), pts, quad)


def theta_params(Omega, eps: float = 1e-12) -> ThetaParams:
    return theta_lattice(Omega, eps).params


def reduce_argument(z, Omega):
    """Split z = z_red + Omega m + k with integer m, k; returns (z_red, m)."""
    z = np.asarray(z, dtype=complex)
    c = np.linalg.solve(Omega.imag, z.imag)
    m = np.round(c)
    zr = z - Omega @ m
    zr = zr - np.round(zr.real)
    return zr, m


def theta_sum(Z, lat: ThetaLattice) -> np.ndarray:
    """Raw truncated sum at rows of Z (N x g), assumed to lie near the reduced cell."""
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    phase = lat.quad_phase[None, :] + 2j * np.pi * (Z @ lat.points.T)
    return np.exp(phase).sum(axis=1)


def theta_sum_and_derivative(Z, U, lat: ThetaLattice):
    """Truncated sum and its derivative along direction U at rows of Z."""
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    terms = np.exp(lat.quad_phase[None, :] + 2j * np.pi * (Z @ lat.points.T))
    nU = 2j * np.pi * (lat.points @ np.asarray(U, dtype=complex))
    return terms.sum(axis=1), (terms * nU[None, :]).sum(axis=1)


def theta_and_derivative(Z, U, lat: ThetaLattice):
    """theta and its U-directional derivative at arbitrary rows of Z.

    Each row is reduced separately; with z = z_r + Omega m + k,
    theta(z) = e theta(z_r) and d_U theta(z) = e (d_U theta(z_r) - 2 pi i (m.U) theta(z_r)),
    where e = exp(-pi i m.Omega.m - 2 pi i m.z_r).
    """
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    U = np.asarray(U, dtype=complex)
    Om = lat.Omega
    M = np.round(np.linalg.solve(Om.imag, Z.imag.T).T)
    Zr = Z - M @ Om.T
    Zr = Zr - np.round(Zr.real)
    val, der = theta_sum_and_derivative(Zr, U, lat)
    e = np.exp(-1j * np.pi * np.einsum("ni,ij,nj->n", M, Om, M) - 2j * np.pi * np.einsum("ni,ni->n", M, Zr))
    return e * val, e * (der - 2j * np.pi * (M @ U) * val)


def _omega_of(source) -> np.ndarray:
    return np.asarray(getattr(source, "Omega", source), dtype=complex)


def riemann_theta(z, source, tp: ThetaParams = ThetaParams()) -> complex:
    """theta(z | Omega); ``source`` is a RiemannData or a Riemann matrix."""
    Omega = _omega_of(source)
    lat = theta_lattice(Omega, tp.eps)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    zr, m = reduce_argument(z, Omega)
    val = theta_sum(zr[None, :], lat)[0]
    if np.any(m):
        val *= np.exp(-1j * np.pi * (m @ Omega @ m) - 2j * np.pi * (m @ zr))
    return complex(val)
