"""Divisors and exact Riemann-Roch spaces L(D) on odd hyperelliptic models.

A line bundle is represented by a divisor-class representative.  L(D) is
computed by clearing the affine poles with a denominator in x, writing the
numerator as a(x) + b(x) y with degree bounds coming from the allowed pole
order at infinity, and imposing the remaining vanishing conditions at
affine points as linear equations on the coefficients of a and b.
"""
from __future__ import annotations

import contextlib
import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .curve import (
    INFINITY,
    CurvePoint,
    FunctionRep,
    HyperellipticCurve,
    local_expansion,
    point_from_json,
    point_to_json,
    series_compose_poly,
)
from .errors import InputError, UnsupportedPoint
from .qalg import ONE, ZERO, QMatrix, QPoly, kernel_basis


@dataclass(frozen=True)
class Divisor:
    """Finite formal sum of rational points; zero multiplicities are dropped."""

    items: tuple[tuple[CurvePoint, int], ...] = ()

    def __post_init__(self):
        acc: dict[CurvePoint, int] = defaultdict(int)
        for P, m in self.items:
            if not isinstance(m, int) or isinstance(m, bool):
                raise InputError(f"multiplicity must be an int, got {m!r}")
            acc[P] += m
        object.__setattr__(
            self, "items", tuple(sorted((P, m) for P, m in acc.items() if m))
        )

    @classmethod
    def from_dict(cls, d: Mapping[CurvePoint, int]) -> "Divisor":
        return cls(tuple(d.items()))

    @classmethod
    def point(cls, P: CurvePoint, m: int = 1) -> "Divisor":
        return cls(((P, m),))

    @classmethod
    def zero(cls) -> "Divisor":
        return cls()

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.items)

    @property
    def support(self) -> list[CurvePoint]:
        return [P for P, _ in self.items]

    def __getitem__(self, P: CurvePoint) -> int:
        for Q, m in self.items:
            if Q == P:
                return m
        return 0

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(self.items + other.items)

    def __neg__(self) -> "Divisor":
        return Divisor(tuple((P, -m) for P, m in self.items))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, k: int) -> "Divisor":
        return Divisor(tuple((P, k * m) for P, m in self.items))

    __rmul__ = __mul__

    def plus(self, P: CurvePoint, m: int) -> "Divisor":
        """D + m*P."""
        return Divisor(self.items + ((P, m),))

    def is_effective(self) -> bool:
        return all(m >= 0 for _, m in self.items)

    def __repr__(self):
        if not self.items:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{m}*{P!r}" for P, m in self.items) + ")"


@dataclass(frozen=True)
class RRBasis:
    basis: tuple[FunctionRep, ...]
    dimension: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "dimension", len(self.basis))


# ---------------------------------------------------------------------------
# h0 audit hook: records every divisor whose h0 is requested


_AUDIT: list[list] = []


@contextlib.contextmanager
def h0_audit():
    """Collect ``(C, D)`` for every h0 evaluation inside the block."""
    log: list = []
    _AUDIT.append(log)
    try:
        yield log
    finally:
        _AUDIT.remove(log)


def _check_support(C: HyperellipticCurve, D: Divisor) -> None:
    for P in D.support:
        if not isinstance(P, CurvePoint) or not C.contains(P):
            raise UnsupportedPoint(f"{P!r} is not a rational point of {C!r}")


def rr_space_basis(C: HyperellipticCurve, D: Divisor) -> RRBasis:
    """Basis of L(D) = {phi : (phi) + D >= 0}."""
    _check_support(C, D)
    return _rr_space_basis(C, D)


@lru_cache(maxsize=65536)
def _rr_space_basis(C: HyperellipticCurve, D: Divisor) -> RRBasis:
    if D.degree < 0:
        return RRBasis(())
    g = C.genus
    d = 2 * g + 1

    # group the affine support by x-coordinate
    fibres: dict = defaultdict(dict)
    for P, m in D.items:
        if not P.is_infinity:
            fibres[P.x][P.y] = m

    den = QPoly((ONE,))
    requirements = []  # (point, required order of the numerator)
    for x0, ys in sorted(fibres.items()):
        if C.f(x0) == 0:
            m = ys.get(ZERO, 0)
            e = -(-max(m, 0) // 2)
            pts = [(CurvePoint.affine(x0, 0), 2)]
        else:
            y0 = next(iter(ys))
            P, Pbar = CurvePoint.affine(x0, y0), CurvePoint.affine(x0, -y0)
            e = max(D[P], D[Pbar], 0)
            pts = [(P, 1), (Pbar, 1)]
        den = den * QPoly.linear_power(x0, e)
        for Q, ordx in pts:
            need = e * ordx - D[Q]
            if need > 0:
                requirements.append((Q, need))

    M = D[INFINITY] + 2 * den.degree
    if M < 0:
        return RRBasis(())
    da = M // 2
    db = (M - d) // 2 if M >= d else -1
    ncols = (da + 1) + (db + 1)

    rows = []
    for Q, need in requirements:
        x, y = local_expansion(C, Q, need)
        cols = []
        xpows = []
        for i in range(max(da, db) + 1):
            xi = series_compose_poly(QPoly((ONE,)), x) if i == 0 else xpows[-1] * x
            xpows.append(xi)
        for i in range(da + 1):
            cols.append(xpows[i].coefficients(0, need))
        for i in range(db + 1):
            cols.append((xpows[i] * y).coefficients(0, need))
        for k in range(need):
            rows.append([c[k] for c in cols])

    if rows:
        vectors = kernel_basis(QMatrix.from_rows(rows, ncols))
    else:
        vectors = [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    basis = []
    for v in vectors:
        a = QPoly(tuple(v[: da + 1]))
        b = QPoly(tuple(v[da + 1 :]))
        basis.append(FunctionRep(a, b, den))
    return RRBasis(tuple(basis))


def h0(C: HyperellipticCurve, D: Divisor) -> int:
    """dim L(D)."""
    _check_support(C, D)
    for log in _AUDIT:
        log.append((C, D))
    if D.degree < 0:
        return 0
    return _rr_space_basis(C, D).dimension


def canonical_divisor(C: HyperellipticCurve) -> Divisor:
    """(2g - 2) * infinity, the divisor of dx/y."""
    return Divisor.point(INFINITY, 2 * C.genus - 2)


def iota(C: HyperellipticCurve, D: Divisor) -> Divisor:
    """Residual involution D -> K - D."""
    return canonical_divisor(C) - D


def rr_identity_check(C: HyperellipticCurve, D: Divisor) -> bool:
    """h0(D) - h0(K - D) == deg D - g + 1."""
    return h0(C, D) - h0(C, iota(C, D)) == D.degree - C.genus + 1


# ---------------------------------------------------------------------------
# JSON


def divisor_to_json(D: Divisor) -> list:
    return [{"point": point_to_json(P), "mult": m} for P, m in D.items]


def divisor_from_json(obj, C: HyperellipticCurve | None = None) -> Divisor:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InputError(f"divisor JSON: {exc}") from None
    if not isinstance(obj, list):
        raise InputError("divisor JSON must be a list of {point, mult} objects")
    items = []
    for entry in obj:
        try:
            P = point_from_json(entry["point"], C)
            m = entry["mult"]
        except (TypeError, KeyError):
            raise InputError(f"bad divisor entry {entry!r}") from None
        items.append((P, m))
    return Divisor(tuple(items))

