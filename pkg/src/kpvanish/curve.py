"""Odd-degree hyperelliptic curves y^2 = f(x) over the rationals.

The model has a single point at infinity.  Local uniformizers:

* affine point with y0 != 0: ``t = x - x0``;
* affine Weierstrass point (y0 = 0): ``t = y``;
* infinity: ``x = c t^-2`` and ``y = c^(g+1) t^-(2g+1) u(t)`` with
  ``u(0) = 1``, where ``c`` is the leading coefficient of f (for monic f
  this is the familiar ``x = t^-2``).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import (
    InvalidCurve,
    PointNotOnCurve,
    PrecisionExhausted,
    PrecisionTooSmall,
    ZeroFunction,
)
from .qalg import (
    ONE,
    ZERO,
    QLaurent,
    QPoly,
    poly_derivative,
    poly_gcd,
    rat,
    series_compose_poly,
    series_invert,
    series_revert,
    series_sqrt,
)


@dataclass(frozen=True)
class HyperellipticCurve:
    f: QPoly

    def __post_init__(self):
        f = self.f if isinstance(self.f, QPoly) else QPoly(tuple(self.f))
        object.__setattr__(self, "f", f)
        if f.degree < 3 or f.degree % 2 == 0:
            raise InvalidCurve(f"deg f must be odd and >= 3, got {f.degree}")
        if poly_gcd(f, poly_derivative(f)).degree > 0:
            raise InvalidCurve("f is not squarefree")

    @classmethod
    def from_coeffs(cls, coeffs) -> "HyperellipticCurve":
        return cls(QPoly(tuple(rat(c) for c in coeffs)))

    @property
    def genus(self) -> int:
        return (self.f.degree - 1) // 2

    @property
    def lead(self) -> Fraction:
        return self.f.lead

    def contains(self, P: "CurvePoint") -> bool:
        return P.is_infinity or P.y * P.y == self.f(P.x)

    def __repr__(self):
        return f"HyperellipticCurve(y^2 = {self.f!r})"


@dataclass(frozen=True, order=True)
class CurvePoint:
    """A rational point: affine ``(x, y)`` or the point at infinity."""

    is_infinity: bool
    x: Fraction = ZERO
    y: Fraction = ZERO

    @classmethod
    def affine(cls, x, y) -> "CurvePoint":
        return cls(False, rat(x), rat(y))

    def conjugate(self) -> "CurvePoint":
        """Image under the hyperelliptic involution y -> -y."""
        return self if self.is_infinity else CurvePoint(False, self.x, -self.y)

    def __repr__(self):
        return "Infinity" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = CurvePoint(True)


@dataclass(frozen=True)
class FunctionRep:
    """The function (a(x) + b(x) y) / den(x); ``den`` is monic."""

    a: QPoly
    b: QPoly
    den: QPoly = QPoly((ONE,))

    def __post_init__(self):
        if self.den.is_zero():
            raise ValueError("denominator must be nonzero")
        if self.den.lead != 1:
            c = ONE / self.den.lead
            object.__setattr__(self, "a", self.a * c)
            object.__setattr__(self, "b", self.b * c)
            object.__setattr__(self, "den", self.den * c)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()


# ---------------------------------------------------------------------------
# local expansions


def is_weierstrass(C: HyperellipticCurve, P: CurvePoint) -> bool:
    return P.is_infinity or P.y == 0


def local_expansion(C: HyperellipticCurve, P: CurvePoint, prec: int):
    """Expansions ``(x(t), y(t))`` in the uniformizer at ``P``.

    At affine points both series are exact to ``O(t^prec)``.  At infinity
    ``prec`` counts terms beyond the leading one (relative precision), so
    ``y`` is known to ``O(t^(prec - 2g - 1))``.
    """
    if prec < 1:
        raise PrecisionTooSmall(f"prec must be >= 1, got {prec}")
    if not C.contains(P):
        raise PointNotOnCurve(f"{P!r} is not on {C!r}")
    return _local_expansion(C, P, prec)


@lru_cache(maxsize=4096)
def _local_expansion(C: HyperellipticCurve, P: CurvePoint, prec: int):
    f = C.f
    if P.is_infinity:
        g = C.genus
        c = C.lead
        d = 2 * g + 1
        # u^2 = t^(4g+2) f(c t^-2) / c^(2g+2), a polynomial in t^2 with u(0)^2 = 1
        F = [ZERO] * (2 * d + 1)
        for k, a in enumerate(f.coeffs):
            F[2 * (d - k)] = a * c ** (k - 2 * g - 2)
        u = series_sqrt(QLaurent.make(0, F, prec), 1)
        x = QLaurent.make(-2, [c], prec - 2)
        y = u.shift(-d).scale(c ** (g + 1))
        return x, y
    if P.y != 0:
        x = QLaurent.make(0, [P.x, ONE], prec)
        fx = QLaurent.make(0, f.shift(P.x).coeffs, prec)
        return x, series_sqrt(fx, P.y)
    # Weierstrass point: t = y, t^2 = f(x0 + X)
    b = f.shift(P.x).coeffs
    n_s = prec // 2 + 2
    X_s = series_revert(list(b) + [ZERO] * n_s, n_s)
    xc = [ZERO] * prec
    xc[0] = P.x
    for k in range(1, n_s):
        if 2 * k < prec:
            xc[2 * k] = X_s[k]
    x = QLaurent.make(0, xc, prec)
    y = QLaurent.make(1, [ONE], prec)
    return x, y


def function_series(C: HyperellipticCurve, phi: FunctionRep, P: CurvePoint, prec: int):
    """Laurent expansion of ``phi`` at ``P`` from uniformizer expansions of order ``prec``.

    The denominator vanishes to order at most ``2 deg den`` at an affine
    point, so the expansion order is raised past that when needed.
    """
    if not P.is_infinity:
        prec = max(prec, 2 * phi.den.degree + 1)
    x, y = local_expansion(C, P, prec)
    num = series_compose_poly(phi.a, x) + series_compose_poly(phi.b, x) * y
    den = series_compose_poly(phi.den, x)
    return num * series_invert(den)


def order_at_infinity(C: HyperellipticCurve, phi: FunctionRep) -> int:
    """Exact pole/zero order at infinity (ord x = -2, ord y = -(2g+1))."""
    if phi.is_zero():
        raise ZeroFunction("the zero function has no order")
    d = 2 * C.genus + 1
    cands = []
    if not phi.a.is_zero():
        cands.append(-2 * phi.a.degree)
    if not phi.b.is_zero():
        cands.append(-2 * phi.b.degree - d)
    # the two candidates have different parity, so there is no cancellation
    return min(cands) + 2 * phi.den.degree


def _numerator_pole_bound(C: HyperellipticCurve, phi: FunctionRep) -> int:
    d = 2 * C.genus + 1
    m = 0
    if not phi.a.is_zero():
        m = max(m, 2 * phi.a.degree)
    if not phi.b.is_zero():
        m = max(m, 2 * phi.b.degree + d)
    return m


def function_order_at(
    C: HyperellipticCurve, phi: FunctionRep, P: CurvePoint, cap: int | None = None
) -> int:
    """Valuation of ``phi`` at ``P``.

    At affine points the precision is doubled until the numerator's leading
    term appears.  The default cap is the numerator's pole order at
    infinity, which bounds its order at any affine point; reaching the cap
    therefore signals an error, never a guess.
    """
    if phi.is_zero():
        raise ZeroFunction("the zero function has no order")
    if not C.contains(P):
        raise PointNotOnCurve(f"{P!r} is not on {C!r}")
    if P.is_infinity:
        return order_at_infinity(C, phi)
    if cap is None:
        cap = max(_numerator_pole_bound(C, phi), 2 * phi.den.degree) + 2
    prec = 4
    while True:
        x, y = local_expansion(C, P, prec)
        num = series_compose_poly(phi.a, x) + series_compose_poly(phi.b, x) * y
        if not num.is_zero():
            den = series_compose_poly(phi.den, x)
            if not den.is_zero():
                return num.valuation - den.valuation
        if prec >= cap:
            raise PrecisionExhausted(f"order of {phi!r} at {P!r} unresolved at precision {prec}")
        prec = min(2 * prec, max(cap, prec + 1))


def weierstrass_points_rational(C: HyperellipticCurve) -> list[CurvePoint]:
    """The rational Weierstrass points: (r, 0) for rational roots r of f, then infinity."""
    return [CurvePoint.affine(r, 0) for r in C.f.rational_roots()] + [INFINITY]


def rational_points_search(C: HyperellipticCurve, height: int = 6) -> list[CurvePoint]:
    """Affine rational points with x = u/v, |u| <= height, 1 <= v <= height."""
    from math import isqrt

    seen = set()
    out = []
    for v in range(1, height + 1):
        for u in range(-height, height + 1):
            x0 = Fraction(u, v)
            if x0 in seen:
                continue
            seen.add(x0)
            val = C.f(x0)
            if val < 0:
                continue
            n, d = val.numerator, val.denominator
            rn, rd = isqrt(n), isqrt(d)
            if rn * rn == n and rd * rd == d:
                y0 = Fraction(rn, rd)
                out.append(CurvePoint.affine(x0, y0))
                if y0:
                    out.append(CurvePoint.affine(x0, -y0))
    return sorted(out)


# ---------------------------------------------------------------------------
# JSON


PointLike = Union[CurvePoint, str, dict]


def curve_to_json(C: HyperellipticCurve) -> dict:
    return {"f": [str(a) for a in C.f.coeffs]}


def curve_from_json(obj) -> HyperellipticCurve:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        coeffs = obj["f"]
    except (TypeError, KeyError):
        raise InvalidCurve('curve JSON must be an object with key "f"') from None
    try:
        return HyperellipticCurve.from_coeffs(coeffs)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, InvalidCurve):
            raise
        raise InvalidCurve(f"bad coefficient list: {exc}") from None


def point_to_json(P: CurvePoint):
    if P.is_infinity:
        return "infinity"
    return {"x": str(P.x), "y": str(P.y)}


def point_from_json(obj, C: HyperellipticCurve | None = None) -> CurvePoint:
    if isinstance(obj, str) and obj.strip() != "infinity":
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError:
            raise PointNotOnCurve(f"cannot parse point {obj!r}") from None
    if obj == "infinity" or (isinstance(obj, str) and obj.strip() == "infinity"):
        P = INFINITY
    else:
        try:
            P = CurvePoint.affine(obj["x"], obj["y"])
        except (TypeError, KeyError, ValueError, ZeroDivisionError):
            raise PointNotOnCurve(f"cannot parse point {obj!r}") from None
    if C is not None and not C.contains(P):
        raise PointNotOnCurve(f"{P!r} is not on {C!r}")
    return P
