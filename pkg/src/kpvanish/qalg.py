"""Exact arithmetic over the rationals.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  On top of those this module provides dense univariate
polynomials, truncated Laurent series with explicit precision, and dense
matrices with exact rank/kernel computation.

Everything is immutable; operations return new objects.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import LeadingNotSquare, OddValuation, PrecisionTooSmall, SeriesError

Rat = Fraction
RatLike = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value: RatLike) -> Fraction:
    """Parse an int, a Fraction or a ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_str(value: Fraction) -> str:
    return str(value)


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class QPoly:
    """Dense polynomial in x; ``coeffs[i]`` multiplies x**i."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [rat(a) for a in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x(cls) -> "QPoly":
        return cls((ZERO, ONE))

    @classmethod
    def const(cls, c: RatLike) -> "QPoly":
        return cls((rat(c),))

    @classmethod
    def linear_power(cls, root: Fraction, e: int) -> "QPoly":
        """(x - root)**e."""
        p = cls((ONE,))
        lin = cls((-root, ONE))
        for _ in range(e):
            p = p * lin
        return p

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(tuple(self[i] + other[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return QPoly(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QPoly(tuple(a * other for a in self.coeffs))
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return QPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = QPoly((ONE,))
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, x):
        """Horner evaluation at a scalar (rational, float or complex)."""
        acc = 0 * x
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return QPoly(), self
        quo = [ZERO] * dq
        lead = other.lead
        for k in range(dq - 1, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return QPoly(tuple(quo)), QPoly(tuple(rem))

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        return self * (ONE / self.lead)

    def shift(self, x0: Fraction) -> "QPoly":
        """Taylor shift: the polynomial p(x0 + X) in X."""
        out = QPoly()
        for a in reversed(self.coeffs):
            out = out * QPoly((x0, ONE)) + a
        return out

    def rational_roots(self) -> list[Fraction]:
        """All distinct rational roots (rational root theorem)."""
        if self.is_zero():
            raise ValueError("zero polynomial has every root")
        c = list(self.coeffs)
        roots = []
        while c and c[0] == 0:
            c.pop(0)
            if ZERO not in roots:
                roots.append(ZERO)
        if len(c) <= 1:
            return sorted(roots)
        prim = _primitive_integer(c)
        a0, an = abs(prim[0]), abs(prim[-1])
        p = QPoly(tuple(Fraction(v) for v in prim))
        for u in _divisors(a0):
            for v in _divisors(an):
                for cand in (Fraction(u, v), Fraction(-u, v)):
                    if cand not in roots and p(cand) == 0:
                        roots.append(cand)
        return sorted(roots)

    def __repr__(self):
        if self.is_zero():
            return "QPoly(0)"
        terms = [f"{a}*x^{i}" for i, a in enumerate(self.coeffs) if a]
        return "QPoly(" + " + ".join(terms) + ")"


def _as_poly(v) -> QPoly:
    if isinstance(v, QPoly):
        return v
    return QPoly((rat(v),))


def _primitive_integer(c: Sequence[Fraction]) -> list[int]:
    from math import gcd, lcm

    den = 1
    for a in c:
        den = lcm(den, a.denominator)
    ints = [int(a * den) for a in c]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def poly_derivative(p: QPoly) -> QPoly:
    return QPoly(tuple(i * a for i, a in enumerate(p.coeffs))[1:])


def poly_gcd(p: QPoly, q: QPoly) -> QPoly:
    """Monic gcd (zero if both are zero)."""
    while not q.is_zero():
        p, q = q, p.divmod(q)[1]
    return p.monic()


def poly_eval(p: QPoly, x):
    return p(x)


# ---------------------------------------------------------------------------
# truncated Laurent series


@dataclass(frozen=True)
class QLaurent:
    """Truncated Laurent series ``sum c_k t^(valuation+k) + O(t^precision)``.

    Nonzero series are normalized so that ``coeffs[0] != 0`` and
    ``len(coeffs) == precision - valuation``.  A series that is zero to the
    known precision has empty ``coeffs`` and ``valuation == precision``;
    this is the one case where the two coincide.
    """

    valuation: int
    coeffs: tuple[Fraction, ...]
    precision: int

    @classmethod
    def make(cls, valuation: int, coeffs: Iterable, precision: int) -> "QLaurent":
        c = [rat(a) for a in coeffs]
        c = c[: max(precision - valuation, 0)]
        c += [ZERO] * (precision - valuation - len(c))
        k = 0
        while k < len(c) and c[k] == 0:
            k += 1
        if k == len(c):
            return cls(precision, (), precision)
        return cls(valuation + k, tuple(c[k:]), precision)

    @classmethod
    def zero(cls, precision: int) -> "QLaurent":
        return cls(precision, (), precision)

    @classmethod
    def const(cls, c: RatLike, precision: int) -> "QLaurent":
        return cls.make(0, [rat(c)], precision)

    @classmethod
    def monomial(cls, c: RatLike, exponent: int, precision: int) -> "QLaurent":
        return cls.make(exponent, [rat(c)], precision)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def relative_precision(self) -> int:
        return self.precision - self.valuation

    @property
    def lead(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else ZERO

    def coeff(self, k: int) -> Fraction:
        if k >= self.precision:
            raise SeriesError(f"coefficient t^{k} beyond precision {self.precision}")
        i = k - self.valuation
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def coefficients(self, start: int, stop: int) -> list[Fraction]:
        return [self.coeff(k) for k in range(start, stop)]

    def truncate(self, precision: int) -> "QLaurent":
        if precision > self.precision:
            raise SeriesError("cannot raise precision by truncation")
        return QLaurent.make(self.valuation, self.coeffs, precision)

    def shift(self, k: int) -> "QLaurent":
        """Multiply by t**k."""
        return QLaurent(self.valuation + k, self.coeffs, self.precision + k)

    def __neg__(self):
        return QLaurent(self.valuation, tuple(-a for a in self.coeffs), self.precision)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QLaurent.const(other, max(self.precision, 1))
        prec = min(self.precision, other.precision)
        val = min(self.valuation, other.valuation, prec)
        return QLaurent.make(
            val, [self._c(k) + other._c(k) for k in range(val, prec)], prec
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _c(self, k):
        i = k - self.valuation
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def scale(self, c: RatLike) -> "QLaurent":
        c = rat(c)
        if c == 0:
            return QLaurent.zero(self.precision)
        return QLaurent(self.valuation, tuple(a * c for a in self.coeffs), self.precision)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        val = self.valuation + other.valuation
        prec = min(self.valuation + other.precision, other.valuation + self.precision)
        if self.is_zero() or other.is_zero():
            return QLaurent.zero(prec)
        n = prec - val
        a, b = self.coeffs, other.coeffs
        out = [ZERO] * n
        for i in range(min(n, len(a))):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(min(n - i, len(b))):
                out[i + j] += ai * b[j]
        return QLaurent.make(val, out, prec)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return series_invert(self) ** (-e)
        out = QLaurent.const(1, self.relative_precision)
        for _ in range(e):
            out = out * self
        return out

    def derivative(self) -> "QLaurent":
        v = self.valuation
        return QLaurent.make(
            v - 1, [(v + i) * a for i, a in enumerate(self.coeffs)], self.precision - 1
        )

    def __repr__(self):
        terms = [f"{a}*t^{self.valuation + i}" for i, a in enumerate(self.coeffs) if a]
        body = " + ".join(terms) if terms else "0"
        return f"QLaurent({body} + O(t^{self.precision}))"


def series_mul(s: QLaurent, t: QLaurent) -> QLaurent:
    return s * t


def series_invert(s: QLaurent) -> QLaurent:
    """Multiplicative inverse; relative precision is preserved."""
    if s.is_zero():
        raise ZeroDivisionError("series is zero to its precision")
    c = s.coeffs
    n = len(c)
    inv0 = ONE / c[0]
    d = [inv0]
    for k in range(1, n):
        acc = ZERO
        for j in range(1, min(k, n - 1) + 1):
            acc += c[j] * d[k - j]
        d.append(-acc * inv0)
    return QLaurent.make(-s.valuation, d, -s.valuation + n)


def series_sqrt(s: QLaurent, root0: RatLike) -> QLaurent:
    """Square root with prescribed leading coefficient ``root0``."""
    root0 = rat(root0)
    if root0 == 0:
        raise LeadingNotSquare("root0 must be nonzero")
    if s.is_zero():
        raise LeadingNotSquare("series is zero to its precision")
    if s.valuation % 2:
        raise OddValuation(f"valuation {s.valuation} is odd")
    c = s.coeffs
    if c[0] != root0 * root0:
        raise LeadingNotSquare(f"leading coefficient {c[0]} != {root0}^2")
    n = len(c)
    r = [root0]
    two_r0 = 2 * root0
    for k in range(1, n):
        acc = c[k]
        for j in range(1, k):
            acc -= r[j] * r[k - j]
        r.append(acc / two_r0)
    v = s.valuation // 2
    return QLaurent.make(v, r, v + n)


def series_compose_poly(p: QPoly, s: QLaurent) -> QLaurent:
    """p(s(t)) as a series; exact polynomial coefficients."""
    if p.is_zero():
        return QLaurent.zero(s.precision)
    if p.degree == 0:
        return QLaurent.const(p[0], max(s.precision, 1))
    powers = [None, s]
    for _ in range(2, p.degree + 1):
        powers.append(powers[-1] * s)
    terms = [powers[i].scale(a) for i, a in enumerate(p.coeffs) if i and a]
    prec = min(t.precision for t in terms) if terms else s.precision
    out = QLaurent.const(p[0], max(prec, 1)) if p[0] else QLaurent.zero(prec)
    for t in terms:
        out = out + t
    return out


def series_revert(b: Sequence[Fraction], n_terms: int) -> list[Fraction]:
    """Invert s = b1 X + b2 X^2 + ... for X = d1 s + d2 s^2 + ...

    ``b[k]`` is the coefficient of X**k (``b[0]`` must vanish, ``b[1]``
    must not).  Returns ``[0, d1, ..., d_{n_terms-1}]`` exact to that order.
    """
    if b[0] != 0 or b[1] == 0:
        raise SeriesError("reversion needs b0 = 0 and b1 != 0")
    if n_terms < 2:
        raise PrecisionTooSmall("need at least two terms")
    prec = n_terms
    s = QLaurent.make(1, [ONE], prec)
    inv_b1 = ONE / b[1]
    X = s.scale(inv_b1)
    higher = QPoly(tuple([ZERO, ZERO] + list(b[2:])))
    for _ in range(n_terms):
        X = (s - series_compose_poly(higher, X)).scale(inv_b1)
    return [X.coeff(k) for k in range(n_terms)]


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class QMatrix:
    """Dense row-major rational matrix."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must be rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RatLike]], cols: int | None = None):
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(rat(a) for r in rows for a in r))

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def apply(self, v: Sequence[Fraction]) -> list[Fraction]:
        return [sum((a * b for a, b in zip(self.row(i), v)), ZERO) for i in range(self.rows)]


def _rref(M: QMatrix) -> tuple[list[list[Fraction]], list[int]]:
    A = M.to_rows()
    pivots = []
    r = 0
    for c in range(M.cols):
        p = next((i for i in range(r, M.rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = ONE / A[r][c]
        A[r] = [a * inv for a in A[r]]
        for i in range(M.rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                Ar = A[r]
                A[i] = [a - f * b for a, b in zip(A[i], Ar)]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return A, pivots


def rank(M: QMatrix) -> int:
    return len(_rref(M)[1])


def kernel_basis(M: QMatrix) -> list[list[Fraction]]:
    """Basis of the right null space, one vector per free column."""
    if M.rows == 0:
        return [[ONE if i == j else ZERO for i in range(M.cols)] for j in range(M.cols)]
    A, pivots = _rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [ZERO] * M.cols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -A[r][fc]
        basis.append(v)
    return basis
