"""Gap sequences, inflectionary weights and the exact order of vanishing.

For a degree g-1 bundle ``lam`` and a point ``p`` the order of vanishing
of theta at ``lam`` in the direction tangent to ``q -> lam(q - p)`` is
computed three ways, each from a different scan of h0 values:

* ``order_sw``: the sum of ``i - s_i`` over ``S = {s : h0(lam((s+1)p)) =
  h0(lam(sp)) + 1}``;
* ``order_gap``: the inflectionary weight of ``p`` for ``lam(np)``;
* ``order_thm41``: ``sum (m - g + h0(lam((g-m)p)))`` over the gap numbers
  ``m`` of ``lam(gp)``.

``order_report`` runs all three and treats disagreement as a fatal bug.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .curve import CurvePoint, HyperellipticCurve, function_series
from .errors import DegreeMismatch, FormulaMismatch, ImproperIntersection, PrecisionExhausted
from .qalg import QLaurent
from .rrspace import Divisor, h0, iota, rr_space_basis


@dataclass(frozen=True)
class GapSequence:
    gaps: tuple[int, ...]
    bundle_degree: int

    @property
    def weight(self) -> int:
        return sum(m - i for i, m in enumerate(self.gaps, start=1))


@dataclass(frozen=True)
class SWSet:
    """Elements of S inside the scanned window; every n >= stable_from lies in S."""

    values: tuple[int, ...]
    stable_from: int

    @property
    def prefix(self) -> tuple[int, ...]:
        return tuple(s for s in self.values if s < self.stable_from)


@dataclass(frozen=True)
class OrderReport:
    order_sw: int
    order_gap: int
    order_thm41: int
    n_used: int
    gap_seq: GapSequence
    sw_set: SWSet
    bijection: tuple[tuple[int, int, int], ...] = field(default=())

    @property
    def order(self) -> int:
        return self.order_sw

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "gap_sequence": list(self.gap_seq.gaps),
            "sw_prefix": list(self.sw_set.prefix),
            "n_used": self.n_used,
            "formulas": {"sw": self.order_sw, "gap": self.order_gap, "thm41": self.order_thm41},
        }


def _h0_many(C, divisors: Sequence[Divisor], threads: int = 1) -> list[int]:
    if threads > 1 and len(divisors) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda D: h0(C, D), divisors))
    return [h0(C, D) for D in divisors]


def _require_theta_degree(C: HyperellipticCurve, lam: Divisor) -> None:
    if lam.degree != C.genus - 1:
        raise DegreeMismatch(f"deg = {lam.degree}, expected g - 1 = {C.genus - 1}")


# ---------------------------------------------------------------------------
# gap sequences and weights


def gap_sequence(C: HyperellipticCurve, D: Divisor, q: CurvePoint, threads: int = 1) -> GapSequence:
    """Gap numbers m: h0(D - mq) = h0(D - (m-1)q) - 1, for m = 1 .. deg D + 1."""
    top = max(D.degree + 1, 0)
    hs = _h0_many(C, [D.plus(q, -m) for m in range(top + 1)], threads)
    gaps = tuple(m for m in range(1, top + 1) if hs[m] == hs[m - 1] - 1)
    if len(gaps) != hs[0]:
        raise FormulaMismatch(
            f"{len(gaps)} gaps but h0 = {hs[0]}", {"h0_trace": hs, "divisor": repr(D)}
        )
    return GapSequence(gaps, D.degree)


def inflectionary_weight(C: HyperellipticCurve, D: Divisor, q: CurvePoint) -> int:
    return gap_sequence(C, D, q).weight


def _wronskian_det(M: list[list[QLaurent]]) -> QLaurent:
    """Determinant of a square matrix of series by dynamic programming over column subsets."""
    n = len(M)
    prec = min(e.precision for row in M for e in row)
    dp = {0: QLaurent.const(1, prec)}
    for r in range(n):
        nxt: dict[int, QLaurent] = {}
        for S, val in dp.items():
            for j in range(n):
                if S >> j & 1:
                    continue
                # sign of placing column j after the columns already in S
                sign = -1 if bin(S >> (j + 1)).count("1") % 2 else 1
                term = M[r][j] * val
                if sign < 0:
                    term = -term
                T = S | (1 << j)
                nxt[T] = nxt[T] + term if T in nxt else term
        dp = nxt
    return dp[(1 << n) - 1]


def wronskian_order_at(
    C: HyperellipticCurve, D: Divisor, q: CurvePoint, prec: int = 8
) -> int:
    """Order at ``q`` of the Wronskian of a basis of L(D), trivialized by ``t^D(q)``.

    Precision is doubled until the determinant's leading term is resolved.
    The cap is the degree of L^n (x) K^(n(n-1)/2), an upper bound for the
    order of a nonzero Wronskian at any single point.
    """
    basis = rr_space_basis(C, D).basis
    n = len(basis)
    if n == 0:
        raise ValueError("h0(D) = 0: the Wronskian is undefined")
    g = C.genus
    cap = n * D.degree + n * (n - 1) * (g - 1) + n + 2
    shift = D[q]
    P = max(prec, n)
    while True:
        series = []
        for phi in basis:
            s = _trivialized_series(C, phi, q, shift, P)
            series.append(s)
        rows = [series]
        for _ in range(1, n):
            rows.append([s.derivative() for s in rows[-1]])
        W = _wronskian_det(rows)
        if not W.is_zero():
            return W.valuation
        if P > cap:
            raise PrecisionExhausted(f"Wronskian at {q!r} still zero to O(t^{W.precision})")
        P *= 2


def _trivialized_series(C, phi, q, shift, P):
    """phi * t^shift to absolute precision >= P (relative escalation)."""
    k = P
    while True:
        s = function_series(C, phi, q, k).shift(shift)
        if s.precision >= P:
            return s.truncate(P)
        k += P - s.precision


# ---------------------------------------------------------------------------
# proper intersection and the Segal-Wilson set


def proper_intersection(C: HyperellipticCurve, lam: Divisor, p: CurvePoint, n: int) -> bool:
    """Whether q -> lam(nq - np) meets Theta properly: h0(lam(-np)) = 0 for n > 0,
    h0(iota(lam)(-|n|p)) = 0 for n < 0."""
    _require_theta_degree(C, lam)
    if n == 0:
        raise ValueError("n must be nonzero")
    if n > 0:
        return h0(C, lam.plus(p, -n)) == 0
    return h0(C, iota(C, lam).plus(p, n)) == 0


def sw_set(C: HyperellipticCurve, lam: Divisor, p: CurvePoint, threads: int = 1) -> SWSet:
    _require_theta_degree(C, lam)
    g = C.genus
    window = range(-g - 1, g + 2)
    hs = dict(zip(window, _h0_many(C, [lam.plus(p, s) for s in window], threads)))
    for s in range(-g - 1, g + 1):
        if hs[s + 1] - hs[s] not in (0, 1):
            raise FormulaMismatch("h0 jumped by more than one", {"h0": hs})
    # deg >= 2g - 1 is the nonspecial range: h0 = deg - g + 1 = s
    if hs[g] != g or hs[g + 1] != g + 1 or hs[-g] != 0:
        raise FormulaMismatch("h0 outside the Riemann-Roch regime", {"h0": hs})
    S = [s for s in range(-g - 1, g + 1) if hs[s + 1] == hs[s] + 1]
    stable = g
    while stable - 1 in S:
        stable -= 1
    return SWSet(tuple(S), stable)


# ---------------------------------------------------------------------------
# the three formulas


def order_sw(C: HyperellipticCurve, lam: Divisor, p: CurvePoint, threads: int = 1) -> int:
    S = sw_set(C, lam, p, threads)
    prefix = S.prefix
    if len(prefix) != S.stable_from:
        raise FormulaMismatch("S index misaligned", {"S": S.values, "stable_from": S.stable_from})
    return sum(i - s for i, s in enumerate(prefix))


def order_gap(
    C: HyperellipticCurve, lam: Divisor, p: CurvePoint, n: int | None = None, threads: int = 1
) -> int:
    """Inflectionary weight of p for lam(np); n defaults to g."""
    if n is None:
        n = C.genus
    if n <= 0 or not proper_intersection(C, lam, p, -n):
        raise ImproperIntersection(f"h0(iota(lam)(-{n}p)) != 0")
    return gap_sequence(C, lam.plus(p, n), p, threads).weight


def _thm41_terms(C, lam, p, threads=1):
    g = C.genus
    ms = range(0, 2 * g + 1)
    hs = dict(zip(ms, _h0_many(C, [lam.plus(p, g - m) for m in ms], threads)))
    terms = [(m, m - g + hs[m]) for m in range(1, 2 * g + 1) if hs[m] == hs[m - 1] - 1]
    if len(terms) != g:
        raise FormulaMismatch(f"{len(terms)} gap numbers, expected g", {"h0": hs})
    return terms, hs


def order_thm41(C: HyperellipticCurve, lam: Divisor, p: CurvePoint, threads: int = 1) -> int:
    _require_theta_degree(C, lam)
    terms, _ = _thm41_terms(C, lam, p, threads)
    return sum(t for _, t in terms)


def order_report(
    C: HyperellipticCurve, lam: Divisor, p: CurvePoint, n: int | None = None, threads: int = 1
) -> OrderReport:
    _require_theta_degree(C, lam)
    g = C.genus
    n_used = g if n is None else n
    S = sw_set(C, lam, p, threads)
    o_sw = order_sw(C, lam, p, threads)
    o_gap = order_gap(C, lam, p, n_used, threads)
    o_41 = order_thm41(C, lam, p, threads)
    gseq = gap_sequence(C, lam.plus(p, n_used), p, threads)
    gaps_g = gap_sequence(C, lam.plus(p, g), p, threads).gaps
    trace = {
        "S": S.values,
        "stable_from": S.stable_from,
        "gaps_lam_gp": gaps_g,
        "orders": (o_sw, o_gap, o_41),
    }
    if not (o_sw == o_gap == o_41):
        raise FormulaMismatch(f"orders disagree: sw={o_sw} gap={o_gap} thm41={o_41}", trace)
    # s_i = g - m_{g-i}, i = 0..g-1 (m is 1-indexed)
    bij = tuple((i, S.values[i], gaps_g[g - i - 1]) for i in range(g))
    if any(s != g - m for _, s, m in bij):
        raise FormulaMismatch("index bijection s_i = g - m_(g-i) fails", trace)
    return OrderReport(o_sw, o_gap, o_41, n_used, gseq, S, bij)


def report_asdict(report: OrderReport) -> dict:
    return asdict(report)
