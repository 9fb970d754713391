from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from kpvanish.errors import LeadingNotSquare, OddValuation, SeriesError
from kpvanish.qalg import (
    QLaurent,
    QMatrix,
    QPoly,
    kernel_basis,
    poly_derivative,
    poly_eval,
    poly_gcd,
    rank,
    rat,
    rat_str,
    series_compose_poly,
    series_invert,
    series_revert,
    series_sqrt,
)

X = sympy.Symbol("x")
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.lists(small, min_size=0, max_size=6).map(lambda c: QPoly(tuple(c)))


def to_sympy(p: QPoly):
    return sum(sympy.Rational(a.numerator, a.denominator) * X**i for i, a in enumerate(p.coeffs))


def P(*c):
    return QPoly(tuple(rat(a) for a in c))


def test_rat_parsing():
    assert rat("3/6") == Fraction(1, 2)
    assert rat(-4) == -4
    assert rat_str(Fraction(-3, 4)) == "-3/4"
    with pytest.raises((ValueError, TypeError)):
        rat(0.5)


# --- polynomials: examples against sympy ---------------------------------


@pytest.mark.parametrize(
    "p, q",
    [
        (P(-1, 0, 1), P(1, 1)),  # x^2 - 1, x + 1
        (P(0, 0, 1, 1), P(0, 1, 2, 1)),  # x^2(x+1), x(x+1)^2
        (P(2, 0, 1), P(1, 1)),  # coprime
        (P(-6, 11, -6, 1), P(2, -3, 1)),  # (x-1)(x-2)(x-3), (x-1)(x-2)
    ],
)
def test_gcd_matches_sympy(p, q):
    want = sympy.Poly(sympy.gcd(to_sympy(p), to_sympy(q)), X, domain="QQ").monic()
    assert sympy.Poly(to_sympy(poly_gcd(p, q)), X, domain="QQ") == want


@pytest.mark.parametrize("p", [P(1, 2, 3), P(0, 0, 0, 0, 5), P(-1, "1/2", "3/7", 0, 1)])
def test_derivative_matches_sympy(p):
    assert sympy.expand(to_sympy(poly_derivative(p)) - sympy.diff(to_sympy(p), X)) == 0


@pytest.mark.parametrize("p, x0", [(P(-1, 0, 0, 0, 0, 1), 2), (P(1, -1, 0, 1), "-1/3"), (P(7), 100)])
def test_eval_matches_sympy(p, x0):
    x0 = rat(x0)
    want = to_sympy(p).subs(X, sympy.Rational(x0.numerator, x0.denominator))
    assert poly_eval(p, x0) == Fraction(int(sympy.numer(want)), int(sympy.denom(want)))


def test_rational_roots():
    assert sorted(P(0, 4, 0, -5, 0, 1).rational_roots()) == [-2, -1, 0, 1, 2]
    assert P(-1, 0, 0, 0, 0, 1).rational_roots() == [1]
    assert P(-2, 0, 1).rational_roots() == []
    assert P(-1, 0, 4).rational_roots() == [Fraction(-1, 2), Fraction(1, 2)]


@given(polys, polys)
def test_divmod_identity(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys, polys, small)
def test_ring_laws(a, b, x0):
    assert (a * b)(x0) == a(x0) * b(x0)
    assert (a + b)(x0) == a(x0) + b(x0)
    assert (a - a).is_zero()


@given(polys, small)
def test_taylor_shift(p, x0):
    s = p.shift(x0)
    for t in (Fraction(0), Fraction(1), Fraction(-2, 3)):
        assert s(t) == p(x0 + t)


# --- series ---------------------------------------------------------------


@pytest.mark.parametrize(
    "coeffs, val",
    [([1, -1], 0), ([2, 0, 3, 1], -1), (["1/2", 1, 0, 0, 5], 2)],
)
def test_invert_matches_sympy(coeffs, val):
    prec = val + len(coeffs) + 3
    s = QLaurent.make(val, coeffs + [0, 0, 0], prec)
    inv = series_invert(s)
    expr = sum(sympy.Rational(str(rat(c))) * X ** (val + i) for i, c in enumerate(coeffs))
    n = inv.precision
    want = sympy.series(1 / expr, X, 0, n).removeO()
    for k in range(inv.valuation, n):
        c = sympy.Rational(str(inv.coeff(k)))
        assert c == want.coeff(X, k)


series_st = st.builds(
    lambda v, c, extra: QLaurent.make(v, c, v + len(c) + extra),
    st.integers(-3, 3),
    st.lists(small, min_size=1, max_size=6).filter(lambda c: c[0] != 0),
    st.integers(0, 2),
)


@given(series_st)
def test_invert_roundtrip(s):
    one = s * series_invert(s)
    assert one.valuation == 0
    assert one.coeffs[0] == 1 and all(a == 0 for a in one.coeffs[1:])
    assert series_invert(s).relative_precision == s.relative_precision


@given(series_st)
def test_sqrt_squares_back(s):
    sq = s * s
    r = series_sqrt(sq, s.lead)
    assert r.relative_precision == sq.relative_precision
    assert (r * r - sq).is_zero()


def test_sqrt_errors():
    with pytest.raises(OddValuation):
        series_sqrt(QLaurent.make(1, [1, 2], 5), 1)
    with pytest.raises(LeadingNotSquare):
        series_sqrt(QLaurent.make(0, [2, 2], 5), 1)


def test_coefficient_beyond_precision():
    s = QLaurent.make(0, [1, 2], 2)
    with pytest.raises(SeriesError):
        s.coeff(2)
    z = QLaurent.zero(4)
    assert z.is_zero() and z.precision == 4


@given(polys, series_st)
def test_compose_poly_is_evaluation(p, s):
    lhs = series_compose_poly(p, s)
    rhs = QLaurent.const(0, lhs.precision)
    for a in reversed(p.coeffs):
        rhs = rhs * s + a
    assert (lhs - rhs).is_zero()


def test_revert():
    # s = X + X^2  ->  X = s - s^2 + 2 s^3 - 5 s^4 + 14 s^5 (Catalan numbers)
    assert series_revert([0, 1, 1], 6) == [0, 1, -1, 2, -5, 14]


@given(st.lists(small, min_size=3, max_size=5).filter(lambda b: b[0] != 0))
def test_revert_composes_to_identity(tail):
    b = [Fraction(0)] + tail
    d = series_revert(b, 6)
    X = QLaurent.make(0, d, 6)
    lhs = series_compose_poly(QPoly(tuple(b)), X)
    assert lhs.coefficients(0, 6) == [0, 1, 0, 0, 0, 0]


# --- matrices -------------------------------------------------------------


int_matrix = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


@given(int_matrix)
def test_rank_matches_sympy(rows):
    M = QMatrix.from_rows(rows)
    assert rank(M) == sympy.Matrix(rows).rank()


@given(int_matrix)
def test_kernel_is_kernel(rows):
    M = QMatrix.from_rows(rows)
    K = kernel_basis(M)
    assert len(K) == M.cols - rank(M)
    for v in K:
        assert all(a == 0 for a in M.apply(v))
    if K:
        assert rank(QMatrix.from_rows(K)) == len(K)


def test_kernel_examples():
    assert kernel_basis(QMatrix.from_rows([[1, 1]])) == [[-1, 1]]
    assert kernel_basis(QMatrix.identity(3)) == []
    assert len(kernel_basis(QMatrix.zeros(0, 3))) == 3
