from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kpvanish.curve import (
    INFINITY,
    CurvePoint,
    FunctionRep,
    HyperellipticCurve,
    curve_from_json,
    curve_to_json,
    function_order_at,
    local_expansion,
    order_at_infinity,
    point_from_json,
    point_to_json,
    rational_points_search,
    weierstrass_points_rational,
)
from kpvanish.errors import InvalidCurve, PointNotOnCurve, PrecisionTooSmall, ZeroFunction
from kpvanish.instances import SMALL_POINTS, SPLIT, WORKED
from kpvanish.qalg import QPoly, series_compose_poly

CURVES = [
    WORKED,
    SPLIT,
    SMALL_POINTS,
    HyperellipticCurve.from_coeffs([1, 0, 0, 1]),
    HyperellipticCurve.from_coeffs([4, 1, 0, -2, 0, 0, 0, 3]),  # non-monic genus 3
    HyperellipticCurve.from_coeffs([0, 2, 0, 0, 0, -3]),  # negative leading coefficient
]


def all_points(C):
    return rational_points_search(C, height=4) + [INFINITY]


def test_invalid_curves():
    with pytest.raises(InvalidCurve):
        HyperellipticCurve.from_coeffs([1, 0, 1])
    with pytest.raises(InvalidCurve):
        HyperellipticCurve.from_coeffs([0, 0, 1, 1])  # x^2 (x + 1)
    with pytest.raises(InvalidCurve):
        curve_from_json({"g": []})


def test_genus_and_points():
    assert WORKED.genus == 2
    assert weierstrass_points_rational(SPLIT)[-1] == INFINITY
    assert len(weierstrass_points_rational(SPLIT)) == 6
    pts = rational_points_search(SMALL_POINTS, height=2)
    assert {(P.x, P.y) for P in pts} >= {(0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert all(SMALL_POINTS.contains(P) for P in pts)


def test_json_roundtrip():
    for C in CURVES:
        assert curve_from_json(curve_to_json(C)) == C
    P = CurvePoint.affine("1/2", -3)
    assert point_from_json(point_to_json(P)) == P
    assert point_from_json("infinity") == INFINITY
    with pytest.raises(PointNotOnCurve):
        point_from_json({"x": "2", "y": "2"}, WORKED)


def test_expansion_at_infinity_worked():
    x, y = local_expansion(WORKED, INFINITY, 11)
    assert x.valuation == -2 and x.coeffs[0] == 1
    # y = t^-5 (1 - t^10 / 2 + ...)
    assert y.valuation == -5
    assert y.coeff(-5) == 1 and y.coeff(5) == Fraction(-1, 2)
    assert all(y.coeff(k) == 0 for k in range(-4, 5))


def test_expansion_weierstrass():
    C = HyperellipticCurve.from_coeffs([0, -1, 0, 1])
    x, y = local_expansion(C, CurvePoint.affine(0, 0), 8)
    # t^2 = x^3 - x  =>  x = -t^2 - t^6 - ...
    assert x.coefficients(0, 8) == [0, 0, -1, 0, 0, 0, -1, 0]


@pytest.mark.parametrize("C", CURVES)
def test_expansions_satisfy_equation(C):
    for P in all_points(C):
        x, y = local_expansion(C, P, 12)
        assert (y * y - series_compose_poly(C.f, x)).is_zero()


def test_precision_too_small():
    with pytest.raises(PrecisionTooSmall):
        local_expansion(WORKED, INFINITY, 0)


# --- orders: the norm N = a^2 - b^2 f of (a + b y) is an independent oracle


def norm(C, phi):
    return phi.a * phi.a - phi.b * phi.b * C.f


def mult(p: QPoly, x0) -> int:
    k = 0
    while not p.is_zero() and p(x0) == 0:
        p = p.divmod(QPoly((-x0, Fraction(1))))[0]
        k += 1
    return k


coef = st.integers(-3, 3).map(Fraction)
reps = st.builds(
    lambda a, b: FunctionRep(QPoly(tuple(a)), QPoly(tuple(b))),
    st.lists(coef, max_size=4),
    st.lists(coef, max_size=3),
).filter(lambda phi: not phi.is_zero())


@given(reps, st.sampled_from(CURVES))
def test_order_at_infinity_matches_norm(phi, C):
    assert order_at_infinity(C, phi) == -norm(C, phi).degree


@given(reps, st.sampled_from(CURVES))
def test_conjugate_orders_sum_to_norm_multiplicity(phi, C):
    N = norm(C, phi)
    for P in rational_points_search(C, height=3):
        if P.y == 0:
            # ord_P (x - x0) = 2, so ord_P(phi) = mult
            assert function_order_at(C, phi, P) == mult(N, P.x)
        elif P.y > 0:
            total = function_order_at(C, phi, P) + function_order_at(C, phi, P.conjugate())
            assert total == mult(N, P.x)


def test_order_examples():
    C = SPLIT
    y = FunctionRep(QPoly(()), QPoly((Fraction(1),)))
    x = FunctionRep(QPoly((0, 1)), QPoly(()))
    assert function_order_at(C, y, CurvePoint.affine(0, 0)) == 1
    assert function_order_at(C, x, CurvePoint.affine(0, 0)) == 2
    assert function_order_at(C, x, INFINITY) == -2
    assert function_order_at(C, y, INFINITY) == -5
    with_den = FunctionRep(QPoly((1,)), QPoly(()), QPoly((-1, 1)))  # 1/(x - 1)
    assert function_order_at(C, with_den, CurvePoint.affine(1, 0)) == -2
    with pytest.raises(ZeroFunction):
        function_order_at(C, FunctionRep(QPoly(()), QPoly(())), INFINITY)
