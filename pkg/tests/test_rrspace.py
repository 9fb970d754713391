import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kpvanish.curve import INFINITY, CurvePoint, HyperellipticCurve, function_order_at, rational_points_search
from kpvanish.errors import InputError, UnsupportedPoint
from kpvanish.instances import SMALL_POINTS, SPLIT, WORKED, random_curve
from kpvanish.rrspace import (
    Divisor,
    canonical_divisor,
    divisor_from_json,
    divisor_to_json,
    h0,
    h0_audit,
    iota,
    rr_identity_check,
    rr_space_basis,
)

CURVES = [WORKED, SPLIT, SMALL_POINTS, HyperellipticCurve.from_coeffs([4, 1, 0, -2, 0, 0, 0, 3])]


def semigroup_h0(g: int, m: int) -> int:
    """Pole orders at infinity are 2i and 2j + 2g + 1."""
    if m < 0:
        return 0
    evens = m // 2 + 1
    odds = (m - 2 * g - 1) // 2 + 1 if m >= 2 * g + 1 else 0
    return evens + odds


@pytest.mark.parametrize("C", CURVES)
def test_h0_at_infinity_semigroup(C):
    g = C.genus
    for m in range(-2, 4 * g + 3):
        assert h0(C, Divisor.point(INFINITY, m)) == semigroup_h0(g, m)


def test_known_spaces():
    assert h0(WORKED, Divisor.zero()) == 1
    assert h0(WORKED, canonical_divisor(WORKED)) == 2
    basis = rr_space_basis(WORKED, Divisor.point(INFINITY, 5)).basis
    assert len(basis) == 4  # 1, x, x^2, y
    W = CurvePoint.affine(1, 0)
    assert h0(WORKED, Divisor.point(W, 2)) == 2  # 1 and 1/(x - 1)
    assert h0(WORKED, Divisor.point(W, 1)) == 1


def check_basis(C, D):
    basis = rr_space_basis(C, D).basis
    pts = set(rational_points_search(C, height=3)) | set(D.support) | {INFINITY}
    for phi in basis:
        for P in pts:
            assert function_order_at(C, phi, P) >= -D[P]
    return basis


@pytest.mark.parametrize("C", CURVES)
def test_basis_elements_lie_in_space(C):
    rng = random.Random(hash(C.f.coeffs) % 1000)
    pts = rational_points_search(C, height=3) + [INFINITY]
    for _ in range(8):
        D = Divisor(tuple((rng.choice(pts), rng.randint(-2, 4)) for _ in range(3)))
        check_basis(C, D)


def random_divisors(C, pts):
    return st.lists(
        st.tuples(st.sampled_from(pts), st.integers(-3, 5)), max_size=4
    ).map(lambda items: Divisor(tuple(items)))


@given(st.data())
def test_riemann_roch_and_monotonicity(data):
    C = data.draw(st.sampled_from(CURVES))
    pts = rational_points_search(C, height=3) + [INFINITY]
    D = data.draw(random_divisors(C, pts))
    assert rr_identity_check(C, D)
    P = data.draw(st.sampled_from(pts))
    assert h0(C, D) <= h0(C, D.plus(P, 1)) <= h0(C, D) + 1
    assert h0(C, D) == h0(C, iota(C, iota(C, D)))


def test_riemann_roch_random_curves():
    rng = random.Random(2)
    for g in (2, 3, 4):
        C, pts = random_curve(rng, g)
        for _ in range(10):
            D = Divisor(tuple((rng.choice(pts + [INFINITY]), rng.randint(-3, 5)) for _ in range(4)))
            assert rr_identity_check(C, D)


def test_principal_divisor_class():
    # div(x) = 2 (0,0) - 2 infinity on SPLIT: h0 is a class invariant
    O = CurvePoint.affine(0, 0)
    for m in range(-1, 6):
        D = Divisor.point(INFINITY, m)
        assert h0(SPLIT, D) == h0(SPLIT, D + Divisor.point(O, 2) - Divisor.point(INFINITY, 2))


def test_divisor_algebra():
    P = CurvePoint.affine(0, 1)
    D = Divisor.point(P, 2) + Divisor.point(INFINITY, -1)
    assert D.degree == 1 and D[P] == 2 and D[INFINITY] == -1
    assert (D - D) == Divisor.zero()
    assert 2 * D == D + D
    assert not D.is_effective() and Divisor.point(P).is_effective()
    assert Divisor(((P, 1), (P, -1))).items == ()
    with pytest.raises(InputError):
        Divisor(((P, 1.5),))


def test_unsupported_point():
    with pytest.raises(UnsupportedPoint):
        h0(WORKED, Divisor.point(CurvePoint.affine(0, 1)))


def test_json_roundtrip():
    D = Divisor.point(CurvePoint.affine(0, 1), 2) + Divisor.point(INFINITY, -1)
    assert divisor_from_json(divisor_to_json(D), SMALL_POINTS) == D
    assert divisor_from_json("[]") == Divisor.zero()
    with pytest.raises(InputError):
        divisor_from_json("{}")


def test_audit_records_calls():
    with h0_audit() as log:
        h0(WORKED, Divisor.point(INFINITY, 3))
    assert log == [(WORKED, Divisor.point(INFINITY, 3))]
