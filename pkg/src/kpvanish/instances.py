"""Reference curves and seeded random test instances."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .curve import INFINITY, CurvePoint, HyperellipticCurve, rational_points_search
from .errors import InvalidCurve
from .rrspace import Divisor

# y^2 = x^5 - 1, the worked genus-2 example
WORKED = HyperellipticCurve.from_coeffs([-1, 0, 0, 0, 0, 1])
# y^2 = x(x^2 - 1)(x^2 - 4): all six Weierstrass points rational
SPLIT = HyperellipticCurve.from_coeffs([0, 4, 0, -5, 0, 1])
# y^2 = x^3 - x: the square lattice
LEMNISCATIC = HyperellipticCurve.from_coeffs([0, -1, 0, 1])
# y^2 = x^5 - x + 1: six affine rational points with small height
SMALL_POINTS = HyperellipticCurve.from_coeffs([1, -1, 0, 0, 0, 1])


@dataclass(frozen=True)
class Instance:
    curve: HyperellipticCurve
    lam: Divisor
    p: CurvePoint


def random_curve(rng: random.Random, genus: int, min_points: int = 2, bound: int = 3) -> tuple:
    """Squarefree f of degree 2g+1 with small coefficients and a few rational points.

    The constant term is drawn from the squares so that x = 0 gives a point.
    """
    d = 2 * genus + 1
    while True:
        coeffs = [rng.choice([0, 1, 1, 4, 4, 9])] + [rng.randint(-bound, bound) for _ in range(d - 1)]
        coeffs.append(rng.choice([1, 1, 1, 2, -1]))
        try:
            C = HyperellipticCurve.from_coeffs(coeffs)
        except InvalidCurve:
            continue
        pts = rational_points_search(C, height=4)
        if len(pts) >= min_points:
            return C, pts


def random_divisor(rng: random.Random, points: list, degree: int, spread: int = 2, terms: int = 3) -> Divisor:
    """Random divisor of the given degree on ``points`` plus infinity."""
    items = []
    for _ in range(rng.randint(0, terms)):
        items.append((rng.choice(points), rng.randint(-spread, spread)))
    rest = degree - sum(m for _, m in items)
    items.append((INFINITY, rest))
    return Divisor(tuple(items))


def random_instances(count: int, seed: int = 0, genera=(2, 3, 4)) -> list[Instance]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = genera[len(out) % len(genera)]
        C, pts = random_curve(rng, g)
        lam = random_divisor(rng, pts, g - 1)
        p = rng.choice(pts + [INFINITY])
        out.append(Instance(C, lam, p))
    return out
