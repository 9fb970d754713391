"""Quick invariant suite on the built-in reference curves."""
from __future__ import annotations

import random
import traceback
from typing import Callable

import numpy as np

from .curve import INFINITY, weierstrass_points_rational
from .instances import LEMNISCATIC, SPLIT, WORKED, random_instances
from .rrspace import Divisor, canonical_divisor, rr_identity_check
from .vanishing import gap_sequence, order_gap, order_report, wronskian_order_at


def _worked_example() -> bool:
    rep = order_report(WORKED, Divisor.point(INFINITY), INFINITY)
    return rep.order == 3 and rep.gap_seq.gaps == (2, 4) and rep.sw_set.prefix == (-2, 0)


def _canonical_weights() -> bool:
    K = canonical_divisor(SPLIT)
    seqs = [gap_sequence(SPLIT, K, P) for P in weierstrass_points_rational(SPLIT)]
    return len(seqs) == 6 and all(s.gaps == (1, 3) for s in seqs)


def _cross_formulas() -> bool:
    for inst in random_instances(12, seed=7):
        order_report(inst.curve, inst.lam, inst.p)  # raises on any disagreement
    return True


def _riemann_roch() -> bool:
    rng = random.Random(3)
    for inst in random_instances(6, seed=11):
        for _ in range(5):
            D = inst.lam.plus(inst.p, rng.randint(-3, 6))
            if not rr_identity_check(inst.curve, D):
                return False
    return True


def _wronskian() -> bool:
    if wronskian_order_at(WORKED, Divisor.point(INFINITY, 3), INFINITY) != 3:
        return False
    for inst in random_instances(6, seed=5):
        g = inst.curve.genus
        D = inst.lam.plus(inst.p, g)
        if wronskian_order_at(inst.curve, D, inst.p) != gap_sequence(inst.curve, D, inst.p).weight:
            return False
    return True


def _n_independence() -> bool:
    for inst in random_instances(6, seed=13):
        g = inst.curve.genus
        if len({order_gap(inst.curve, inst.lam, inst.p, n) for n in (g, g + 1, g + 2)}) != 1:
            return False
    return True


def _genus_one_numeric() -> bool:
    from .thetanum import period_matrix, riemann_theta

    RD = period_matrix(LEMNISCATIC)
    one_d = sum(np.exp(-np.pi * n * n) for n in range(-30, 31))
    theta = riemann_theta(np.zeros(2), 1j * np.eye(2))
    return abs(RD.Omega[0, 0] - 1j) < 1e-6 and abs(theta - one_d**2) < 1e-9


def _headline() -> bool:
    from .thetanum import order_numeric, period_matrix

    RD = period_matrix(WORKED)
    return order_numeric(RD, WORKED, Divisor.point(INFINITY), INFINITY) == 3


CHECKS: list[tuple[str, Callable[[], bool]]] = [
    ("worked example", _worked_example),
    ("canonical Weierstrass weights", _canonical_weights),
    ("cross-formula equality", _cross_formulas),
    ("Riemann-Roch identity", _riemann_roch),
    ("Wronskian order", _wronskian),
    ("n-independence", _n_independence),
    ("genus-1 numerics", _genus_one_numeric),
    ("numeric worked example", _headline),
]


def run_selftest() -> dict:
    results = []
    for name, check in CHECKS:
        try:
            ok, err = bool(check()), None
        except Exception as exc:  # a crashing check is a failing check
            ok, err = False, "".join(traceback.format_exception_only(type(exc), exc)).strip()
        entry = {"name": name, "ok": ok}
        if err:
            entry["error"] = err
        results.append(entry)
    passed = sum(r["ok"] for r in results)
    return {"passed": passed, "failed": len(results) - passed, "checks": results}
