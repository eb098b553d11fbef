"""Exact simplex: outcomes, certificates, duality, half-space reduction."""

from __future__ import annotations

import random
from fractions import Fraction as F

from loopstrata.lp import (
    LinearProgram,
    dual_feasible,
    dual_value,
    reduce_halfspaces,
    solve,
    verify_certificate,
)


def test_deepening_program_a1():
    # max s subject to y >= s and -y >= s
    lp = LinearProgram(("y", "s"), [], (F(0), F(1)), True)
    lp.add((1, -1), ">=", 0)
    lp.add((-1, -1), ">=", 0)
    res = solve(lp)
    assert res.status == "optimal"
    assert res.value == 0
    assert res.point[0] == 0
    assert verify_certificate(lp, res)


def test_single_bound_and_edge_statuses():
    lp = LinearProgram(("s",), [], (F(1),), True)
    lp.add((1,), "<=", F(1, 2))
    res = solve(lp)
    assert res.status == "optimal" and res.value == F(1, 2)
    assert solve(LinearProgram(("s",), [], (F(1),), True)).status == "unbounded"
    lp3 = LinearProgram(("x",), [], (F(1),), True)
    lp3.add((1,), ">=", 2)
    lp3.add((1,), "<=", 1)
    assert solve(lp3).status == "infeasible"


def test_minimize_direction():
    lp = LinearProgram(("x",), [], (F(1),), False)
    lp.add((1,), ">=", F(-3, 2))
    res = solve(lp)
    assert res.status == "optimal" and res.value == F(-3, 2)


def test_equality_constraints():
    lp = LinearProgram(("x", "y"), [], (F(1), F(1)), True)
    lp.add((1, 1), "=", 2)
    lp.add((1, 0), "<=", 5)
    lp.add((0, 1), "<=", 5)
    res = solve(lp)
    assert res.status == "optimal" and res.value == 2


def test_duality_spot_checks():
    rng = random.Random(12)
    solved = 0
    for _ in range(60):
        nv = rng.randint(1, 3)
        lp = LinearProgram(
            tuple(f"x{i}" for i in range(nv)),
            [],
            tuple(F(rng.randint(-3, 3)) for _ in range(nv)),
            True,
        )
        for _ in range(rng.randint(1, 4)):
            lp.add(
                tuple(F(rng.randint(-3, 3)) for _ in range(nv)),
                rng.choice(["<=", ">=", "="]),
                F(rng.randint(-4, 4)),
            )
        for i in range(nv):
            e = [F(0)] * nv
            e[i] = F(1)
            lp.add(tuple(e), "<=", 10)
            lp.add(tuple(e), ">=", -10)
        res = solve(lp)
        if res.status != "optimal":
            continue
        assert verify_certificate(lp, res)
        assert dual_feasible(lp, res)
        assert dual_value(lp, res) == res.value  # strong duality over Q
        solved += 1
    assert solved >= 20


def test_reduce_halfspaces():
    cons = [((1,), F(0)), ((1,), F(1)), ((-1,), F(0)), ((0,), F(0)), ((0,), F(2))]
    red = reduce_halfspaces(cons)
    assert red == [((-1,), F(0)), ((0,), F(0)), ((1,), F(0))]


def test_reduction_preserves_feasibility():
    rng = random.Random(7)
    cons = []
    for _ in range(12):
        alpha = (rng.randint(-2, 2), rng.randint(-2, 2))
        cons.append((alpha, F(rng.randint(-3, 3), rng.choice((1, 2)))))
    red = reduce_halfspaces(cons)

    def s_of(constraints, y):
        return min(
            F(a[0]) * y[0] + F(a[1]) * y[1] + lvl for a, lvl in constraints
        )

    for _ in range(50):
        y = (F(rng.randint(-4, 4), rng.choice((1, 2, 3))), F(rng.randint(-4, 4), 2))
        assert s_of(cons, y) == s_of(red, y)
