import random
from fractions import Fraction

import pytest

from commitgame.lp import Constraint, LinearProgram, LpStatus, solve_lp
from lpgen import feasible_points, random_lp
from oracles import classify_lp


def test_one_variable_bound():
    out = solve_lp(LinearProgram(1, [1], [([1], "<=", 1)]))
    assert out.status is LpStatus.OPTIMAL
    assert out.value == 1
    assert out.assignment == (1,)


def test_contradictory_bounds():
    out = solve_lp(LinearProgram(1, [1], [([1], "<=", -1)]))
    assert out.status is LpStatus.INFEASIBLE
    assert out.value is None


def test_unbounded():
    out = solve_lp(LinearProgram(2, [1, 1], [([1, -1], "<=", 3)]))
    assert out.status is LpStatus.UNBOUNDED


def test_maximin_instance_for_commitment_advantage(advantage):
    # variables v (free), p_U, p_D
    cons = [([1] + [-advantage.matrix(1)[s][t] for s in range(2)], "<=", 0) for t in range(2)]
    cons.append(([0, 1, 1], "=", 1))
    out = solve_lp(LinearProgram(3, [1, 0, 0], cons, nonneg_vars=[1, 2]))
    assert out.value == 1
    assert out.assignment == (1, 1, 0)


def test_free_variable_can_go_negative():
    # maximize -x with x free and x >= -3 gives x = -3
    out = solve_lp(LinearProgram(1, [-1], [([1], ">=", -3)], nonneg_vars=[]))
    assert out.value == 3
    assert out.assignment == (-3,)


def test_redundant_equalities():
    lp = LinearProgram(
        2, [1, 2], [([1, 1], "=", 1), ([2, 2], "=", 2), ([1, 0], "<=", Fraction(1, 3))]
    )
    out = solve_lp(lp)
    assert out.value == 2
    assert out.assignment == (0, 1)


def test_beale_cycling_example_terminates():
    # classic instance on which the largest-coefficient rule cycles
    lp = LinearProgram(
        4,
        [Fraction(3, 4), -20, Fraction(1, 2), -6],
        [
            ([Fraction(1, 4), -8, -1, 9], "<=", 0),
            ([Fraction(1, 2), -12, Fraction(-1, 2), 3], "<=", 0),
            ([0, 0, 1, 0], "<=", 1),
        ],
    )
    out = solve_lp(lp)
    status, value = classify_lp(4, lp.objective, [(c.coefficients, c.relation.value, c.rhs) for c in lp.constraints])
    assert status == "optimal"
    assert out.value == value == Fraction(5, 4)


def test_rejects_bad_shapes():
    with pytest.raises(ValueError):
        LinearProgram(0, [])
    with pytest.raises(ValueError):
        LinearProgram(2, [1])
    with pytest.raises(ValueError):
        LinearProgram(2, [1, 1], [([1], "<=", 1)])
    with pytest.raises(ValueError):
        LinearProgram(1, [1], nonneg_vars=[3])


def test_constraint_holds():
    c = Constraint([1, 2], ">=", 3)
    assert c.holds([1, 1]) and not c.holds([0, 1])


def test_deterministic():
    rng = random.Random(5)
    for _ in range(20):
        n, obj, cons = random_lp(rng)
        lp = LinearProgram(n, obj, cons)
        assert solve_lp(lp) == solve_lp(lp)


@pytest.mark.parametrize("seed", range(4))
def test_random_lps_against_vertex_enumeration(seed):
    rng = random.Random(1000 + seed)
    for _ in range(40):
        n, obj, cons = random_lp(rng, max_vars=4, max_cons=6)
        out = solve_lp(LinearProgram(n, obj, cons))
        status, value = classify_lp(n, obj, cons)
        assert out.status.value == status
        if status == "optimal":
            assert out.value == value


def test_weak_duality_spot_check():
    rng = random.Random(77)
    checked = 0
    for _ in range(60):
        n, obj, cons = random_lp(rng, max_vars=4, max_cons=5)
        lp = LinearProgram(n, obj, cons)
        out = solve_lp(lp)
        if not out.optimal:
            continue
        for x in feasible_points(rng, n, cons, 20):
            assert lp.is_feasible(x)
            assert out.value >= lp.value_at(x)
            checked += 1
    assert checked > 0
