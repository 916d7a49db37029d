"""Maximin, commitment (pure and mixed) and correlated-equilibrium solvers.

All solvers accept ``leader``/``player`` as 1 (row) or 2 (column). Internally
matrices are oriented ``[leader strategy][follower strategy]`` so the same
code serves both roles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .game import Game, JointDistribution, MixedStrategy, expected_utility, pure_strategy
from .lp import LinearProgram, LpStatus, solve_lp

__all__ = [
    "ColumnResult",
    "StackelbergSolution",
    "maximin",
    "best_responses",
    "pure_commitment",
    "stackelberg_lp_for_column",
    "stackelberg_multi_lp",
    "stackelberg_single_lp",
    "single_lp_program",
    "correlated_program",
    "correlated_optimize",
]


def _other(player: int) -> int:
    if player not in (1, 2):
        raise ValueError(f"player must be 1 or 2, got {player!r}")
    return 3 - player


def maximin(game: Game, player: int) -> tuple[MixedStrategy, Fraction]:
    """Safety strategy for ``player`` and its guaranteed value.

    Variables are ``[v, p_0, ..., p_{m-1}]`` with ``v`` free: maximize ``v``
    subject to ``v <= sum_s u(s, t) p_s`` for every opponent pure ``t``.
    """
    _other(player)
    own, _ = game.oriented(player)
    m, n = len(own), len(own[0])
    cons = []
    for t in range(n):
        cons.append(([1] + [-own[s][t] for s in range(m)], "<=", 0))
    cons.append(([0] + [1] * m, "=", 1))
    lp = LinearProgram(m + 1, [1] + [0] * m, cons, nonneg_vars=range(1, m + 1))
    out = solve_lp(lp)
    if not out.optimal:
        raise AssertionError(f"maximin LP returned {out.status}")
    return MixedStrategy(player, out.assignment[1:]), out.value


def best_responses(
    game: Game, leader_strategy: MixedStrategy, follower: int
) -> frozenset[int]:
    """Follower pure strategies maximizing its utility against ``leader_strategy``."""
    leader = _other(follower)
    _, fol = game.oriented(leader)
    if len(leader_strategy) != len(fol):
        raise ValueError(
            f"strategy has {len(leader_strategy)} entries, leader has {len(fol)} strategies"
        )
    utils = [
        sum((p * fol[s][t] for s, p in enumerate(leader_strategy) if p), Fraction(0))
        for t in range(len(fol[0]))
    ]
    best = max(utils)
    return frozenset(t for t, u in enumerate(utils) if u == best)


def _leader_value(game, leader, strategy, response) -> Fraction:
    sigma_f = pure_strategy(game, _other(leader), response)
    if leader == 1:
        return expected_utility(game, strategy, sigma_f, 1)
    return expected_utility(game, sigma_f, strategy, 2)


def pure_commitment(game: Game, leader: int) -> tuple[int, Fraction]:
    """Best pure strategy to commit to; follower ties go the leader's way."""
    _other(leader)
    lead, fol = game.oriented(leader)
    best_s, best_v = 0, None
    for s, (lrow, frow) in enumerate(zip(lead, fol)):
        top = max(frow)
        value = max(lrow[t] for t, u in enumerate(frow) if u == top)
        if best_v is None or value > best_v:
            best_s, best_v = s, value
    return best_s, best_v


@dataclass(frozen=True)
class ColumnResult:
    """Outcome of the commitment LP that induces one follower response."""

    column: int
    status: LpStatus
    value: Fraction | None = None
    strategy: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.status is LpStatus.OPTIMAL


@dataclass(frozen=True)
class StackelbergSolution:
    leader: int
    leader_strategy: MixedStrategy
    follower_response: int
    leader_value: Fraction
    follower_value: Fraction
    per_column_status: tuple[ColumnResult, ...]
    # follower strategies tied with the response at the commitment
    tied_responses: tuple[int, ...] = ()

    @property
    def follower(self) -> int:
        return 3 - self.leader

    def notes(self, labels: Sequence[str] | None = None) -> tuple[str, ...]:
        """Warn when the induced response is tied; ``labels`` name follower strategies."""
        if not self.tied_responses:
            return ()
        name = (lambda t: labels[t]) if labels is not None else str
        others = ", ".join(name(t) for t in self.tied_responses)
        return (
            f"follower is indifferent between {name(self.follower_response)} and "
            f"{others}; the value assumes ties are broken in the leader's favour and "
            "is only a supremum under adversarial tie-breaking",
        )

    def check(self, game: Game) -> list[str]:
        """Exact consistency checks; returns a list of failures."""
        problems = []
        brs = best_responses(game, self.leader_strategy, self.follower)
        if self.follower_response not in brs:
            problems.append("follower_response is not a best response")
        if _leader_value(
            game, self.leader, self.leader_strategy, self.follower_response
        ) != self.leader_value:
            problems.append("leader_value disagrees with expected utility")
        feasible = [c.value for c in self.per_column_status if c.feasible]
        if not feasible or max(feasible) != self.leader_value:
            problems.append("leader_value is not the best column optimum")
        return problems


def stackelberg_lp_for_column(game: Game, leader: int, column: int) -> LinearProgram:
    """LP maximizing the leader's utility subject to ``column`` being a best response.

    One variable per leader pure strategy, all nonnegative and summing to 1.
    """
    lead, fol = game.oriented(leader)
    m, n = len(lead), len(lead[0])
    cons = []
    for t in range(n):
        if t != column:
            cons.append(([fol[s][column] - fol[s][t] for s in range(m)], ">=", 0))
    cons.append(([1] * m, "=", 1))
    return LinearProgram(m, [lead[s][column] for s in range(m)], cons)


def _solution_from_column(game, leader, columns, best) -> StackelbergSolution:
    sigma = MixedStrategy(leader, best.strategy)
    _, fol = game.oriented(leader)
    fvals = [
        sum((p * fol[s][t] for s, p in enumerate(sigma) if p), Fraction(0))
        for t in range(len(fol[0]))
    ]
    tied = tuple(
        t for t, u in enumerate(fvals) if u == fvals[best.column] and t != best.column
    )
    return StackelbergSolution(
        leader=leader,
        leader_strategy=sigma,
        follower_response=best.column,
        leader_value=best.value,
        follower_value=fvals[best.column],
        per_column_status=tuple(columns),
        tied_responses=tied,
    )


def stackelberg_multi_lp(game: Game, leader: int) -> StackelbergSolution:
    """Optimal mixed commitment via one LP per follower pure strategy.

    The best feasible column wins, lowest index among ties. Ties in the
    follower's response are resolved in the leader's favour.
    """
    _other(leader)
    n = game.num_strategies(_other(leader))
    columns = []
    for t in range(n):
        out = solve_lp(stackelberg_lp_for_column(game, leader, t))
        columns.append(ColumnResult(t, out.status, out.value, out.assignment))
    feasible = [c for c in columns if c.feasible]
    if not feasible:
        raise AssertionError("no follower strategy can be induced")
    best = feasible[0]
    for c in feasible[1:]:
        if c.value > best.value:
            best = c
    return _solution_from_column(game, leader, columns, best)


def single_lp_program(game: Game, leader: int) -> LinearProgram:
    """Single LP over joint probabilities, follower incentive constraints only.

    Variable ``s * n + t`` holds the probability of (leader s, follower t) in
    leader-major orientation.
    """
    lead, fol = game.oriented(leader)
    m, n = len(lead), len(lead[0])
    nv = m * n
    cons = []
    for t in range(n):
        for t2 in range(n):
            if t2 == t:
                continue
            coefs = [0] * nv
            for s in range(m):
                coefs[s * n + t] = fol[s][t] - fol[s][t2]
            cons.append((coefs, ">=", 0))
    cons.append(([1] * nv, "=", 1))
    objective = [lead[s][t] for s in range(m) for t in range(n)]
    return LinearProgram(nv, objective, cons)


def _joint_from_leader_major(game, leader, x) -> JointDistribution:
    m1, m2 = game.shape
    if leader == 1:
        return JointDistribution(
            [[x[i * m2 + j] for j in range(m2)] for i in range(m1)]
        )
    # leader-major for player 2 means index = j * m1 + i
    return JointDistribution([[x[j * m1 + i] for j in range(m2)] for i in range(m1)])


def stackelberg_single_lp(
    game: Game, leader: int
) -> tuple[JointDistribution, Fraction, StackelbergSolution]:
    """Optimal commitment from one LP over joint distributions.

    An optimal solution with all mass in one follower column always exists.
    When the simplex vertex spreads mass over several columns, each column is
    re-solved on its own (in index order) and the first reaching the optimum
    is returned.
    """
    _other(leader)
    lead, _ = game.oriented(leader)
    m, n = len(lead), len(lead[0])
    out = solve_lp(single_lp_program(game, leader))
    if not out.optimal:
        raise AssertionError(f"single commitment LP returned {out.status}")
    x = out.assignment
    value = out.value
    used = [t for t in range(n) if any(x[s * n + t] for s in range(m))]

    columns = []
    chosen = None
    if len(used) == 1:
        t = used[0]
        mass = [x[s * n + t] for s in range(m)]
        chosen = ColumnResult(t, LpStatus.OPTIMAL, value, tuple(mass))
    else:
        for t in range(n):
            res = solve_lp(stackelberg_lp_for_column(game, leader, t))
            if res.optimal and res.value == value:
                chosen = ColumnResult(t, LpStatus.OPTIMAL, res.value, res.assignment)
                break
        if chosen is None:
            raise AssertionError("no single-column optimum reaches the LP value")

    # per-column data are reported the same way as the multi-LP route
    for t in range(n):
        if t == chosen.column:
            columns.append(chosen)
            continue
        res = solve_lp(stackelberg_lp_for_column(game, leader, t))
        columns.append(ColumnResult(t, res.status, res.value, res.assignment))

    flat = [Fraction(0)] * (m * n)
    for s in range(m):
        flat[s * n + chosen.column] = chosen.strategy[s]
    joint = _joint_from_leader_major(game, leader, flat)
    sol = _solution_from_column(game, leader, columns, chosen)
    return joint, value, sol


def correlated_program(game: Game, weights: Sequence[Sequence]) -> LinearProgram:
    """Correlated-equilibrium polytope with a linear objective.

    Variable ``i * n + j`` is the probability of row i, column j.
    """
    m, n = game.shape
    if len(weights) != m or any(len(r) != n for r in weights):
        raise ValueError(f"weights must be {m}x{n}")
    u1, u2 = game.matrix(1), game.matrix(2)
    nv = m * n
    cons = []
    for i in range(m):
        for i2 in range(m):
            if i2 == i:
                continue
            coefs = [0] * nv
            for j in range(n):
                coefs[i * n + j] = u1[i][j] - u1[i2][j]
            cons.append((coefs, ">=", 0))
    for j in range(n):
        for j2 in range(n):
            if j2 == j:
                continue
            coefs = [0] * nv
            for i in range(m):
                coefs[i * n + j] = u2[i][j] - u2[i][j2]
            cons.append((coefs, ">=", 0))
    cons.append(([1] * nv, "=", 1))
    return LinearProgram(nv, [w for row in weights for w in row], cons)


def correlated_optimize(
    game: Game, objective_weights: Sequence[Sequence]
) -> tuple[JointDistribution, Fraction]:
    """Maximize a linear objective over the correlated equilibria of ``game``."""
    m, n = game.shape
    out = solve_lp(correlated_program(game, objective_weights))
    if not out.optimal:
        # the polytope contains every Nash equilibrium, so it is never empty
        raise AssertionError(f"correlated-equilibrium LP returned {out.status}")
    x = out.assignment
    return JointDistribution([[x[i * n + j] for j in range(n)] for i in range(m)]), out.value
