"""Iterated elimination of strictly dominated strategies."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .game import Game
from .lp import LinearProgram, solve_lp

__all__ = ["Elimination", "dominating_mixture", "iterated_strict_dominance"]


@dataclass(frozen=True)
class Elimination:
    player: int
    index: int  # index in the original game
    label: str
    dominator: tuple[Fraction, ...]  # mixture over the player's remaining strategies


def dominating_mixture(pay, strategy, own, opp):
    """Mixture over ``own`` strictly beating ``strategy`` against every ``opp``.

    ``pay[a][b]`` is the player's payoff for own strategy ``a`` against
    opponent strategy ``b``. Returns a mixture indexed like ``own`` or None.
    Pure dominance is tried before the LP.
    """
    others = [a for a in own if a != strategy]
    if not others:
        return None
    for a in others:
        if all(pay[a][b] > pay[strategy][b] for b in opp):
            return tuple(Fraction(int(a == k)) for k in own)
    # maximize eps s.t. sum_a sigma_a pay[a][b] - eps >= pay[strategy][b]
    k = len(others)
    cons = [([pay[a][b] for a in others] + [-1], ">=", pay[strategy][b]) for b in opp]
    cons.append(([1] * k + [0], "=", 1))
    out = solve_lp(LinearProgram(k + 1, [0] * k + [1], cons, nonneg_vars=range(k)))
    if not out.optimal or out.value <= 0:
        return None
    weights = dict(zip(others, out.assignment[:k]))
    return tuple(weights.get(a, Fraction(0)) for a in own)


def iterated_strict_dominance(game: Game) -> tuple[Game, list[Elimination]]:
    """Remove strictly dominated strategies (mixed dominators allowed) until none remain.

    One strategy is removed per round: player 1's strategies are examined
    first, then player 2's, each in index order.
    """
    rows = list(range(game.shape[0]))
    cols = list(range(game.shape[1]))
    u1 = game.matrix(1)
    u2t = tuple(zip(*game.matrix(2)))
    order: list[Elimination] = []
    while True:
        removed = False
        for player, own, opp, pay in ((1, rows, cols, u1), (2, cols, rows, u2t)):
            for s in own:
                mix = dominating_mixture(pay, s, own, opp)
                if mix is not None:
                    order.append(Elimination(player, s, game.labels(player)[s], mix))
                    own.remove(s)
                    removed = True
                    break
            if removed:
                break
        if not removed:
            return game.restrict(rows, cols), order
