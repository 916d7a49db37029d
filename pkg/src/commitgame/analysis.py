"""Per-game comparison of solution concepts and their ordering relations."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .concepts import correlated_optimize, maximin, pure_commitment, stackelberg_multi_lp
from .game import Game, constant_sum, format_rational
from .nash import DEFAULT_CAP, NashEquilibrium, is_nash, nash_support_enumeration

__all__ = [
    "Check",
    "ConceptReport",
    "compare_concepts",
    "check_interchangeability",
    "report_to_json",
    "random_game",
    "random_constant_sum_game",
    "random_corpus",
]


@dataclass(frozen=True)
class Check:
    label: str
    holds: bool
    witness: str = ""


@dataclass(frozen=True)
class ConceptReport:
    game_title: str
    leader: int
    maximin_value: Fraction
    pure_commit_value: Fraction
    stackelberg_value: Fraction
    nash_values: tuple[Fraction, ...]
    ce_max_leader_value: Fraction
    checks: tuple[Check, ...]
    nash_complete: bool = True
    nash_degenerate: bool = False
    notes: tuple[str, ...] = field(default=())

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.holds]


def _fmt(q) -> str:
    return format_rational(q)


def compare_concepts(game: Game, leader: int, nash_cap: int = DEFAULT_CAP) -> ConceptReport:
    """Compute every concept for ``leader`` and check the ordering claims exactly.

    Games larger than ``nash_cap`` get an empty ``nash_values`` and
    ``nash_complete=False``; the Nash checks then hold vacuously.
    """
    if leader not in (1, 2):
        raise ValueError(f"leader must be 1 or 2, got {leader!r}")
    _, mm_value = maximin(game, leader)
    _, pc_value = pure_commitment(game, leader)
    stack = stackelberg_multi_lp(game, leader)
    sv = stack.leader_value
    _, ce_value = correlated_optimize(game, game.matrix(leader))

    notes = list(stack.notes(game.labels(3 - leader)))
    complete, degenerate = True, False
    if max(game.shape) > nash_cap:
        equilibria = []
        complete = False
        notes.append(f"Nash enumeration skipped: game exceeds the {nash_cap}x{nash_cap} cap")
    else:
        equilibria = nash_support_enumeration(game, nash_cap)
        degenerate = equilibria.degenerate
        if degenerate:
            notes.append("degenerate game: only vertex Nash equilibria are listed")
    nash_values = tuple(eq.value(leader) for eq in equilibria)

    checks = [
        Check(
            "pure commitment <= stackelberg",
            pc_value <= sv,
            f"{_fmt(pc_value)} vs {_fmt(sv)}",
        ),
        Check(
            "ce max leader <= stackelberg",
            ce_value <= sv,
            f"{_fmt(ce_value)} vs {_fmt(sv)}",
        ),
    ]
    bad = [k for k, v in enumerate(nash_values) if v > ce_value]
    checks.append(
        Check(
            "every nash value <= ce max leader",
            not bad,
            f"equilibrium {bad[0]} gives {_fmt(nash_values[bad[0]])}" if bad else "",
        )
    )
    bad = [k for k, v in enumerate(nash_values) if v > sv]
    checks.append(
        Check(
            "every nash value <= stackelberg",
            not bad,
            f"equilibrium {bad[0]} gives {_fmt(nash_values[bad[0]])}" if bad else "",
        )
    )
    bad = [k for k, v in enumerate(nash_values) if v < mm_value]
    checks.append(
        Check(
            "maximin <= every nash value",
            not bad,
            f"equilibrium {bad[0]} gives {_fmt(nash_values[bad[0]])}" if bad else "",
        )
    )
    c = constant_sum(game)
    if c is None:
        checks.append(Check("constant-sum => maximin = stackelberg = nash", True, "not constant-sum"))
    else:
        values = {mm_value, sv, *nash_values}
        checks.append(
            Check(
                "constant-sum => maximin = stackelberg = nash",
                len(values) == 1,
                ", ".join(_fmt(v) for v in sorted(values)),
            )
        )

    return ConceptReport(
        game_title=game.title,
        leader=leader,
        maximin_value=mm_value,
        pure_commit_value=pc_value,
        stackelberg_value=sv,
        nash_values=nash_values,
        ce_max_leader_value=ce_value,
        checks=tuple(checks),
        nash_complete=complete,
        nash_degenerate=degenerate,
        notes=tuple(notes),
    )


def check_interchangeability(
    equilibria: list[NashEquilibrium], game: Game
) -> tuple[bool, tuple[int, int] | None]:
    """Whether every cross-pairing of equilibrium strategies is an equilibrium.

    Returns ``(True, None)`` or ``(False, (a, b))`` where pairing player 1's
    strategy from equilibrium ``a`` with player 2's from ``b`` fails.
    """
    for a, ea in enumerate(equilibria):
        for b, eb in enumerate(equilibria):
            if a != b and not is_nash(game, ea.sigma1, eb.sigma2):
                return False, (a, b)
    return True, None


def report_to_json(report: ConceptReport) -> dict:
    return {
        "game_title": report.game_title,
        "leader": report.leader,
        "maximin_value": _fmt(report.maximin_value),
        "pure_commit_value": _fmt(report.pure_commit_value),
        "stackelberg_value": _fmt(report.stackelberg_value),
        "nash_values": [_fmt(v) for v in report.nash_values],
        "nash_complete": report.nash_complete,
        "nash_degenerate": report.nash_degenerate,
        "ce_max_leader_value": _fmt(report.ce_max_leader_value),
        "checks": [
            {"claim": c.label, "holds": c.holds, "witness": c.witness}
            for c in report.checks
        ],
        "notes": list(report.notes),
    }


def random_game(rng: random.Random, min_size=2, max_size=6, low=-10, high=10, title="") -> Game:
    m = rng.randint(min_size, max_size)
    n = rng.randint(min_size, max_size)
    cells = [[(rng.randint(low, high), rng.randint(low, high)) for _ in range(n)] for _ in range(m)]
    return Game(cells, title=title)


def random_constant_sum_game(
    rng: random.Random, min_size=2, max_size=6, low=-10, high=10, title=""
) -> Game:
    m = rng.randint(min_size, max_size)
    n = rng.randint(min_size, max_size)
    c = rng.randint(low, high)
    cells = []
    for _ in range(m):
        row = []
        for _ in range(n):
            a = rng.randint(low, high)
            row.append((a, c - a))
        cells.append(row)
    return Game(cells, title=title)


def random_corpus(seed: int, count: int, constant_sum_games: bool = False, **kwargs) -> list[Game]:
    """Reproducible list of random integer-payoff games."""
    rng = random.Random(seed)
    make = random_constant_sum_game if constant_sum_games else random_game
    return [make(rng, title=f"seed{seed}-game{k}", **kwargs) for k in range(count)]
