"""Command-line front end.

Every successful run prints exactly one JSON document on stdout. Bad input
exits with status 1 and a JSON error object on stderr; internal consistency
failures exit with status 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import concepts
from .analysis import compare_concepts, report_to_json
from .discretization import DEFAULT_BUDGET, GridBudgetExceeded, GridSpec, TieBreak, grid_count, grid_stackelberg
from .dominance import iterated_strict_dominance
from .game import Game, GameFormatError, format_rational, load_game
from .lp import LpInvariantError
from .nash import DEFAULT_CAP, NashCapExceeded, nash_support_enumeration

CONCEPTS = (
    "maximin",
    "pure-commit",
    "stackelberg",
    "stackelberg-single-lp",
    "ce-max-leader",
    "nash",
    "dominance",
)


class UsageError(Exception):
    pass


class InvariantViolation(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _strategy(probs) -> list[str]:
    return [format_rational(p) for p in probs]


def _joint(joint) -> list[list[str]]:
    return [[format_rational(p) for p in row] for row in joint.probabilities]


def _solve(game: Game, concept: str, leader: int, nash_cap: int) -> dict:
    follower = 3 - leader
    flabels = game.labels(follower)
    out = {"concept": concept, "leader": leader}
    notes: list[str] = []
    if concept == "maximin":
        sigma, value = concepts.maximin(game, leader)
        out.update(value=format_rational(value), strategy=_strategy(sigma))
    elif concept == "pure-commit":
        s, value = concepts.pure_commitment(game, leader)
        lead, fol = game.oriented(leader)
        top = max(fol[s])
        response = max(
            (t for t, u in enumerate(fol[s]) if u == top), key=lambda t: (lead[s][t], -t)
        )
        n = game.num_strategies(leader)
        out.update(
            value=format_rational(value),
            strategy=_strategy([int(k == s) for k in range(n)]),
            response=flabels[response],
        )
    elif concept in ("stackelberg", "stackelberg-single-lp"):
        if concept == "stackelberg":
            sol = concepts.stackelberg_multi_lp(game, leader)
            joint = None
        else:
            joint, _, sol = concepts.stackelberg_single_lp(game, leader)
        problems = sol.check(game)
        if problems:
            raise InvariantViolation("; ".join(problems))
        out.update(
            value=format_rational(sol.leader_value),
            strategy=_strategy(sol.leader_strategy),
            response=flabels[sol.follower_response],
            follower_value=format_rational(sol.follower_value),
        )
        if joint is not None:
            out["joint_distribution"] = _joint(joint)
        notes.extend(sol.notes(flabels))
    elif concept == "ce-max-leader":
        joint, value = concepts.correlated_optimize(game, game.matrix(leader))
        out.update(value=format_rational(value), joint_distribution=_joint(joint))
    elif concept == "nash":
        eqs = nash_support_enumeration(game, nash_cap)
        out["value"] = format_rational(max(e.value(leader) for e in eqs))
        out["equilibria"] = [
            {
                "sigma1": _strategy(e.sigma1),
                "sigma2": _strategy(e.sigma2),
                "value1": format_rational(e.value1),
                "value2": format_rational(e.value2),
            }
            for e in eqs
        ]
        if eqs.degenerate:
            notes.append("degenerate game: only vertex equilibria are listed")
    elif concept == "dominance":
        reduced, order = iterated_strict_dominance(game)
        value = None
        if reduced.shape == (1, 1):
            value = format_rational(reduced.payoffs[0][0][leader - 1])
        out.update(
            value=value,
            reduced_game={
                "row_labels": list(reduced.row_labels),
                "col_labels": list(reduced.col_labels),
            },
            eliminated=[{"player": e.player, "label": e.label} for e in order],
        )
    else:
        raise UsageError(f"unknown concept {concept!r}")
    out["notes"] = notes
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="commitgame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="run one solution concept")
    p.add_argument("--concept", required=True, help="one of: " + ", ".join(CONCEPTS))
    p.add_argument("--leader", type=int, choices=(1, 2), default=1)
    p.add_argument("--nash-cap", type=int, default=DEFAULT_CAP)
    p.add_argument("game_path")

    p = sub.add_parser("compare", help="compare all concepts for one leader")
    p.add_argument("--leader", type=int, choices=(1, 2), default=1)
    p.add_argument("--nash-cap", type=int, default=DEFAULT_CAP)
    p.add_argument("game_path")

    p = sub.add_parser("discretize", help="best leader strategy on a 1/N grid")
    p.add_argument("--resolution", "-N", type=int, required=True)
    p.add_argument(
        "--tie-break", choices=[t.value for t in TieBreak], default=TieBreak.LEADER_FAVORABLE.value
    )
    p.add_argument("--leader", type=int, choices=(1, 2), default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("game_path")

    p = sub.add_parser("count", help="number of grid strategies")
    p.add_argument("--pure", type=int, required=True)
    p.add_argument("--resolution", "-N", type=int, required=True)
    return parser


def _run(args) -> dict:
    if args.command == "count":
        if args.pure < 1 or args.resolution < 1:
            raise UsageError("--pure and --resolution must be at least 1")
        return {"grid_count": str(grid_count(args.pure, args.resolution))}

    if args.command == "solve" and args.concept not in CONCEPTS:
        raise UsageError(f"unknown concept {args.concept!r}; choose from {', '.join(CONCEPTS)}")
    if args.command == "discretize" and args.resolution < 1:
        raise UsageError("--resolution must be at least 1")
    game = load_game(args.game_path)

    if args.command == "solve":
        return _solve(game, args.concept, args.leader, args.nash_cap)
    if args.command == "compare":
        report = compare_concepts(game, args.leader, args.nash_cap)
        if not report.all_hold:
            raise InvariantViolation(
                "; ".join(f"{c.label}: {c.witness}" for c in report.failed())
            )
        return report_to_json(report)
    spec = GridSpec(args.resolution, TieBreak(args.tie_break))
    strategy, value = grid_stackelberg(game, args.leader, spec, budget=args.budget)
    return {
        "resolution": args.resolution,
        "tie_break": spec.tie_break.value,
        "grid_count": str(grid_count(game.num_strategies(args.leader), args.resolution)),
        "best_strategy": _strategy(strategy),
        "value": format_rational(value),
    }


def _fail(code: int, error: str, detail: str, location: str | None = None) -> int:
    doc = {"error": error, "detail": detail}
    if location:
        doc["location"] = location
    sys.stderr.write(json.dumps(doc) + "\n")
    return code


def run_cli(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result = _run(args)
    except UsageError as exc:
        return _fail(1, "usage", str(exc))
    except FileNotFoundError as exc:
        return _fail(1, "file-not-found", str(exc.filename or exc))
    except OSError as exc:
        return _fail(1, "io", str(exc))
    except GameFormatError as exc:
        return _fail(1, "parse", exc.message, exc.location)
    except GridBudgetExceeded as exc:
        return _fail(1, "budget-exceeded", str(exc))
    except NashCapExceeded as exc:
        return _fail(1, "nash-cap-exceeded", str(exc))
    except (InvariantViolation, LpInvariantError, AssertionError) as exc:
        return _fail(2, "internal", str(exc))
    except ValueError as exc:
        return _fail(1, "invalid", str(exc))
    sys.stdout.write(json.dumps(result, indent=2, ensure_ascii=False) + "\n")
    return 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
