"""Exact solvers for commitment and equilibrium concepts in bimatrix games."""

from .concepts import (
    ColumnResult,
    StackelbergSolution,
    best_responses,
    correlated_optimize,
    maximin,
    pure_commitment,
    stackelberg_multi_lp,
    stackelberg_single_lp,
)
from .discretization import GridBudgetExceeded, GridSpec, TieBreak, grid_count, grid_stackelberg
from .dominance import Elimination, iterated_strict_dominance
from .game import (
    Game,
    GameFormatError,
    JointDistribution,
    MixedStrategy,
    Rational,
    constant_sum,
    expected_utility,
    format_rational,
    load_game,
    parse_game,
    serialize_game,
)
from .lp import LinearProgram, LpOutcome, LpStatus, solve_lp
from .nash import NashCapExceeded, NashEquilibrium, nash_support_enumeration

__version__ = "0.1.0"
