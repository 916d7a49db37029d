"""Grid approximation of the commitment problem.

The leader is restricted to mixed strategies whose probabilities are
multiples of 1/N; the follower best-responds to each grid point. Evaluation is
vectorized with numpy over integer-scaled payoffs, so it stays exact.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .game import Game, MixedStrategy

__all__ = [
    "DEFAULT_BUDGET",
    "TieBreak",
    "GridSpec",
    "GridBudgetExceeded",
    "grid_count",
    "grid_points",
    "grid_stackelberg",
]

DEFAULT_BUDGET = 10**7
_CHUNK = 1 << 16
_INT64_SAFE = 1 << 62


class TieBreak(str, enum.Enum):
    LEADER_FAVORABLE = "leader-favorable"
    ADVERSARIAL = "adversarial"


@dataclass(frozen=True)
class GridSpec:
    resolution: int
    tie_break: TieBreak = TieBreak.LEADER_FAVORABLE

    def __post_init__(self):
        if not isinstance(self.resolution, int) or self.resolution < 1:
            raise ValueError(f"resolution must be a positive integer, got {self.resolution!r}")
        object.__setattr__(self, "tie_break", TieBreak(self.tie_break))


class GridBudgetExceeded(ValueError):
    def __init__(self, count: int, budget: int):
        self.count = count
        self.budget = budget
        super().__init__(
            f"grid has {count} points, over the budget of {budget}; the number of "
            "grid strategies grows exponentially with the leader's strategy count"
        )


def grid_count(num_pure: int, resolution: int) -> int:
    """Number of distributions over ``num_pure`` strategies in steps of 1/resolution."""
    if num_pure < 1 or resolution < 1:
        raise ValueError("num_pure and resolution must be at least 1")
    return math.comb(resolution + num_pure - 1, num_pure - 1)


def grid_points(m: int, n: int):
    """Yield every composition of ``n`` into ``m`` parts, lexicographically ascending."""
    for chunk in _chunks(m, n):
        for row in chunk:
            yield tuple(int(v) for v in row)


def _chunks(m: int, n: int):
    if m == 1:
        yield np.array([[n]], dtype=np.int64)
        return
    combos = itertools.combinations(range(n + m - 1), m - 1)
    while True:
        block = list(itertools.islice(combos, _CHUNK))
        if not block:
            return
        b = np.array(block, dtype=np.int64)
        lo = np.full((len(b), 1), -1, dtype=np.int64)
        hi = np.full((len(b), 1), n + m - 1, dtype=np.int64)
        yield np.diff(np.hstack([lo, b, hi]), axis=1) - 1


@lru_cache(maxsize=64)
def _cached_grid(m: int, n: int) -> np.ndarray:
    return np.vstack(list(_chunks(m, n)))


def _scaled(mat):
    """Integer matrix and common denominator with ``mat == ints / scale``."""
    scale = math.lcm(*(v.denominator for row in mat for v in row))
    ints = [[v.numerator * (scale // v.denominator) for v in row] for row in mat]
    return ints, scale


def grid_stackelberg(
    game: Game,
    leader: int,
    spec: GridSpec,
    budget: int = DEFAULT_BUDGET,
) -> tuple[MixedStrategy, Fraction]:
    """Best grid strategy for the leader and the utility it yields.

    The follower's response is chosen among its best responses according to
    ``spec.tie_break``. Grid points are scanned in ascending lexicographic
    order of their count vectors and the first maximizer wins.
    """
    if leader not in (1, 2):
        raise ValueError(f"leader must be 1 or 2, got {leader!r}")
    lead, fol = game.oriented(leader)
    m = len(lead)
    N = spec.resolution
    count = grid_count(m, N)
    if count > budget:
        raise GridBudgetExceeded(count, budget)

    lead_i, lead_scale = _scaled(lead)
    fol_i, _ = _scaled(fol)
    bound = N * max(abs(v) for row in lead_i + fol_i for v in row)
    dtype = np.int64 if bound < _INT64_SAFE else object
    L = np.array(lead_i, dtype=dtype)
    F = np.array(fol_i, dtype=dtype)
    adversarial = spec.tie_break is TieBreak.ADVERSARIAL

    chunks = [_cached_grid(m, N)] if count <= 4 * _CHUNK else _chunks(m, N)
    best_val = None
    best_point = None
    for pts in chunks:
        if dtype is object:
            pts = pts.astype(object)
        fu = pts @ F
        lu = pts @ L
        mask = fu == fu.max(axis=1, keepdims=True)
        if dtype is object:
            # python ints: pick through masked lists
            vals = [
                (min if adversarial else max)(v for v, ok in zip(lrow, mrow) if ok)
                for lrow, mrow in zip(lu, mask)
            ]
            k = max(range(len(vals)), key=lambda i: (vals[i], -i))
            val = vals[k]
        else:
            if adversarial:
                sentinel = np.iinfo(np.int64).max
                vals = np.where(mask, lu, sentinel).min(axis=1)
            else:
                sentinel = np.iinfo(np.int64).min
                vals = np.where(mask, lu, sentinel).max(axis=1)
            k = int(np.argmax(vals))
            val = int(vals[k])
        if best_val is None or val > best_val:
            best_val = val
            best_point = tuple(int(v) for v in pts[k])
    strategy = MixedStrategy(leader, [Fraction(c, N) for c in best_point])
    return strategy, Fraction(best_val, N * lead_scale)
