"""Nash equilibria of bimatrix games by exact support enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .game import Game, MixedStrategy, expected_utility
from .lp import LinearProgram, solve_lp

__all__ = [
    "DEFAULT_CAP",
    "NashCapExceeded",
    "NashEquilibrium",
    "EquilibriumList",
    "is_nash",
    "nash_support_enumeration",
]

DEFAULT_CAP = 8


class NashCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class NashEquilibrium:
    sigma1: MixedStrategy
    sigma2: MixedStrategy
    value1: Fraction
    value2: Fraction

    def value(self, player: int) -> Fraction:
        return self.value1 if player == 1 else self.value2


class EquilibriumList(list):
    """List of equilibria; ``degenerate`` marks games where continua may exist
    and only vertex equilibria were reported."""

    degenerate: bool = False


def _payoff_vectors(game, sigma1, sigma2):
    u1, u2 = game.matrix(1), game.matrix(2)
    m, n = game.shape
    rows = [sum((q * u1[i][j] for j, q in enumerate(sigma2) if q), Fraction(0)) for i in range(m)]
    cols = [sum((p * u2[i][j] for i, p in enumerate(sigma1) if p), Fraction(0)) for j in range(n)]
    return rows, cols


def is_nash(game: Game, sigma1: MixedStrategy, sigma2: MixedStrategy) -> bool:
    """True iff no pure deviation improves either player's expected utility."""
    rows, cols = _payoff_vectors(game, sigma1, sigma2)
    v1 = expected_utility(game, sigma1, sigma2, 1)
    v2 = expected_utility(game, sigma1, sigma2, 2)
    return max(rows) <= v1 and max(cols) <= v2


def _solve_square(mat, rhs):
    """Gaussian elimination over mpq; None when the matrix is singular."""
    k = len(mat)
    a = [list(r) + [b] for r, b in zip(mat, rhs)]
    for c in range(k):
        piv = next((r for r in range(c, k) if a[r][c]), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for r in range(k):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[-1] for row in a]


def _indifference(pay, own, other, n_other):
    """Mixture over ``other`` making every strategy in ``own`` a best response.

    ``pay[i][j]`` is the payoff to the ``own`` player. Returns (mixture as a
    full-length list, value, singular) or None when no valid mixture exists.
    """
    k = len(other)
    mat = [[pay[i][j] for j in other] + [mpq(-1)] for i in own]
    mat.append([mpq(1)] * k + [mpq(0)])
    rhs = [mpq(0)] * len(own) + [mpq(1)]
    sol = _solve_square(mat, rhs) if len(own) == k else None
    singular = sol is None
    if singular:
        sol = _indifference_lp(pay, own, other)
        if sol is None:
            return None
    probs, value = sol[:k], sol[k]
    if any(p < 0 for p in probs):
        return None
    full = [mpq(0)] * n_other
    for j, p in zip(other, probs):
        full[j] = p
    for i in range(len(pay)):
        if i in own:
            continue
        if sum(pay[i][j] * full[j] for j in other) > value:
            return None
    return full, value, singular


def _indifference_lp(pay, own, other):
    # variables: mixture over `other` (nonneg) then the value (free)
    k = len(other)
    cons = []
    own_set = set(own)
    for i in range(len(pay)):
        coefs = [Fraction(int(pay[i][j].numerator), int(pay[i][j].denominator)) for j in other]
        cons.append((coefs + [-1], "=" if i in own_set else "<=", 0))
    cons.append(([1] * k + [0], "=", 1))
    out = solve_lp(LinearProgram(k + 1, [0] * (k + 1), cons, nonneg_vars=range(k)))
    if not out.optimal:
        return None
    return [mpq(v.numerator, v.denominator) for v in out.assignment]


def _to_frac(q):
    return Fraction(int(q.numerator), int(q.denominator))


def _support_pairs(m, n, equal_only):
    for size in range(1, min(m, n) + 1):
        for rows in itertools.combinations(range(m), size):
            for cols in itertools.combinations(range(n), size):
                yield rows, cols
    if equal_only:
        return
    for rsize in range(1, m + 1):
        for csize in range(1, n + 1):
            if rsize == csize:
                continue
            for rows in itertools.combinations(range(m), rsize):
                for cols in itertools.combinations(range(n), csize):
                    yield rows, cols


def nash_support_enumeration(game: Game, cap: int = DEFAULT_CAP) -> EquilibriumList:
    """All Nash equilibria of a nondegenerate game, vertex equilibria otherwise.

    Equal-size support pairs are tried first, each by solving the exact
    indifference system for both players. Singular systems are resolved by a
    feasibility LP and mark the result degenerate. If nothing is found that
    way, every support pair (of any sizes) is searched with the LP route.
    """
    m, n = game.shape
    if m > cap or n > cap:
        raise NashCapExceeded(f"game is {m}x{n}, enumeration cap is {cap}x{cap}")
    u1 = [[mpq(v.numerator, v.denominator) for v in r] for r in game.matrix(1)]
    u2 = [[mpq(v.numerator, v.denominator) for v in r] for r in game.matrix(2)]
    u2t = [list(c) for c in zip(*u2)]

    found = EquilibriumList()
    seen = set()
    degenerate = False
    for equal_only in (True, False):
        if not equal_only and found:
            break
        for rows, cols in _support_pairs(m, n, equal_only):
            if not equal_only and len(rows) == len(cols):
                continue
            ys = _indifference(u1, rows, cols, n)
            if ys is None:
                continue
            xs = _indifference(u2t, cols, rows, m)
            if xs is None:
                continue
            x, _, sx = xs
            y, _, sy = ys
            degenerate = degenerate or sx or sy
            key = (tuple(x), tuple(y))
            if key in seen:
                continue
            seen.add(key)
            s1 = MixedStrategy(1, [_to_frac(v) for v in x])
            s2 = MixedStrategy(2, [_to_frac(v) for v in y])
            if not is_nash(game, s1, s2):
                raise AssertionError("support enumeration produced a non-equilibrium")
            found.append(
                NashEquilibrium(
                    s1,
                    s2,
                    expected_utility(game, s1, s2, 1),
                    expected_utility(game, s1, s2, 2),
                )
            )
    for eq in found:
        rows, cols = _payoff_vectors(game, eq.sigma1, eq.sigma2)
        n_br1 = sum(1 for v in rows if v == max(rows))
        n_br2 = sum(1 for v in cols if v == max(cols))
        if n_br1 > len(eq.sigma2.support) or n_br2 > len(eq.sigma1.support):
            degenerate = True
    found.degenerate = degenerate
    return found
