"""Exact linear programming by two-phase primal simplex.

Problems are stated as maximizations over rational data. Internally the
tableau holds ``gmpy2.mpq`` values; everything crossing the module boundary
is a ``fractions.Fraction``. Pivoting follows Bland's rule, so the solver
terminates on degenerate problems and is deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

__all__ = [
    "Relation",
    "Constraint",
    "LinearProgram",
    "LpStatus",
    "LpOutcome",
    "LpInvariantError",
    "solve_lp",
]


class Relation(str, enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class LpInvariantError(RuntimeError):
    """The solver produced an answer that fails its own exact re-check."""


def _frac(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    return Fraction(int(q.numerator), int(q.denominator))


@dataclass(frozen=True)
class Constraint:
    coefficients: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction

    def __init__(self, coefficients: Iterable, relation, rhs):
        object.__setattr__(self, "coefficients", tuple(_frac(c) for c in coefficients))
        object.__setattr__(self, "relation", Relation(relation))
        object.__setattr__(self, "rhs", _frac(rhs))

    def lhs(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.coefficients, x) if c), Fraction(0))

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = self.lhs(x)
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """maximize ``objective . x`` subject to ``constraints``.

    Variables listed in ``nonneg_vars`` are bounded below by zero; all
    others are free.
    """

    num_vars: int
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]
    nonneg_vars: frozenset[int]

    def __init__(self, num_vars: int, objective, constraints=(), nonneg_vars=None):
        if num_vars < 1:
            raise ValueError("a linear program needs at least one variable")
        objective = tuple(_frac(c) for c in objective)
        if len(objective) != num_vars:
            raise ValueError(
                f"objective has {len(objective)} coefficients, expected {num_vars}"
            )
        cons = tuple(
            c if isinstance(c, Constraint) else Constraint(*c) for c in constraints
        )
        for k, c in enumerate(cons):
            if len(c.coefficients) != num_vars:
                raise ValueError(
                    f"constraint {k} has {len(c.coefficients)} coefficients, "
                    f"expected {num_vars}"
                )
        if nonneg_vars is None:
            nonneg_vars = range(num_vars)
        nonneg = frozenset(nonneg_vars)
        if any(not 0 <= v < num_vars for v in nonneg):
            raise ValueError("nonneg_vars index out of range")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "nonneg_vars", nonneg)

    def value_at(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x) if c), Fraction(0))

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.num_vars:
            return False
        if any(x[v] < 0 for v in self.nonneg_vars):
            return False
        return all(c.holds(x) for c in self.constraints)

    def violated(self, x: Sequence[Fraction]) -> list[int]:
        """Indices of violated constraints; -1 stands for a sign bound."""
        bad = [k for k, c in enumerate(self.constraints) if not c.holds(x)]
        if any(x[v] < 0 for v in self.nonneg_vars):
            bad.append(-1)
        return bad


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    value: Fraction | None = None
    assignment: tuple[Fraction, ...] | None = field(default=None)

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class _Tableau:
    """Dense simplex tableau; the last entry of every row is the rhs."""

    def __init__(self, rows, basis, objectives):
        self.rows = rows
        self.basis = basis
        # objective rows hold reduced costs; last entry is -(current value)
        self.objectives = objectives

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        piv = row[c]
        if piv != 1:
            inv = 1 / piv
            row = [v * inv if v else v for v in row]
            self.rows[r] = row
        nz = [k for k, v in enumerate(row) if v]
        for other in self.rows:
            if other is row:
                continue
            f = other[c]
            if f:
                for k in nz:
                    other[k] -= f * row[k]
        for obj in self.objectives:
            f = obj[c]
            if f:
                for k in nz:
                    obj[k] -= f * row[k]
        self.basis[r] = c

    def run(self, obj_index: int, allowed: int) -> bool:
        """Bland's rule on columns ``< allowed``; False means unbounded."""
        obj = self.objectives[obj_index]
        rows = self.rows
        basis = self.basis
        while True:
            enter = -1
            for j in range(allowed):
                if obj[j] > 0:
                    enter = j
                    break
            if enter < 0:
                return True
            leave = -1
            best = None
            for r, row in enumerate(rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and basis[r] < basis[leave])
                    ):
                        best = ratio
                        leave = r
            if leave < 0:
                return False
            self.pivot(leave, enter)


def solve_lp(lp: LinearProgram) -> LpOutcome:
    """Solve ``lp`` exactly.

    The returned assignment is a basic feasible solution of the
    standard-form problem. It is checked against every original constraint
    before being returned.
    """
    n = lp.num_vars
    # column layout: [x+ for every var] [x- for free vars] [slack/surplus] [artificial]
    col_pos = list(range(n))
    free = [v for v in range(n) if v not in lp.nonneg_vars]
    col_neg = {v: n + k for k, v in enumerate(free)}
    nstruct = n + len(free)

    normalized = []
    for con in lp.constraints:
        coefs = [mpq(c.numerator, c.denominator) for c in con.coefficients]
        rhs = mpq(con.rhs.numerator, con.rhs.denominator)
        rel = con.relation
        # zero-rhs >= rows flip to <= so their slack can start in the basis
        if rhs < 0 or (rhs == 0 and rel is Relation.GE):
            coefs = [-c for c in coefs]
            rhs = -rhs
            if rel is Relation.LE:
                rel = Relation.GE
            elif rel is Relation.GE:
                rel = Relation.LE
        normalized.append((coefs, rel, rhs))

    nslack = sum(1 for _, rel, _ in normalized if rel is not Relation.EQ)
    nart = sum(1 for _, rel, _ in normalized if rel is not Relation.LE)
    art_start = nstruct + nslack
    ncols = art_start + nart
    zero = mpq(0)

    rows, basis = [], []
    slack_col, art_col = nstruct, art_start
    for coefs, rel, rhs in normalized:
        row = [zero] * (ncols + 1)
        for v in range(n):
            c = coefs[v]
            if c:
                row[col_pos[v]] = c
                if v in col_neg:
                    row[col_neg[v]] = -c
        row[-1] = rhs
        if rel is Relation.LE:
            row[slack_col] = mpq(1)
            basis.append(slack_col)
            slack_col += 1
        else:
            if rel is Relation.GE:
                row[slack_col] = mpq(-1)
                slack_col += 1
            row[art_col] = mpq(1)
            basis.append(art_col)
            art_col += 1
        rows.append(row)

    phase2 = [zero] * (ncols + 1)
    for v in range(n):
        c = lp.objective[v]
        if c:
            q = mpq(c.numerator, c.denominator)
            phase2[col_pos[v]] = q
            if v in col_neg:
                phase2[col_neg[v]] = -q
    phase1 = [zero] * (ncols + 1)
    for k in range(art_start, ncols):
        phase1[k] = mpq(-1)
    # price out the artificial basis
    for r, b in enumerate(basis):
        if b >= art_start:
            phase1 = [a + v for a, v in zip(phase1, rows[r])]

    tab = _Tableau(rows, basis, [phase1, phase2])
    if nart:
        tab.run(0, ncols)
        if tab.objectives[0][-1] != 0:
            return LpOutcome(LpStatus.INFEASIBLE)
        # drive zero-valued artificials out of the basis
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= art_start:
                row = tab.rows[r]
                col = next((j for j in range(art_start) if row[j]), None)
                if col is None:
                    del tab.rows[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, col)
            r += 1
        for row in tab.rows:
            del row[art_start:ncols]
        del tab.objectives[1][art_start:ncols]
        tab.objectives = [tab.objectives[1]]
    else:
        tab.objectives = [phase2]

    if not tab.run(0, art_start):
        return LpOutcome(LpStatus.UNBOUNDED)

    values = [zero] * art_start
    for r, b in enumerate(tab.basis):
        values[b] = tab.rows[r][-1]
    x = []
    for v in range(n):
        val = values[col_pos[v]]
        if v in col_neg:
            val = val - values[col_neg[v]]
        x.append(_frac(val))
    x = tuple(x)
    value = lp.value_at(x)
    if _frac(-tab.objectives[0][-1]) != value:
        raise LpInvariantError("tableau objective disagrees with assignment")
    bad = lp.violated(x)
    if bad:
        raise LpInvariantError(f"optimal assignment violates constraints {bad}")
    return LpOutcome(LpStatus.OPTIMAL, value, x)
