"""Two-player normal-form games with exact rational payoffs.

Payoffs, probabilities and every derived quantity are ``fractions.Fraction``
values. Strategies are identified by index; labels are only for display.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "GameFormatError",
    "Game",
    "MixedStrategy",
    "JointDistribution",
    "to_rational",
    "format_rational",
    "parse_game",
    "load_game",
    "serialize_game",
    "constant_sum",
    "expected_utility",
    "pure_strategy",
    "uniform_strategy",
]

_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^([+-]?\d+)/(\d+)$")
_DEC_RE = re.compile(r"^[+-]?(\d+\.\d*|\.\d+)$")


class GameFormatError(ValueError):
    """Raised for malformed game documents.

    ``location`` is a path into the document such as ``payoffs[1][0][1]``,
    or ``line 3 column 7`` for JSON syntax errors.
    """

    def __init__(self, message: str, location: str | None = None):
        self.message = message
        self.location = location
        if location:
            super().__init__(f"{message} (at {location})")
        else:
            super().__init__(message)


def to_rational(value: Any, location: str | None = None) -> Fraction:
    """Convert an integer, ``"p/q"`` or finite decimal string to a Fraction.

    Floats are rejected because they cannot be converted without rounding
    surprises; quote them as decimal strings instead.
    """
    if isinstance(value, bool):
        raise GameFormatError(f"malformed numeral {value!r}", location)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if _INT_RE.match(text):
            return Fraction(int(text))
        m = _FRAC_RE.match(text)
        if m:
            den = int(m.group(2))
            if den == 0:
                raise GameFormatError(f"zero denominator in {value!r}", location)
            return Fraction(int(m.group(1)), den)
        if _DEC_RE.match(text):
            return Fraction(text)
        raise GameFormatError(f"malformed numeral {value!r}", location)
    if isinstance(value, float):
        raise GameFormatError(
            f"non-integer JSON number {value!r}; quote it as a decimal string",
            location,
        )
    raise GameFormatError(f"malformed numeral {value!r}", location)


def format_rational(q: Fraction) -> str:
    """Reduced ``"p/q"`` text, or plain ``"n"`` for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _probabilities(values: Iterable[Any], what: str) -> tuple[Fraction, ...]:
    probs = tuple(to_rational(v) for v in values)
    if not probs:
        raise ValueError(f"{what} must be non-empty")
    if any(p < 0 for p in probs):
        raise ValueError(f"{what} has a negative entry")
    if sum(probs) != 1:
        raise ValueError(f"{what} sums to {sum(probs)}, not 1")
    return probs


@dataclass(frozen=True)
class MixedStrategy:
    """A probability distribution over one player's pure strategies."""

    player: int
    probabilities: tuple[Fraction, ...]

    def __init__(self, player: int, probabilities: Iterable[Any]):
        if player not in (1, 2):
            raise ValueError(f"player must be 1 or 2, got {player!r}")
        object.__setattr__(self, "player", player)
        object.__setattr__(
            self, "probabilities", _probabilities(probabilities, "mixed strategy")
        )

    def __len__(self) -> int:
        return len(self.probabilities)

    def __getitem__(self, i: int) -> Fraction:
        return self.probabilities[i]

    def __iter__(self):
        return iter(self.probabilities)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.probabilities) if p > 0)

    def is_pure(self) -> bool:
        return len(self.support) == 1


@dataclass(frozen=True)
class JointDistribution:
    """A distribution over outcome pairs, indexed ``[row][col]``."""

    probabilities: tuple[tuple[Fraction, ...], ...]

    def __init__(self, probabilities: Iterable[Iterable[Any]]):
        rows = tuple(tuple(to_rational(v) for v in row) for row in probabilities)
        if not rows or not rows[0]:
            raise ValueError("joint distribution must be non-empty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("joint distribution rows have unequal lengths")
        _probabilities((p for r in rows for p in r), "joint distribution")
        object.__setattr__(self, "probabilities", rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.probabilities), len(self.probabilities[0])

    def __getitem__(self, i: int) -> tuple[Fraction, ...]:
        return self.probabilities[i]

    def row_marginal(self) -> tuple[Fraction, ...]:
        return tuple(sum(r) for r in self.probabilities)

    def col_marginal(self) -> tuple[Fraction, ...]:
        return tuple(sum(col) for col in zip(*self.probabilities))

    def columns_used(self) -> tuple[int, ...]:
        return tuple(j for j, mass in enumerate(self.col_marginal()) if mass > 0)


@dataclass(frozen=True)
class Game:
    """A bimatrix game; ``payoffs[i][j] == (u1, u2)`` for row i, column j."""

    title: str
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    payoffs: tuple[tuple[tuple[Fraction, Fraction], ...], ...]

    def __init__(
        self,
        payoffs: Sequence[Sequence[Sequence[Any]]],
        row_labels: Sequence[str] | None = None,
        col_labels: Sequence[str] | None = None,
        title: str = "",
    ):
        cells = tuple(
            tuple((to_rational(c[0]), to_rational(c[1])) for c in row)
            for row in payoffs
        )
        if not cells or not cells[0]:
            raise ValueError("a game needs at least one strategy per player")
        ncols = len(cells[0])
        if any(len(row) != ncols for row in cells):
            raise ValueError("payoff rows have unequal lengths")
        if row_labels is None:
            row_labels = [f"r{i}" for i in range(len(cells))]
        if col_labels is None:
            col_labels = [f"c{j}" for j in range(ncols)]
        row_labels = tuple(str(s) for s in row_labels)
        col_labels = tuple(str(s) for s in col_labels)
        if len(row_labels) != len(cells) or len(col_labels) != ncols:
            raise ValueError(
                f"labels are {len(row_labels)}x{len(col_labels)} but payoffs "
                f"are {len(cells)}x{ncols}"
            )
        for who, labels in (("row", row_labels), ("column", col_labels)):
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate {who} labels")
        object.__setattr__(self, "title", str(title))
        object.__setattr__(self, "row_labels", row_labels)
        object.__setattr__(self, "col_labels", col_labels)
        object.__setattr__(self, "payoffs", cells)

    @classmethod
    def from_matrices(cls, u1, u2, **kwargs) -> "Game":
        return cls(
            [[(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(u1, u2)], **kwargs
        )

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def num_strategies(self, player: int) -> int:
        return self.shape[player - 1]

    def labels(self, player: int) -> tuple[str, ...]:
        return self.row_labels if player == 1 else self.col_labels

    def matrix(self, player: int) -> tuple[tuple[Fraction, ...], ...]:
        """Player's payoff matrix in the game's own row/column orientation."""
        k = player - 1
        return tuple(tuple(cell[k] for cell in row) for row in self.payoffs)

    def oriented(self, leader: int):
        """(leader matrix, follower matrix), both indexed [leader][follower]."""
        if leader == 1:
            return self.matrix(1), self.matrix(2)
        if leader == 2:
            return _transpose(self.matrix(2)), _transpose(self.matrix(1))
        raise ValueError(f"player must be 1 or 2, got {leader!r}")

    def transpose(self) -> "Game":
        """Swap the players' roles."""
        m, n = self.shape
        return Game(
            [[(self.payoffs[i][j][1], self.payoffs[i][j][0]) for i in range(m)]
             for j in range(n)],
            row_labels=self.col_labels,
            col_labels=self.row_labels,
            title=self.title,
        )

    def restrict(self, rows: Sequence[int], cols: Sequence[int]) -> "Game":
        return Game(
            [[self.payoffs[i][j] for j in cols] for i in rows],
            row_labels=[self.row_labels[i] for i in rows],
            col_labels=[self.col_labels[j] for j in cols],
            title=self.title,
        )


def _transpose(mat):
    return tuple(zip(*mat))


def pure_strategy(game: Game, player: int, index: int) -> MixedStrategy:
    n = game.num_strategies(player)
    return MixedStrategy(player, [1 if k == index else 0 for k in range(n)])


def uniform_strategy(game: Game, player: int) -> MixedStrategy:
    n = game.num_strategies(player)
    return MixedStrategy(player, [Fraction(1, n)] * n)


def _location(path: Sequence[Any]) -> str:
    out = ""
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


def _reject_constant(name: str):
    raise GameFormatError(f"non-finite numeral {name}")


def parse_game(document: str | bytes) -> Game:
    """Parse a JSON game document into a :class:`Game`."""
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GameFormatError(f"document is not UTF-8: {exc}") from None
    try:
        data = json.loads(
            document,
            parse_constant=_reject_constant,
            parse_float=lambda s: float(s),
        )
    except json.JSONDecodeError as exc:
        raise GameFormatError(
            f"syntax error: {exc.msg}", f"line {exc.lineno} column {exc.colno}"
        ) from None
    if not isinstance(data, dict):
        raise GameFormatError("top level must be a JSON object")
    for key in ("row_labels", "col_labels", "payoffs"):
        if key not in data:
            raise GameFormatError(f"missing key {key!r}")
    title = data.get("title", "")
    if not isinstance(title, str):
        raise GameFormatError("title must be a string", "title")

    labels = {}
    for key in ("row_labels", "col_labels"):
        value = data[key]
        if not isinstance(value, list) or not value:
            raise GameFormatError(f"{key} must be a non-empty list", key)
        for k, lab in enumerate(value):
            if not isinstance(lab, str):
                raise GameFormatError("labels must be strings", _location([key, k]))
        seen = set()
        for k, lab in enumerate(value):
            if lab in seen:
                raise GameFormatError(
                    f"duplicate label {lab!r}", _location([key, k])
                )
            seen.add(lab)
        labels[key] = value

    m, n = len(labels["row_labels"]), len(labels["col_labels"])
    payoffs = data["payoffs"]
    if not isinstance(payoffs, list):
        raise GameFormatError("payoffs must be a list", "payoffs")
    if len(payoffs) != m:
        raise GameFormatError(
            f"dimension mismatch: {m} row labels but {len(payoffs)} payoff rows",
            "payoffs",
        )
    cells = []
    for i, row in enumerate(payoffs):
        if not isinstance(row, list) or len(row) != n:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise GameFormatError(
                f"dimension mismatch: {n} column labels but row has {got} entries",
                _location(["payoffs", i]),
            )
        out_row = []
        for j, cell in enumerate(row):
            if not isinstance(cell, list) or len(cell) != 2:
                raise GameFormatError(
                    "each cell must be a [u1, u2] pair",
                    _location(["payoffs", i, j]),
                )
            out_row.append(
                tuple(
                    to_rational(v, _location(["payoffs", i, j, k]))
                    for k, v in enumerate(cell)
                )
            )
        cells.append(out_row)
    return Game(cells, labels["row_labels"], labels["col_labels"], title)


def load_game(path) -> Game:
    with open(path, "rb") as fh:
        return parse_game(fh.read())


def _numeral(q: Fraction):
    return q.numerator if q.denominator == 1 else format_rational(q)


def serialize_game(game: Game, indent: int | None = 2) -> str:
    """JSON text for ``game``; integral payoffs are written as JSON integers."""
    doc = {
        "title": game.title,
        "row_labels": list(game.row_labels),
        "col_labels": list(game.col_labels),
        "payoffs": [
            [[_numeral(a), _numeral(b)] for a, b in row] for row in game.payoffs
        ],
    }
    return json.dumps(doc, indent=indent, ensure_ascii=False)


def constant_sum(game: Game) -> Fraction | None:
    """The common value of u1 + u2 if it is the same in every cell, else None."""
    sums = {a + b for row in game.payoffs for a, b in row}
    return sums.pop() if len(sums) == 1 else None


def expected_utility(
    game: Game, sigma1: MixedStrategy, sigma2: MixedStrategy, player: int
) -> Fraction:
    m, n = game.shape
    if len(sigma1) != m or len(sigma2) != n:
        raise ValueError(
            f"strategy lengths {len(sigma1)}x{len(sigma2)} do not match game {m}x{n}"
        )
    k = player - 1
    if k not in (0, 1):
        raise ValueError(f"player must be 1 or 2, got {player!r}")
    total = Fraction(0)
    for i, p in enumerate(sigma1):
        if not p:
            continue
        row = game.payoffs[i]
        total += p * sum((q * row[j][k] for j, q in enumerate(sigma2) if q), Fraction(0))
    return total
