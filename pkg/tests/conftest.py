import pytest

from commitgame import Game


def commitment_advantage():
    return Game([[(1, 1), (3, 0)], [(0, 0), (2, 1)]], ["U", "D"], ["L", "R"], "commitment advantage")


def matching_pennies():
    return Game([[(1, -1), (-1, 1)], [(-1, 1), (1, -1)]], ["H", "T"], ["H", "T"], "pennies")


def rock_paper_scissors():
    u = [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]
    labels = ["Rock", "Paper", "Scissors"]
    return Game.from_matrices(u, [[-v for v in r] for r in u], row_labels=labels, col_labels=labels)


def prisoners_dilemma():
    return Game([[(3, 3), (0, 5)], [(5, 0), (1, 1)]], ["C", "D"], ["C", "D"], "pd")


def battle_of_sexes():
    return Game([[(2, 1), (0, 0)], [(0, 0), (1, 2)]], ["A", "B"], ["A", "B"], "bos")


def chain_game():
    # eliminations cascade: row c, column z, row b, column y
    u1 = [[3, 3, 0], [2, 2, 5], [1, 1, -1]]
    u2 = [[2, 1, 0], [0, 2, 1], [0, 0, 3]]
    return Game.from_matrices(u1, u2, row_labels="abc", col_labels="xyz", title="chain")


@pytest.fixture
def advantage():
    return commitment_advantage()


@pytest.fixture
def pennies():
    return matching_pennies()


@pytest.fixture
def rps():
    return rock_paper_scissors()


@pytest.fixture
def pd():
    return prisoners_dilemma()


@pytest.fixture
def bos():
    return battle_of_sexes()


@pytest.fixture
def chain():
    return chain_game()


# one line per acceptance criterion, printed after the run
ACCEPTANCE_RESULTS: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{name}: {ACCEPTANCE_RESULTS[name]}")
