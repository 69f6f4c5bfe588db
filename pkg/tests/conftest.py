import random

import pytest

from commgraph.gf2 import Gf2Vec


def vec(s: str) -> Gf2Vec:
    """'0101' -> coefficient of basis vector 1 first."""
    return Gf2Vec(sum(1 << i for i, ch in enumerate(s) if ch == "1"), len(s))


@pytest.fixture
def rng():
    return random.Random(20261016)


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    def record(criterion: str, passed: bool, summary: str) -> None:
        ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {criterion}: {summary}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
