import random

import pytest
from hypothesis import settings

from hardcore.graph_core import all_labelled_graphs, random_graph

# exhaustive per-example work makes wall-clock deadlines flaky on a loaded machine
settings.register_profile("default", deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def record(criterion: int, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion:>2}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_graphs(count, n_lo, n_hi, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(n_lo, n_hi)
        out.append(random_graph(n, rng.uniform(0.15, 0.85), rng))
    return out


@pytest.fixture(scope="session")
def small_exhaustive():
    """Every labelled graph on at most 6 vertices."""
    return [g for n in range(7) for g in all_labelled_graphs(n)]


@pytest.fixture(scope="session")
def random_7_to_12():
    return random_graphs(1000, 7, 12, seed=20240601)
