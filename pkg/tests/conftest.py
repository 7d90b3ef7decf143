import itertools

import pytest

from quadwalks import FIGURE1, StepSet


def brute_force_counts(S: StepSet, n: int) -> dict[tuple[int, int], int]:
    """Endpoint counts of all length-n step sequences that stay in the quadrant."""
    out: dict[tuple[int, int], int] = {}
    for seq in itertools.product(S.steps, repeat=n):
        x = y = 0
        for a, b in seq:
            x, y = x + a, y + b
            if x < 0 or y < 0:
                break
        else:
            out[(x, y)] = out.get((x, y), 0) + 1
    return out


@pytest.fixture(scope="session")
def figure1():
    return [StepSet.parse(s) for s in FIGURE1]


SIMPLE = StepSet.parse("N,S,E,W")
KREWERAS = StepSet.parse("W,S,NE")


ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = item.get_closest_marker("criterion")
    if crit is not None and rep.when == "call":
        ACCEPTANCE_RESULTS[crit.args[0]] = (rep.passed, crit.args[1])


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=int):
        ok, title = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}. {title}")
