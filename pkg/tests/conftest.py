import random

import pytest

from pairmine.dataset import DRIVERS, DevMode, Project, ProjectSet, Rating


def make_project(pid, mode=DevMode.ORGANIC, loc=10.0, actual=50.0, **ratings):
    """Project with every driver at N unless overridden by keyword."""
    base = {name: Rating.N for name in DRIVERS}
    for key, value in ratings.items():
        base[key] = value
    return Project(id=pid, mode=mode, ratings=base, loc=loc, actual=actual)


def random_project(rng: random.Random, pid: int) -> Project:
    ratings = {name: Rating(rng.randrange(6)) for name in DRIVERS}
    return Project(
        id=pid,
        mode=rng.choice(list(DevMode)),
        ratings=ratings,
        loc=float(rng.randint(1, 500)),
        actual=float(rng.randint(1, 5000)),
    )


def random_project_set(rng: random.Random, size: int) -> ProjectSet:
    return ProjectSet(tuple(random_project(rng, pid + 1) for pid in range(size)))


@pytest.fixture
def rng():
    return random.Random(0xC0C0)


ACCEPTANCE_TITLES = {
    1: "pair generation count and speed",
    2: "general-scope rules and engine budgets",
    3: "embedded-scope rules",
    4: "organic-scope rules",
    5: "semidetached rule count and divergence warning",
    6: "trend sequences and turning points",
    7: "engine and oracle equivalence",
    8: "property suite",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    import re

    results = {}
    for status, reports in terminalreporter.stats.items():
        if status not in ("passed", "failed", "error"):
            continue
        for report in reports:
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            match = re.search(r"criterion_(\d+)", nodeid)
            if not match:
                continue
            number = int(match.group(1))
            if status == "passed" and getattr(report, "when", "call") == "call":
                results.setdefault(number, "PASS")
            elif status in ("failed", "error"):
                results[number] = "FAIL"
    if results:
        terminalreporter.write_sep("=", "acceptance criteria")
        for number in sorted(results):
            title = ACCEPTANCE_TITLES.get(number, "")
            terminalreporter.write_line(
                f"criterion {number} ({title}): {results[number]}"
            )
