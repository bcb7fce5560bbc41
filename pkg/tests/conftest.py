import pytest
from hypothesis import HealthCheck, settings

import lck

settings.register_profile(
    "lck", deadline=None, derandomize=True, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("lck")

_criteria: dict[str, str] = {}


@pytest.fixture(scope="session")
def corpus():
    """Parsed corpus workspaces, keyed by file stem."""
    cache = {}

    def load(name):
        if name not in cache:
            cache[name] = lck.parse_file(lck.corpus_file(name))
        return cache[name]

    return load


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = "test_acceptance.py::test_criterion_"
    if marker in report.nodeid:
        tail = report.nodeid.split(marker, 1)[1]
        _criteria[tail] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for tail in sorted(_criteria, key=lambda t: int(t.split("_")[0])):
        num, _, name = tail.partition("_")
        terminalreporter.write_line(f"criterion {num} {_criteria[tail]}  {name.replace('_', ' ')}")
