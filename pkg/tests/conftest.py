import pytest

from helpers import K_TEXT
from patternkit import parse_transactions

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key, title = marker.args
    failed = report.failed or (report.when == "call" and report.skipped)
    previous = _criteria.get(key, (title, True))
    _criteria[key] = (title, previous[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: int(k[1:])):
        title, ok = _criteria[key]
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture
def K():
    return parse_transactions(K_TEXT)
