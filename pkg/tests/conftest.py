from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture
def fixture_csv():
    return DATA / "uswtdb_fixture.csv"


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and (report.when == "call" or report.outcome != "passed"):
        _acceptance[report.nodeid] = report.outcome


def pytest_collection_modifyitems(items):
    for item in items:
        if "test_acceptance.py" in item.nodeid:
            doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
            _acceptance.setdefault(item.nodeid, "not run")
            _titles[item.nodeid] = doc


_titles = {}


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _acceptance.items():
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {_titles.get(nodeid, nodeid)}")
