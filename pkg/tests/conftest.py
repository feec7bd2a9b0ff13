import time

import pytest

from lrclp import catalog

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test embodies")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    yield
    item.user_properties.append(("elapsed", time.perf_counter() - start))


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marks = dict(report.user_properties).get("criterion")
    if marks is None:
        return
    number, title = marks
    entry = _criteria.setdefault(number, {"title": title, "ok": True, "elapsed": 0.0})
    entry["ok"] &= report.passed
    entry["elapsed"] += dict(report.user_properties).get("elapsed", 0.0)


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", tuple(m.args)))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        status = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status}  ({e['elapsed']:.2f} s)  {e['title']}")


@pytest.fixture(scope="session")
def ex1():
    return catalog.example1()


@pytest.fixture(scope="session")
def ex2():
    return catalog.example2()


@pytest.fixture(scope="session")
def all_entries():
    return catalog.entries()
