from __future__ import annotations

from collections import OrderedDict
from pathlib import Path

import pytest

from fsnorm.ucd import embedded_tables, load_ucd_dir

DATA_DIR = Path(__file__).parent / "data"
UCD_DIR = DATA_DIR / "ucd-10.0.0"

_criteria: "OrderedDict[str, list[str]]" = OrderedDict()


@pytest.fixture(scope="session")
def tables():
    return embedded_tables()


@pytest.fixture(scope="session")
def raw_tables():
    return load_ucd_dir(UCD_DIR)


@pytest.fixture
def criterion(record_property):
    """Tag an acceptance test with the criterion it covers."""

    def tag(label: str) -> None:
        record_property("criterion", label)

    return tag


def pytest_runtest_logreport(report):
    labels = [value for key, value in report.user_properties if key == "criterion"]
    if not labels:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        for label in labels:
            _criteria.setdefault(label, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcomes in _criteria.items():
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"[{status}] {label} ({len(outcomes)} check(s))")
