"""Checks against the UCD ``NormalizationTest.txt`` file (canonical columns only)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .normalizer import nfc, nfd
from .text import is_scalar_value, to_escapes
from .ucd import NormalizationTables


@dataclass
class ConformanceResult:
    checked: int = 0
    failures: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _column(raw: str) -> str:
    points = [int(tok, 16) for tok in raw.split()]
    if not points or not all(is_scalar_value(p) for p in points):
        raise ValueError(f"bad code point column {raw!r}")
    return "".join(map(chr, points))


def check_line(tables: NormalizationTables, columns: list[str]) -> list[str]:
    """Return a description of every broken identity for one test line."""
    c1, c2, c3, c4, c5 = columns
    problems = []

    def expect(label: str, expected: str, actual: str) -> None:
        if expected != actual:
            problems.append(f"{label}: expected {to_escapes(expected)}, got {to_escapes(actual)}")

    for label, source in (("c1", c1), ("c2", c2), ("c3", c3)):
        expect(f"NFC({label}) = c2", c2, nfc(tables, source))
        expect(f"NFD({label}) = c3", c3, nfd(tables, source))
    for label, source in (("c4", c4), ("c5", c5)):
        expect(f"NFC({label}) = c4", c4, nfc(tables, source))
        expect(f"NFD({label}) = c5", c5, nfd(tables, source))
    return problems


def run_conformance(lines: Iterable[str], tables: NormalizationTables) -> ConformanceResult:
    result = ConformanceResult()
    for lineno, line in enumerate(lines, 1):
        body = line.split("#", 1)[0].strip()
        if not body or body.startswith("@"):
            continue
        result.checked += 1
        fields = body.split(";")
        try:
            if len(fields) < 5:
                raise ValueError(f"expected 5 columns, got {len(fields)}")
            columns = [_column(raw) for raw in fields[:5]]
        except ValueError as exc:
            result.failures.append((lineno, f"malformed line: {exc}"))
            continue
        for problem in check_line(tables, columns):
            result.failures.append((lineno, problem))
    return result
