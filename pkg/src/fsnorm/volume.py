"""In-memory volumes with the naming semantics of each filesystem model.

A volume is a flat namespace mapping stored names to opaque content ids.
Mutation is single-writer; callers serialize access themselves.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import ClassVar, Union

from .policy import FilesystemPolicy, ValidityReport, stored_form, validate
from .text import to_escapes
from .ucd import NormalizationTables, embedded_tables


class Mode(enum.Enum):
    """How ``create`` treats a name whose stored form already exists."""

    EXCLUSIVE = "exclusive"
    TRUNCATE = "truncate"

    @classmethod
    def parse(cls, value: "Mode | str") -> "Mode":
        if isinstance(value, cls):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"unknown mode {value!r} (expected exclusive or truncate)") from None


def name_json(name: str) -> dict:
    return {"text": name, "code_points": to_escapes(name)}


@dataclass(frozen=True)
class Created:
    kind: ClassVar[str] = "Created"
    stored: str


@dataclass(frozen=True)
class Overwrote:
    kind: ClassVar[str] = "Overwrote"
    stored: str
    previous: str


@dataclass(frozen=True)
class AlreadyExists:
    kind: ClassVar[str] = "AlreadyExistsError"
    stored: str


@dataclass(frozen=True)
class InvalidName:
    kind: ClassVar[str] = "InvalidName"
    report: ValidityReport


CreateOutcome = Union[Created, Overwrote, AlreadyExists, InvalidName]


class SimVolume:
    def __init__(self, policy: FilesystemPolicy, tables: NormalizationTables | None = None):
        self.policy = policy
        self.tables = tables or embedded_tables()
        self.entries: dict[str, str] = {}
        self.creation_log: list[tuple[str, CreateOutcome]] = []

    def __repr__(self) -> str:
        return f"SimVolume({self.policy.label}, {len(self.entries)} entries)"

    def __len__(self) -> int:
        return len(self.entries)

    def names(self) -> list[str]:
        """Stored names in creation order."""
        return list(self.entries)

    def create(self, name: str, content: str, mode: Mode | str = Mode.EXCLUSIVE) -> CreateOutcome:
        mode = Mode.parse(mode)
        report = validate(self.policy, name, self.tables)
        if not report.valid:
            outcome: CreateOutcome = InvalidName(report)
        else:
            stored = stored_form(self.policy, name, self.tables)
            previous = self.entries.get(stored)
            if previous is None:
                self.entries[stored] = content
                outcome = Created(stored)
            elif mode is Mode.EXCLUSIVE:
                outcome = AlreadyExists(stored)
            else:
                self.entries[stored] = content
                outcome = Overwrote(stored, previous)
        self.creation_log.append((name, outcome))
        return outcome

    def lookup(self, name: str, diagnostics: list[str] | None = None) -> str | None:
        """Content id stored under *name*, resolved through the stored form.

        Invalid names resolve to None; the reason is appended to *diagnostics*
        when a list is supplied.
        """
        report = validate(self.policy, name, self.tables) if name else None
        if report is None or not report.valid:
            if diagnostics is not None:
                rules = ", ".join(report.rule_ids) if report else "empty name"
                diagnostics.append(f"{to_escapes(name) or '<empty>'}: invalid on {self.policy.label} ({rules})")
            return None
        return self.entries.get(stored_form(self.policy, name, self.tables))


# -- transfers -------------------------------------------------------------


@dataclass(frozen=True)
class Transferred:
    kind: ClassVar[str] = "Transferred"
    source: str
    stored_as: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "source": name_json(self.source), "stored_as": name_json(self.stored_as)}


@dataclass(frozen=True)
class RenamedByNormalization:
    kind: ClassVar[str] = "RenamedByNormalization"
    source: str
    stored_as: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "source": name_json(self.source), "stored_as": name_json(self.stored_as)}


@dataclass(frozen=True)
class Unrepresentable:
    kind: ClassVar[str] = "Unrepresentable"
    source: str
    report: ValidityReport

    def to_dict(self) -> dict:
        return {"kind": self.kind, "source": name_json(self.source), "validity": self.report.to_dict()}


@dataclass(frozen=True)
class Collided:
    kind: ClassVar[str] = "Collided"
    source: str
    existing: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "source": name_json(self.source), "existing": name_json(self.existing)}


TransferEntry = Union[Transferred, RenamedByNormalization, Unrepresentable, Collided]
TRANSFER_KINDS = ("Transferred", "RenamedByNormalization", "Unrepresentable", "Collided")


@dataclass
class TransferReport:
    source_policy: FilesystemPolicy
    destination_policy: FilesystemPolicy
    mode: Mode
    entries: list[TransferEntry] = field(default_factory=list)

    @property
    def summary(self) -> dict[str, int]:
        counts = Counter(entry.kind for entry in self.entries)
        return {kind: counts.get(kind, 0) for kind in TRANSFER_KINDS}

    def count(self, kind: str) -> int:
        return sum(1 for entry in self.entries if entry.kind == kind)

    def to_dict(self) -> dict:
        return {
            "source": self.source_policy.label,
            "destination": self.destination_policy.label,
            "mode": self.mode.value,
            "entries": [entry.to_dict() for entry in self.entries],
            "summary": self.summary,
        }


def transfer(
    source: SimVolume, destination_policy: FilesystemPolicy, mode: Mode | str = Mode.EXCLUSIVE
) -> tuple[SimVolume, TransferReport]:
    """Copy every file of *source* onto a fresh volume governed by *destination_policy*.

    Files are processed in source creation order; every file yields exactly
    one report entry.
    """
    mode = Mode.parse(mode)
    destination = SimVolume(destination_policy, source.tables)
    report = TransferReport(source.policy, destination_policy, mode)
    for name, content in source.entries.items():
        outcome = destination.create(name, content, mode)
        if isinstance(outcome, InvalidName):
            report.entries.append(Unrepresentable(name, outcome.report))
        elif isinstance(outcome, (AlreadyExists, Overwrote)):
            report.entries.append(Collided(name, outcome.stored))
        elif outcome.stored != name:
            report.entries.append(RenamedByNormalization(name, outcome.stored))
        else:
            report.entries.append(Transferred(name, outcome.stored))
    return destination, report
