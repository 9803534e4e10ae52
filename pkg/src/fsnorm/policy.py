"""Filename rules and stored forms for NTFS (Windows), HFS+ and ext4."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .normalizer import hfs_decompose
from .ucd import NormalizationTables, embedded_tables

# Stable rule identifiers; the JSON reports depend on them.
RESERVED_NAME = "reserved_name"
ILLEGAL_CHARACTER = "illegal_character"
CONTROL_CHARACTER = "control_character"
TRAILING_PERIOD_OR_SPACE = "trailing_period_or_space"
NAME_TOO_LONG = "name_too_long"
DOT_ENTRY = "dot_entry"

WINDOWS_ILLEGAL = frozenset('\\/:?*<>|"')
HFS_ILLEGAL = frozenset(":/")
EXT4_ILLEGAL = frozenset("/\0")

WINDOWS_RESERVED = frozenset(
    ["CON", "PRN", "AUX", "NUL"]
    + [f"COM{i}" for i in range(1, 10)]
    + [f"LPT{i}" for i in range(1, 10)]
)


class Filesystem(enum.Enum):
    WINDOWS_NTFS = "windows"
    HFS_PLUS = "macos"
    EXT4 = "linux"


class UnitKind(enum.Enum):
    UTF16_UNITS = "utf16_units"
    BYTES = "bytes"


@dataclass(frozen=True)
class FilesystemPolicy:
    kind: Filesystem
    max_name_units: int = 255

    @property
    def unit_kind(self) -> UnitKind:
        return UnitKind.BYTES if self.kind is Filesystem.EXT4 else UnitKind.UTF16_UNITS

    @property
    def label(self) -> str:
        return _LABELS[self.kind]

    def name_length(self, name: str) -> int:
        if self.unit_kind is UnitKind.BYTES:
            return len(name.encode("utf-8"))
        return len(name.encode("utf-16-le")) // 2

    def __str__(self) -> str:
        return self.label


_LABELS = {
    Filesystem.WINDOWS_NTFS: "WindowsNtfs",
    Filesystem.HFS_PLUS: "HfsPlus",
    Filesystem.EXT4: "Ext4",
}

WINDOWS_NTFS = FilesystemPolicy(Filesystem.WINDOWS_NTFS)
HFS_PLUS = FilesystemPolicy(Filesystem.HFS_PLUS)
EXT4 = FilesystemPolicy(Filesystem.EXT4)
ALL_POLICIES = (WINDOWS_NTFS, HFS_PLUS, EXT4)

_ALIASES = {
    "windows": WINDOWS_NTFS,
    "ntfs": WINDOWS_NTFS,
    "windowsntfs": WINDOWS_NTFS,
    "macos": HFS_PLUS,
    "mac": HFS_PLUS,
    "hfs": HFS_PLUS,
    "hfs+": HFS_PLUS,
    "hfsplus": HFS_PLUS,
    "linux": EXT4,
    "ext4": EXT4,
}


def policy_by_name(name: str) -> FilesystemPolicy:
    try:
        return _ALIASES[name.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown filesystem {name!r} (expected windows, macos or linux)") from None


def parse_targets(value: str) -> tuple[FilesystemPolicy, ...]:
    """``"windows,macos"`` -> policies in canonical order; ``"all"`` -> every policy."""
    if value.strip().lower() == "all":
        return ALL_POLICIES
    chosen = {policy_by_name(part) for part in value.split(",") if part.strip()}
    if not chosen:
        raise ValueError("no target filesystem given")
    return tuple(p for p in ALL_POLICIES if p in chosen)


@dataclass(frozen=True)
class Violation:
    rule_id: str
    detail: str
    offending_span: tuple[int, int]

    def to_dict(self) -> dict:
        return {"rule_id": self.rule_id, "detail": self.detail, "offending_span": list(self.offending_span)}


@dataclass(frozen=True)
class ValidityReport:
    policy: FilesystemPolicy
    name: str
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    @property
    def rule_ids(self) -> list[str]:
        return [v.rule_id for v in self.violations]

    def to_dict(self) -> dict:
        return {
            "target": self.policy.label,
            "valid": self.valid,
            "violations": [v.to_dict() for v in self.violations],
        }


class InvalidNameError(ValueError):
    def __init__(self, report: ValidityReport):
        rules = ", ".join(report.rule_ids)
        super().__init__(f"name {report.name!r} is invalid on {report.policy.label}: {rules}")
        self.report = report


def _char_violations(name: str, illegal: frozenset[str], controls: bool) -> list[Violation]:
    found = []
    for i, ch in enumerate(name):
        if ch in illegal:
            found.append(Violation(ILLEGAL_CHARACTER, f"character {ch!r} (U+{ord(ch):04X}) is not allowed", (i, i + 1)))
        elif controls and ord(ch) < 32:
            found.append(Violation(CONTROL_CHARACTER, f"control character U+{ord(ch):04X}", (i, i + 1)))
    return found


def _windows_rules(name: str) -> list[Violation]:
    found = _char_violations(name, WINDOWS_ILLEGAL, controls=True)
    stem = name.split(".", 1)[0]
    if stem.isascii() and stem.upper() in WINDOWS_RESERVED:
        found.append(Violation(RESERVED_NAME, f"{stem!r} is a reserved device name", (0, len(stem))))
    if name[-1] in ". ":
        found.append(
            Violation(TRAILING_PERIOD_OR_SPACE, "name ends with a period or space", (len(name) - 1, len(name)))
        )
    return found


def validate(policy: FilesystemPolicy, name: str, tables: NormalizationTables | None = None) -> ValidityReport:
    """Check *name* against every rule of *policy*.

    HFS+ length is measured after decomposition.  *tables* defaults to the
    embedded Unicode 10.0 tables here and in the other functions of this module.
    """
    if not name:
        raise ValueError("file name must not be empty")
    if name in (".", ".."):
        return ValidityReport(policy, name, (Violation(DOT_ENTRY, f"{name!r} is reserved", (0, len(name))),))

    if policy.kind is Filesystem.WINDOWS_NTFS:
        violations = _windows_rules(name)
        measured = name
    elif policy.kind is Filesystem.HFS_PLUS:
        violations = _char_violations(name, HFS_ILLEGAL, controls=False)
        measured = hfs_decompose(tables or embedded_tables(), name)
    else:
        violations = _char_violations(name, EXT4_ILLEGAL, controls=False)
        measured = name

    length = policy.name_length(measured)
    if length > policy.max_name_units:
        violations.append(
            Violation(
                NAME_TOO_LONG,
                f"{length} {policy.unit_kind.value} exceeds the limit of {policy.max_name_units}",
                (0, len(name)),
            )
        )
    violations.sort(key=lambda v: (v.offending_span, v.rule_id))
    return ValidityReport(policy, name, tuple(violations))


def stored_form(policy: FilesystemPolicy, name: str, tables: NormalizationTables | None = None) -> str:
    """The exact sequence the filesystem records for *name*.

    Raises InvalidNameError when *name* breaks a rule of *policy*.
    """
    report = validate(policy, name, tables)
    if not report.valid:
        raise InvalidNameError(report)
    if policy.kind is Filesystem.HFS_PLUS:
        return hfs_decompose(tables or embedded_tables(), name)
    return name


def encode_stored(policy: FilesystemPolicy, stored: str) -> bytes:
    """On-disk encoding of a stored name: UTF-16LE (NTFS), UTF-16BE (HFS+), UTF-8 (ext4)."""
    if policy.kind is Filesystem.WINDOWS_NTFS:
        return stored.encode("utf-16-le")
    if policy.kind is Filesystem.HFS_PLUS:
        return stored.encode("utf-16-be")
    return stored.encode("utf-8")


def names_collide(policy: FilesystemPolicy, a: str, b: str, tables: NormalizationTables | None = None) -> bool:
    return stored_form(policy, a, tables) == stored_form(policy, b, tables)
