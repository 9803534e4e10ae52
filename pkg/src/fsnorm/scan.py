"""Portability linting of directory trees and name manifests."""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from . import __version__
from .normalizer import hfs_decompose
from .policy import ALL_POLICIES, Filesystem, FilesystemPolicy, validate
from .text import SURROGATE_FIRST, SURROGATE_LAST, decode_name, looks_like_escapes, to_escapes
from .ucd import NormalizationTables

HFS_COLLISION_PAIR = "hfs_collision_pair"
WINDOWS_INVALID = "windows_invalid"
HFS_INVALID = "hfs_invalid"
EXT4_INVALID = "ext4_invalid"
NORMALIZATION_RENAME = "normalization_rename"

_INVALID_KIND = {
    Filesystem.WINDOWS_NTFS: WINDOWS_INVALID,
    Filesystem.HFS_PLUS: HFS_INVALID,
    Filesystem.EXT4: EXT4_INVALID,
}


@dataclass(frozen=True)
class Hazard:
    kind: str
    paths: tuple[str, ...]
    detail: str

    def sort_key(self):
        return (self.paths, self.kind, self.detail)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "paths": list(self.paths), "detail": self.detail}


@dataclass
class HazardReport:
    scanned_count: int
    hazards: list[Hazard]
    tables_version: tuple[int, int, int]
    errors: list[str] = field(default_factory=list)

    def count(self, kind: str) -> int:
        return sum(1 for h in self.hazards if h.kind == kind)

    def to_dict(self) -> dict:
        return {
            "tool_version": __version__,
            "tables_version": ".".join(map(str, self.tables_version)),
            "scanned_count": self.scanned_count,
            "hazards": [h.to_dict() for h in self.hazards],
            "errors": list(self.errors),
        }


class ManifestError(ValueError):
    pass


def read_manifest(lines: Iterable[str]) -> list[str]:
    """Relative paths from a newline-delimited manifest.

    Blank lines are skipped.  A line made only of ``U+XXXX`` escapes is
    decoded; every other line is taken literally (trailing spaces included).
    """
    paths = []
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip():
            continue
        try:
            paths.append(decode_name(line) if looks_like_escapes(line) else line)
        except ValueError as exc:
            raise ManifestError(f"manifest line {lineno}: {exc}") from None
    return paths


def walk_directory(root: str | os.PathLike) -> tuple[list[str], list[str]]:
    """Relative paths of every entry below *root*, plus per-entry errors.

    Raises OSError when *root* itself cannot be listed.
    """
    root = os.fspath(root)
    os.listdir(root)  # fail fast on an unreadable root
    paths: list[str] = []
    errors: list[str] = []

    def onerror(exc: OSError) -> None:
        errors.append(f"{exc.filename}: {exc.strerror}")

    for dirpath, dirnames, filenames in os.walk(root, onerror=onerror):
        rel = os.path.relpath(dirpath, root)
        prefix = "" if rel == "." else rel.replace(os.sep, "/") + "/"
        for name in sorted(dirnames + filenames):
            path = prefix + name
            if any(SURROGATE_FIRST <= ord(ch) <= SURROGATE_LAST for ch in path):
                errors.append(f"{path.encode('utf-8', 'surrogateescape')!r}: name is not valid UTF-8")
                continue
            paths.append(path)
    return paths, errors


def _split(path: str) -> tuple[str, str]:
    parent, _, name = path.rstrip("/").rpartition("/")
    return parent, name


def scan_paths(
    paths: Iterable[str],
    targets: Iterable[FilesystemPolicy],
    tables: NormalizationTables,
) -> HazardReport:
    """Lint names against *targets*: invalid names, HFS+ renames and HFS+ collisions."""
    targets = tuple(targets) or ALL_POLICIES
    hfs = next((p for p in targets if p.kind is Filesystem.HFS_PLUS), None)
    hazards: list[Hazard] = []
    errors: list[str] = []
    by_directory: dict[str, list[tuple[str, str]]] = defaultdict(list)
    scanned = 0

    for path in dict.fromkeys(paths):
        parent, name = _split(path)
        scanned += 1
        if not name:
            errors.append(f"{path!r}: empty name")
            continue
        hfs_valid = False
        for policy in targets:
            report = validate(policy, name, tables)
            if report.valid:
                hfs_valid = hfs_valid or policy is hfs
                continue
            detail = "; ".join(f"{v.rule_id}: {v.detail}" for v in report.violations)
            hazards.append(Hazard(_INVALID_KIND[policy.kind], (path,), detail))
        if hfs_valid:
            stored = hfs_decompose(tables, name)
            by_directory[parent].append((stored, path))
            if stored != name:
                hazards.append(
                    Hazard(
                        NORMALIZATION_RENAME,
                        (path,),
                        f"HfsPlus stores {to_escapes(name)} as {to_escapes(stored)}",
                    )
                )

    # Windows and ext4 store names verbatim, so distinct entries never collide there.
    for entries in by_directory.values():
        groups: dict[str, list[str]] = defaultdict(list)
        for stored, path in entries:
            groups[stored].append(path)
        for stored, members in groups.items():
            if len(members) > 1:
                hazards.append(
                    Hazard(
                        HFS_COLLISION_PAIR,
                        tuple(sorted(members)),
                        f"{len(members)} names share the HfsPlus stored form {to_escapes(stored)}",
                    )
                )

    hazards.sort(key=Hazard.sort_key)
    return HazardReport(scanned, hazards, tables.ucd_version, errors)


def format_text(report: HazardReport, escape: bool = False) -> str:
    show = to_escapes if escape else (lambda s: s)
    lines = [
        f"scanned {report.scanned_count} names with Unicode {'.'.join(map(str, report.tables_version))} tables",
    ]
    for hazard in report.hazards:
        lines.append(f"{hazard.kind}: " + " | ".join(show(p) for p in hazard.paths))
        lines.append(f"    {hazard.detail}")
    for error in report.errors:
        lines.append(f"error: {error}")
    lines.append(f"{len(report.hazards)} hazard(s), {len(report.errors)} error(s)")
    return "\n".join(lines)
