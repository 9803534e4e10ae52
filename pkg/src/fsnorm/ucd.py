"""Canonical normalization tables built from the Unicode Character Database.

Two sources produce the same :class:`NormalizationTables`:

* :func:`load_ucd` parses ``UnicodeData.txt`` and ``CompositionExclusions.txt``
  text (``--ucd-dir`` on the command line);
* :func:`embedded_tables` reads the compact JSON snapshot shipped in
  ``fsnorm/data``, produced from the same files by ``tools/build_tables.py``.

Only canonical data is kept.  Compatibility mappings (``<tag> ...``) are
dropped while parsing, and Hangul syllables are handled algorithmically.
"""

from __future__ import annotations

import functools
import json
import logging
import os
import re
from dataclasses import dataclass, field
from importlib import resources
from types import MappingProxyType
from typing import Iterable, Mapping

logger = logging.getLogger(__name__)

DEFAULT_UCD_VERSION = (10, 0, 0)
EMBEDDED_RESOURCE = "ucd-10.0.0.json"

# Hangul syllable arithmetic (UAX #15, "Hangul Syllable Composition")
S_BASE = 0xAC00
L_BASE = 0x1100
V_BASE = 0x1161
T_BASE = 0x11A7
L_COUNT = 19
V_COUNT = 21
T_COUNT = 28
N_COUNT = V_COUNT * T_COUNT
S_COUNT = L_COUNT * N_COUNT

Version = tuple[int, int, int]

_VERSION_RE = re.compile(r"-(\d+)\.(\d+)\.(\d+)\.txt")


class UcdParseError(ValueError):
    def __init__(self, source: str, lineno: int, message: str):
        super().__init__(f"{source}:{lineno}: {message}")
        self.source = source
        self.lineno = lineno


@dataclass(frozen=True)
class NormalizationTables:
    """Immutable canonical-normalization lookup tables.

    ``decompositions`` holds the raw one-level mapping from the UCD,
    ``full_decompositions`` the recursive expansion of every key.
    ``combining_class`` lists only non-zero classes.
    """

    decompositions: Mapping[int, tuple[int, ...]]
    full_decompositions: Mapping[int, tuple[int, ...]]
    combining_class: Mapping[int, int]
    primary_composites: Mapping[tuple[int, int], int]
    composition_exclusions: frozenset[int]
    ucd_version: Version
    names: Mapping[int, str] = field(default_factory=dict, compare=False, repr=False)

    @property
    def version_string(self) -> str:
        return ".".join(str(part) for part in self.ucd_version)


def ccc_of(tables: NormalizationTables, cp: int) -> int:
    return tables.combining_class.get(cp, 0)


def is_hangul_syllable(cp: int) -> bool:
    return S_BASE <= cp < S_BASE + S_COUNT


def hangul_decomposition(cp: int) -> tuple[int, ...]:
    """Full decomposition of a precomposed Hangul syllable into jamo."""
    index = cp - S_BASE
    lead = L_BASE + index // N_COUNT
    vowel = V_BASE + (index % N_COUNT) // T_COUNT
    trail = index % T_COUNT
    if trail:
        return (lead, vowel, T_BASE + trail)
    return (lead, vowel)


def _hangul_composite(first: int, second: int) -> int | None:
    if L_BASE <= first < L_BASE + L_COUNT and V_BASE <= second < V_BASE + V_COUNT:
        return S_BASE + ((first - L_BASE) * V_COUNT + (second - V_BASE)) * T_COUNT
    if (
        is_hangul_syllable(first)
        and (first - S_BASE) % T_COUNT == 0
        and T_BASE < second < T_BASE + T_COUNT
    ):
        return first + (second - T_BASE)
    return None


def primary_composite(tables: NormalizationTables, first: int, second: int) -> int | None:
    """Return the primary composite of ``(first, second)`` or None."""
    composite = tables.primary_composites.get((first, second))
    if composite is not None:
        return composite
    return _hangul_composite(first, second)


# -- parsing ---------------------------------------------------------------


def _lines(source: str | Iterable[str]) -> Iterable[str]:
    if isinstance(source, str):
        return source.splitlines()
    return source


def _hex(token: str, source: str, lineno: int) -> int:
    try:
        value = int(token, 16)
    except ValueError:
        raise UcdParseError(source, lineno, f"bad code point {token!r}") from None
    if not 0 <= value <= 0x10FFFF:
        raise UcdParseError(source, lineno, f"code point out of range: {token}")
    return value


def _parse_unicode_data(source: str | Iterable[str]):
    decompositions: dict[int, tuple[int, ...]] = {}
    classes: dict[int, int] = {}
    names: dict[int, str] = {}
    for lineno, line in enumerate(_lines(source), 1):
        line = line.rstrip("\r\n")
        if not line.strip():
            continue
        fields = line.split(";")
        if len(fields) < 6:
            raise UcdParseError("UnicodeData.txt", lineno, f"expected at least 6 fields, got {len(fields)}")
        cp = _hex(fields[0].strip(), "UnicodeData.txt", lineno)
        raw_ccc = fields[3].strip()
        try:
            ccc = int(raw_ccc) if raw_ccc else 0
        except ValueError:
            raise UcdParseError("UnicodeData.txt", lineno, f"bad combining class {raw_ccc!r}") from None
        if not 0 <= ccc <= 254:
            raise UcdParseError("UnicodeData.txt", lineno, f"combining class out of range: {ccc}")
        if ccc:
            classes[cp] = ccc
        name = fields[1].strip()
        if name and not name.startswith("<"):
            names[cp] = name
        raw_decomp = fields[5].strip()
        if not raw_decomp or raw_decomp.startswith("<"):
            continue
        mapping = tuple(_hex(tok, "UnicodeData.txt", lineno) for tok in raw_decomp.split())
        if not 1 <= len(mapping) <= 2:
            raise UcdParseError(
                "UnicodeData.txt", lineno, f"canonical mapping must have 1 or 2 code points, got {len(mapping)}"
            )
        decompositions[cp] = mapping
    return decompositions, classes, names


def _parse_exclusions(source: str | Iterable[str]) -> tuple[set[int], Version | None]:
    exclusions: set[int] = set()
    version = None
    for lineno, line in enumerate(_lines(source), 1):
        if version is None and line.startswith("#"):
            match = _VERSION_RE.search(line)
            if match:
                version = tuple(int(part) for part in match.groups())
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        token = body.split()[0]
        if ".." in token:
            lo, _, hi = token.partition("..")
            first = _hex(lo, "CompositionExclusions.txt", lineno)
            last = _hex(hi, "CompositionExclusions.txt", lineno)
            if last < first:
                raise UcdParseError("CompositionExclusions.txt", lineno, f"empty range {token}")
            exclusions.update(range(first, last + 1))
        else:
            exclusions.add(_hex(token, "CompositionExclusions.txt", lineno))
    return exclusions, version


# -- table construction ----------------------------------------------------


def _expand(decompositions: Mapping[int, tuple[int, ...]]) -> dict[int, tuple[int, ...]]:
    full: dict[int, tuple[int, ...]] = {}

    def expand(cp: int) -> tuple[int, ...]:
        done = full.get(cp)
        if done is not None:
            return done
        mapping = decompositions.get(cp)
        if mapping is None:
            return (cp,)
        result = tuple(part for child in mapping for part in expand(child))
        full[cp] = result
        return result

    for cp in decompositions:
        expand(cp)
    return full


def build_tables(
    decompositions: Mapping[int, tuple[int, ...]],
    combining_class: Mapping[int, int],
    composition_exclusions: Iterable[int],
    ucd_version: Version,
    names: Mapping[int, str] | None = None,
) -> NormalizationTables:
    """Derive full decompositions and primary composites from raw UCD data."""
    decompositions = {
        cp: tuple(mapping)
        for cp, mapping in decompositions.items()
        if not is_hangul_syllable(cp)
    }
    combining_class = {cp: ccc for cp, ccc in combining_class.items() if ccc}
    exclusions = frozenset(composition_exclusions)

    composites: dict[tuple[int, int], int] = {}
    for cp, mapping in decompositions.items():
        if len(mapping) != 2 or cp in exclusions:
            continue
        if combining_class.get(mapping[0], 0) != 0:
            continue
        previous = composites.setdefault(mapping, cp)
        if previous != cp:
            raise ValueError(f"pair {mapping} composes to both U+{previous:04X} and U+{cp:04X}")

    return NormalizationTables(
        decompositions=MappingProxyType(decompositions),
        full_decompositions=MappingProxyType(_expand(decompositions)),
        combining_class=MappingProxyType(combining_class),
        primary_composites=MappingProxyType(composites),
        composition_exclusions=exclusions,
        ucd_version=tuple(ucd_version),
        names=MappingProxyType(dict(names or {})),
    )


def load_ucd(
    unicode_data_source: str | Iterable[str],
    exclusions_source: str | Iterable[str],
    version: Version | None = None,
) -> NormalizationTables:
    """Build tables from ``UnicodeData.txt`` and ``CompositionExclusions.txt`` text.

    The version is read from the ``# CompositionExclusions-X.Y.Z.txt`` header
    unless given explicitly.
    """
    decompositions, classes, names = _parse_unicode_data(unicode_data_source)
    exclusions, found_version = _parse_exclusions(exclusions_source)
    if version is None:
        version = found_version
    if version is None:
        logger.warning("no UCD version header found; recording 0.0.0")
        version = (0, 0, 0)
    return build_tables(decompositions, classes, exclusions, version, names)


def load_ucd_dir(path: str | os.PathLike) -> NormalizationTables:
    """Load ``UnicodeData.txt`` and ``CompositionExclusions.txt`` from *path*."""
    with open(os.path.join(path, "UnicodeData.txt"), encoding="utf-8") as data, open(
        os.path.join(path, "CompositionExclusions.txt"), encoding="utf-8"
    ) as excl:
        return load_ucd(data, excl)


# -- compact embedded form -------------------------------------------------


def to_compact(tables: NormalizationTables) -> dict:
    """Serialize the raw (non-derived) parts of *tables* into a JSON-ready dict."""
    runs: list[list[int]] = []
    for cp in sorted(tables.combining_class):
        ccc = tables.combining_class[cp]
        if runs and runs[-1][1] == cp - 1 and runs[-1][2] == ccc:
            runs[-1][1] = cp
        else:
            runs.append([cp, cp, ccc])
    return {
        "ucd_version": list(tables.ucd_version),
        "combining_class": runs,
        "decompositions": {
            f"{cp:04X}": " ".join(f"{part:04X}" for part in mapping)
            for cp, mapping in sorted(tables.decompositions.items())
        },
        "composition_exclusions": [f"{cp:04X}" for cp in sorted(tables.composition_exclusions)],
    }


def from_compact(data: Mapping) -> NormalizationTables:
    classes = {}
    for first, last, ccc in data["combining_class"]:
        for cp in range(first, last + 1):
            classes[cp] = ccc
    decompositions = {
        int(key, 16): tuple(int(part, 16) for part in value.split())
        for key, value in data["decompositions"].items()
    }
    exclusions = [int(cp, 16) for cp in data["composition_exclusions"]]
    return build_tables(decompositions, classes, exclusions, tuple(data["ucd_version"]))


@functools.lru_cache(maxsize=None)
def embedded_tables() -> NormalizationTables:
    """The tables shipped with the package (Unicode 10.0.0)."""
    raw = resources.files("fsnorm.data").joinpath(EMBEDDED_RESOURCE).read_text(encoding="utf-8")
    return from_compact(json.loads(raw))


def get_tables(ucd_dir: str | os.PathLike | None = None) -> NormalizationTables:
    if ucd_dir is None:
        return embedded_tables()
    return load_ucd_dir(ucd_dir)
