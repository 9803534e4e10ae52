"""Canonical normalization: NFD, NFC and the HFS+ decomposition variant.

All functions take the tables explicitly and operate on ``str``.
"""

from __future__ import annotations

import enum

from .ucd import (
    NormalizationTables,
    ccc_of,
    hangul_decomposition,
    is_hangul_syllable,
    primary_composite,
)

# Ranges HFS+ leaves composed when it decomposes a name.
HFS_EXCLUSION_RANGES: tuple[tuple[int, int], ...] = (
    (0x2000, 0x2FFF),
    (0xF900, 0xFAFF),
    (0x2F800, 0x2FAFF),
)


class NormalizationForm(enum.Enum):
    NFC = "nfc"
    NFD = "nfd"
    HFSD = "hfsd"

    @classmethod
    def parse(cls, value: str) -> "NormalizationForm":
        try:
            return cls(value.lower())
        except ValueError:
            choices = ", ".join(form.value for form in cls)
            raise ValueError(f"unknown normalization form {value!r} (expected one of {choices})") from None


def in_hfs_exclusion(cp: int) -> bool:
    return any(lo <= cp <= hi for lo, hi in HFS_EXCLUSION_RANGES)


def _reorder(tables: NormalizationTables, points: list[int]) -> list[int]:
    # Adjacent-swap bubble passes: a swap happens only when both neighbours are
    # non-starters and strictly out of order, so starters never move and equal
    # classes keep their relative order.
    classes = [ccc_of(tables, cp) for cp in points]
    n = len(points)
    swapped = True
    while swapped:
        swapped = False
        for i in range(1, n):
            left, right = classes[i - 1], classes[i]
            if right and left > right:
                points[i - 1], points[i] = points[i], points[i - 1]
                classes[i - 1], classes[i] = right, left
                swapped = True
    return points


def canonical_order(tables: NormalizationTables, text: str) -> str:
    return "".join(map(chr, _reorder(tables, [ord(ch) for ch in text])))


def _decompose(tables: NormalizationTables, text: str, keep_composed=None) -> list[int]:
    full = tables.full_decompositions
    points: list[int] = []
    for ch in text:
        cp = ord(ch)
        if keep_composed is not None and keep_composed(cp):
            points.append(cp)
        elif is_hangul_syllable(cp):
            points.extend(hangul_decomposition(cp))
        else:
            mapping = full.get(cp)
            if mapping is None:
                points.append(cp)
            else:
                points.extend(mapping)
    return _reorder(tables, points)


def nfd(tables: NormalizationTables, text: str) -> str:
    return "".join(map(chr, _decompose(tables, text)))


def hfs_decompose(tables: NormalizationTables, text: str) -> str:
    """NFD, except that code points in :data:`HFS_EXCLUSION_RANGES` stay composed.

    Kept code points still take part in canonical ordering.
    """
    return "".join(map(chr, _decompose(tables, text, in_hfs_exclusion)))


def _compose(tables: NormalizationTables, points: list[int]) -> list[int]:
    result: list[int] = []
    starter = None  # index into result of the last starter
    last_class = 0
    for cp in points:
        ccc = ccc_of(tables, cp)
        if starter is not None:
            adjacent = starter == len(result) - 1
            if adjacent or (last_class != 0 and last_class < ccc):
                composite = primary_composite(tables, result[starter], cp)
                if composite is not None:
                    result[starter] = composite
                    continue
        if ccc == 0:
            starter = len(result)
        result.append(cp)
        last_class = ccc
    return result


def nfc(tables: NormalizationTables, text: str) -> str:
    return "".join(map(chr, _compose(tables, _decompose(tables, text))))


_DISPATCH = {
    NormalizationForm.NFC: nfc,
    NormalizationForm.NFD: nfd,
    NormalizationForm.HFSD: hfs_decompose,
}


def normalize(tables: NormalizationTables, text: str, form: NormalizationForm | str) -> str:
    if isinstance(form, str):
        form = NormalizationForm.parse(form)
    return _DISPATCH[form](tables, text)


def canonically_equivalent(tables: NormalizationTables, a: str, b: str) -> bool:
    return nfd(tables, a) == nfd(tables, b)
