"""Code point helpers and the ``U+XXXX`` escape syntax.

Text is carried as plain ``str`` everywhere in the package.  The helpers here
enforce the Unicode scalar value rules (no surrogates, nothing above
U+10FFFF) at the points where text enters from outside.
"""

from __future__ import annotations

import re
from typing import Iterable

MAX_CODE_POINT = 0x10FFFF
SURROGATE_FIRST = 0xD800
SURROGATE_LAST = 0xDFFF

_ESCAPE_TOKEN = re.compile(r"[Uu]\+([0-9A-Fa-f]{4,6})")
_ESCAPE_LIST = re.compile(r"\s*[Uu]\+[0-9A-Fa-f]{4,6}(?:[\s,]+[Uu]\+[0-9A-Fa-f]{4,6})*\s*")


class EscapeSyntaxError(ValueError):
    """Raised for malformed ``U+XXXX`` escape lists."""


def is_scalar_value(value: int) -> bool:
    return 0 <= value <= MAX_CODE_POINT and not SURROGATE_FIRST <= value <= SURROGATE_LAST


def code_point(value: int) -> int:
    """Return *value* unchanged if it is a Unicode scalar value.

    Raises ValueError for surrogates and out-of-range integers.
    """
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"code point must be an int, not {type(value).__name__}")
    if not is_scalar_value(value):
        raise ValueError(f"not a Unicode scalar value: {value:#x}")
    return value


def from_points(points: Iterable[int]) -> str:
    return "".join(chr(code_point(p)) for p in points)


def check_text(text: str) -> str:
    """Reject strings holding lone surrogates (e.g. from surrogateescape)."""
    for i, ch in enumerate(text):
        if SURROGATE_FIRST <= ord(ch) <= SURROGATE_LAST:
            raise ValueError(f"surrogate U+{ord(ch):04X} at index {i} is not a scalar value")
    return text


def format_point(cp: int) -> str:
    return f"U+{cp:04X}"


def to_escapes(text: str) -> str:
    """``"é"`` -> ``"U+00E9"``; empty text gives an empty string."""
    return " ".join(format_point(ord(ch)) for ch in text)


def looks_like_escapes(raw: str) -> bool:
    return raw.lstrip()[:2] in ("U+", "u+")


def parse_escapes(raw: str) -> str:
    """Parse ``"U+0041 U+030A"`` (space or comma separated) into text."""
    if not _ESCAPE_LIST.fullmatch(raw):
        raise EscapeSyntaxError(f"malformed U+ escape list: {raw!r}")
    points = []
    for match in _ESCAPE_TOKEN.finditer(raw):
        value = int(match.group(1), 16)
        if not is_scalar_value(value):
            raise EscapeSyntaxError(f"{match.group(0)} is not a Unicode scalar value")
        points.append(value)
    return from_points(points)


def decode_name(raw: str) -> str:
    """Decode user input: a ``U+`` escape list if it starts with ``U+``, else literal text."""
    if looks_like_escapes(raw):
        return parse_escapes(raw)
    return check_text(raw)
