"""Shared plumbing for the plain-text file formats.

Every number in the formats is an exact rational written as ``p`` or
``p/q``; nothing is routed through floating point.  All formats allow
``#`` comments and blank lines.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


class ParseError(ValueError):
    """Malformed token or wrong shape in a text input."""


def parse_rational(token: str) -> Fraction:
    """Parse ``p`` or ``p/q`` exactly; reject anything else."""
    if not _RATIONAL.match(token):
        raise ParseError(f"not a rational token: {token!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {token!r}") from None


def format_rational(value: Fraction | int) -> str:
    """Render lowest-terms ``p/q``, or plain ``p`` when the value is integral."""
    return str(Fraction(value))


def data_lines(text: str) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, content)`` with comments and blanks stripped."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line
