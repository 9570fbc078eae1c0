"""The set text format: one header line "p n", then one "x y" line per element.

This is the unit of exchange for every CLI command.  Duplicate elements
and out-of-range coordinates are rejected with the offending line number;
a file with no element lines is rejected as an empty set.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParameterError, ParseError
from .group import GroupParams, GroupSet


def parse_set(text: str) -> GroupSet:
    lines = text.splitlines()
    header_line = None
    params = None
    mask = 0
    count = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {raw!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"expected two integers, got {raw!r}", lineno) from None
        if params is None:
            try:
                params = GroupParams(a, b)
            except ParameterError as exc:
                raise ParseError(str(exc), lineno) from None
            header_line = lineno
            continue
        if not (0 <= a < params.p and 0 <= b < params.pn):
            raise ParseError(
                f"element ({a}, {b}) out of range for p={params.p}, n={params.n}", lineno
            )
        bit = 1 << (a * params.pn + b)
        if mask & bit:
            raise ParseError(f"duplicate element ({a}, {b})", lineno)
        mask |= bit
        count += 1
    if params is None:
        raise ParseError('missing header line "p n"')
    if count == 0:
        raise ParseError("empty set (no element lines)", header_line)
    return GroupSet(params, mask)


def load_set(path: str | Path) -> GroupSet:
    return parse_set(Path(path).read_text(encoding="utf-8"))


def serialize_set(A: GroupSet) -> str:
    lines = [f"{A.params.p} {A.params.n}"]
    lines.extend(f"{e.x} {e.y}" for e in A.elements())
    return "\n".join(lines) + "\n"


def save_set(A: GroupSet, path: str | Path) -> None:
    Path(path).write_text(serialize_set(A), encoding="utf-8")
