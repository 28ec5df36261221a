"""Plain-text family format.

::

    n=4
    1,2
    {}
    hex:c

The first line fixes the ground size. Every other non-empty line is one
set: ascending comma-separated 1-based elements, ``{}`` for the empty set,
or ``hex:<lowercase hex mask>``.
"""
from __future__ import annotations

import re
from pathlib import Path

from .exceptions import DomainError, FamilyFormatError
from .lattice import MAX_N, SetFamily, format_set

_HEADER = re.compile(r"^n\s*=\s*(\d+)$")
_HEX = re.compile(r"^hex:([0-9a-f]+)$")


def parse_family(text: str) -> SetFamily:
    n = None
    masks: list[int] = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if n is None:
            match = _HEADER.match(line)
            if not match:
                raise FamilyFormatError(lineno, f"expected 'n=<int>' header, got {line!r}")
            n = int(match.group(1))
            if not 1 <= n <= MAX_N:
                raise FamilyFormatError(lineno, f"n must be in [1, {MAX_N}]")
            continue
        mask = _parse_set(line, n, lineno)
        if mask in seen:
            raise FamilyFormatError(lineno, f"duplicate of the set on line {seen[mask]}")
        seen[mask] = lineno
        masks.append(mask)
    if n is None:
        raise FamilyFormatError(1, "missing 'n=<int>' header")
    return SetFamily(n, masks)


def _parse_set(line: str, n: int, lineno: int) -> int:
    if line == "{}":
        return 0
    match = _HEX.match(line)
    if match:
        mask = int(match.group(1), 16)
        if mask >> n:
            raise FamilyFormatError(lineno, f"hex mask has bits beyond n={n}")
        return mask
    try:
        elems = [int(tok) for tok in line.split(",")]
    except ValueError:
        raise FamilyFormatError(lineno, f"cannot parse set {line!r}") from None
    if any(b <= a for a, b in zip(elems, elems[1:])):
        raise FamilyFormatError(lineno, "elements must be strictly ascending")
    if elems[0] < 1 or elems[-1] > n:
        raise FamilyFormatError(lineno, f"elements must lie in [1, {n}]")
    return sum(1 << (x - 1) for x in elems)


def format_family(fam: SetFamily, use_hex: bool = False) -> str:
    lines = [f"n={fam.n}"]
    for m in fam.masks:
        lines.append(f"hex:{m:x}" if use_hex else format_set(m))
    return "\n".join(lines) + "\n"


def read_family(path: str | Path) -> SetFamily:
    return parse_family(Path(path).read_text())


def write_family(fam: SetFamily, path: str | Path, use_hex: bool = False) -> None:
    Path(path).write_text(format_family(fam, use_hex))


def set_to_text(mask: int) -> str:
    return format_set(mask)


def set_from_text(text: str, n: int) -> int:
    try:
        return _parse_set(text.strip(), n, 1)
    except FamilyFormatError as exc:
        raise DomainError(str(exc)) from None
