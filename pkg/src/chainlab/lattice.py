"""Subsets of [n] as bitmasks, and families of them.

Element ``i`` of the ground set (1-based) is bit ``i - 1`` of the mask.
Families are stored in canonical order: by cardinality, then by the
numeric value of the mask.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

from .exceptions import DomainError

MAX_N = 24


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise DomainError(f"ground set size must be in [1, {MAX_N}], got {n}")


def canonical_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask)


@dataclass(frozen=True, slots=True)
class ElementSet:
    bits: int
    n: int

    def __post_init__(self):
        _check_n(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise DomainError(f"mask {self.bits:#x} has bits outside [{self.n}]")

    @classmethod
    def from_elements(cls, elements: Iterable[int], n: int) -> "ElementSet":
        bits = 0
        for x in elements:
            if not 1 <= x <= n:
                raise DomainError(f"element {x} outside [1, {n}]")
            bits |= 1 << (x - 1)
        return cls(bits, n)

    def cardinality(self) -> int:
        return self.bits.bit_count()

    def elements(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.bits >> i & 1)

    def complement(self) -> "ElementSet":
        return ElementSet(((1 << self.n) - 1) ^ self.bits, self.n)

    def issubset(self, other: "ElementSet") -> bool:
        return self.bits & ~other.bits == 0

    def __contains__(self, x: int) -> bool:
        return 1 <= x <= self.n and bool(self.bits >> (x - 1) & 1)

    def __lt__(self, other: "ElementSet") -> bool:
        return canonical_key(self.bits) < canonical_key(other.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __str__(self) -> str:
        return format_set(self.bits)


def format_set(mask: int) -> str:
    if mask == 0:
        return "{}"
    return ",".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1)


class SetFamily:
    """An immutable, deduplicated family of subsets of [n].

    ``masks`` is the canonical-order tuple of member bitmasks; ``members``
    wraps them as :class:`ElementSet`.
    """

    __slots__ = ("n", "masks", "_index")

    def __init__(self, n: int, masks: Iterable[int | ElementSet] = ()):
        _check_n(n)
        seen = set()
        for m in masks:
            if isinstance(m, ElementSet):
                if m.n != n:
                    raise DomainError(f"member over [{m.n}] in a family over [{n}]")
                m = m.bits
            if m < 0 or m >> n:
                raise DomainError(f"mask {m:#x} has bits outside [{n}]")
            seen.add(m)
        self.n = n
        self.masks: tuple[int, ...] = tuple(sorted(seen, key=canonical_key))
        self._index = None

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], n: int) -> "SetFamily":
        return cls(n, (ElementSet.from_elements(s, n).bits for s in sets))

    @property
    def members(self) -> tuple[ElementSet, ...]:
        return tuple(ElementSet(m, self.n) for m in self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[int]:
        return iter(self.masks)

    def __contains__(self, item) -> bool:
        if isinstance(item, ElementSet):
            item = item.bits
        if self._index is None:
            self._index = frozenset(self.masks)
        return item in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, SetFamily) and self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.n, self.masks))

    def __repr__(self) -> str:
        body = ", ".join("{" + format_set(m) + "}" if m else "{}" for m in self.masks)
        return f"SetFamily(n={self.n}, [{body}])"

    def with_changes(self, remove: Iterable[int] = (), add: Iterable[int] = ()) -> "SetFamily":
        gone = set(remove)
        return SetFamily(self.n, [m for m in self.masks if m not in gone] + list(add))

    def level(self, i: int) -> tuple[int, ...]:
        return tuple(m for m in self.masks if m.bit_count() == i)


@dataclass(frozen=True)
class LevelProfile:
    counts: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def __len__(self) -> int:
        return len(self.counts)

    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True, order=True)
class HalfInteger:
    """A non-negative multiple of 1/2, stored as its double."""

    twice: int

    def __post_init__(self):
        if self.twice < 0:
            raise DomainError("half-integers here are non-negative")

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> "HalfInteger":
        doubled = Fraction(value) * 2
        if doubled.denominator != 1:
            raise DomainError(f"{value} is not a multiple of 1/2")
        return cls(int(doubled))

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __float__(self) -> float:
        return self.twice / 2

    def __str__(self) -> str:
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"


def level_masks(n: int, i: int) -> list[int]:
    """All i-subsets of [n], ascending by mask value (colex order)."""
    if not 0 <= i <= n:
        return []
    out = []
    for combo in combinations(range(n), i):
        out.append(sum(1 << b for b in combo))
    out.sort()
    return out


def full_level(n: int, i: int) -> SetFamily:
    return SetFamily(n, level_masks(n, i))


def levels(n: int, sizes: Iterable[int]) -> SetFamily:
    out: list[int] = []
    for i in sizes:
        out.extend(level_masks(n, i))
    return SetFamily(n, out)


def power_set(n: int) -> SetFamily:
    return SetFamily(n, range(1 << n))


def canonical_masks(n: int) -> list[int]:
    """Every subset of [n] in canonical order."""
    return sorted(range(1 << n), key=canonical_key)


def level_profile(fam: SetFamily) -> LevelProfile:
    counts = [0] * (fam.n + 1)
    for m in fam.masks:
        counts[m.bit_count()] += 1
    return LevelProfile(tuple(counts))


def _submasks_of_size(mask: int, size: int) -> Iterator[int]:
    bits = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    for combo in combinations(bits, size):
        yield sum(combo)


def shadow(fam: SetFamily, ell: int) -> SetFamily:
    """The ell-shadow: every set obtained from a member by deleting ell elements."""
    if ell < 1:
        raise DomainError("shadow order must be at least 1")
    out = set()
    for m in fam.masks:
        size = m.bit_count()
        if size >= ell:
            out.update(_submasks_of_size(m, size - ell))
    return SetFamily(fam.n, out)


def set_shadow(mask: int, ell: int) -> list[int]:
    size = mask.bit_count()
    if size < ell:
        return []
    return sorted(_submasks_of_size(mask, size - ell))


def is_antichain(fam: SetFamily | Sequence[int]) -> bool:
    masks = fam.masks if isinstance(fam, SetFamily) else sorted(set(fam), key=canonical_key)
    return comparable_pair(masks) is None


def comparable_pair(masks: Sequence[int]) -> tuple[int, int] | None:
    """First (smaller, larger) comparable pair among canonically ordered masks."""
    for j, b in enumerate(masks):
        for a in masks[:j]:
            if a != b and a & ~b == 0:
                return a, b
    return None


def complement_family(fam: SetFamily) -> SetFamily:
    full = (1 << fam.n) - 1
    return SetFamily(fam.n, (full ^ m for m in fam.masks))


def m_of(s: ElementSet | int, n: int) -> int:
    size = s.cardinality() if isinstance(s, ElementSet) else s.bit_count()
    return max(size, n - size)


def sperner_bound(n: int) -> int:
    return comb(n, n // 2)
