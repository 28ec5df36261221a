"""Centered families and the certificate for 2-chain extremality."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .bounds import r_param
from .chains import count_k_chains
from .exceptions import DomainError
from .lattice import (
    HalfInteger,
    SetFamily,
    comparable_pair,
    format_set,
    level_masks,
    sperner_bound,
)


def level_fill_order(n: int) -> list[int]:
    """floor(n/2), floor(n/2)+1, floor(n/2)-1, floor(n/2)+2, ..."""
    mid = n // 2
    order = [mid]
    for d in range(1, n + 1):
        for i in (mid + d, mid - d):
            if 0 <= i <= n:
                order.append(i)
    return order


def canonical_family(n: int, s: int) -> SetFamily:
    """The first s sets when levels are filled outward from the middle.

    A partially filled level takes its sets in colex order.
    """
    if not 0 <= s <= 1 << n:
        raise DomainError(f"s={s} outside [0, {1 << n}] for n={n}")
    chosen: list[int] = []
    for i in level_fill_order(n):
        need = s - len(chosen)
        if need <= 0:
            break
        chosen.extend(level_masks(n, i)[:need])
    return SetFamily(n, chosen)


def conjectured_min(n: int, s: int, k: int) -> int:
    """k-chains in the centered family of size s."""
    return count_k_chains(canonical_family(n, s), k)


@dataclass(frozen=True)
class ExtremalCertificate:
    satisfied: bool
    r: HalfInteger
    condition_results: tuple[bool, bool, bool, bool]
    applicable: tuple[bool, bool, bool, bool]
    violating_sets: tuple[int, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "r": str(self.r),
            "conditions": [
                {"index": i + 1, "applicable": a, "holds": c}
                for i, (a, c) in enumerate(zip(self.applicable, self.condition_results))
            ],
            "violating_sets": [format_set(m) for m in self.violating_sets],
        }


def _comparable_members(masks: list[int]) -> list[int]:
    out = set()
    for j, b in enumerate(masks):
        for a in masks[:j]:
            if a & ~b == 0:
                out.update((a, b))
    return sorted(out)


def check_extremal_2chain(fam: SetFamily) -> ExtremalCertificate:
    """Test the four structural conditions characterizing 2-chain minimizers.

    Exactly at the size where both boundary conditions apply, one of the
    two suffices.
    """
    n, s = fam.n, len(fam)
    if s < sperner_bound(n):
        raise DomainError(f"family of {s} sets is below the Sperner bound {sperner_bound(n)}")
    r = r_param(n, s)
    lo, hi = (n - r.twice) // 2, (n + r.twice) // 2
    members = set(fam.masks)
    threshold = sum(comb(n, i) for i in range(lo, hi))

    outside = [m for m in fam.masks if not lo <= m.bit_count() <= hi]
    missing_inner = [m for i in range(lo + 1, hi) for m in level_masks(n, i) if m not in members]
    edge_sizes = sorted({lo, hi})
    edge = [m for i in edge_sizes for m in level_masks(n, i)]
    edge_in = [m for m in edge if m in members]
    edge_out = [m for m in edge if m not in members]

    app3, app4 = s <= threshold, s >= threshold
    ok3 = not app3 or comparable_pair(edge_in) is None
    ok4 = not app4 or comparable_pair(edge_out) is None
    ok1, ok2 = not outside, not missing_inner

    witnesses = outside + missing_inner
    if app3 and app4:
        boundary_ok = ok3 or ok4
        if not boundary_ok:
            witnesses += _comparable_members(edge_in) + _comparable_members(edge_out)
    else:
        boundary_ok = ok3 and ok4
        if not ok3:
            witnesses += _comparable_members(edge_in)
        if not ok4:
            witnesses += _comparable_members(edge_out)
    satisfied = ok1 and ok2 and boundary_ok
    return ExtremalCertificate(
        satisfied, r, (ok1, ok2, ok3, ok4), (True, True, app3, app4), tuple(witnesses)
    )


def saturated_example(m: int) -> SetFamily:
    """Over [2m+1]: m-sets avoiding 1 together with (m+1)-sets containing 1.

    Every member lies in exactly one comparable pair.
    """
    if m < 1:
        raise DomainError("m must be at least 1")
    n = 2 * m + 1
    small = [x for x in level_masks(n, m) if not x & 1]
    large = [x for x in level_masks(n, m + 1) if x & 1]
    return SetFamily(n, small + large)
