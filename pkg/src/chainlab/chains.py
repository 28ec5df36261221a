"""Exact k-chain counting in families of subsets.

All counts are Python integers; nothing here is approximate. The dynamic
programs walk members in canonical order, so every strict subset of a
member is visited before the member itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import factorial
from typing import Sequence

import numpy as np

from .exceptions import DomainError
from .lattice import ElementSet, SetFamily, format_set

PERMUTATION_CHECK_MAX_N = 8


class _InclusionIndex:
    """Strict-inclusion predecessor lists for the members of one family."""

    def __init__(self, fam: SetFamily):
        self.n = fam.n
        self.masks = fam.masks
        self.sizes = np.fromiter((m.bit_count() for m in self.masks), dtype=np.int64,
                                 count=len(self.masks))
        arr = np.array(self.masks, dtype=np.int64)
        # members of size < i occupy arr[:level_start[i]]
        level_start = np.searchsorted(self.sizes, np.arange(self.n + 2))
        self.preds = []
        for i, m in enumerate(self.masks):
            head = arr[: level_start[self.sizes[i]]]
            self.preds.append(np.flatnonzero((head & ~m) == 0))
        self._succs = None

    def __len__(self):
        return len(self.masks)

    @property
    def succs(self):
        if self._succs is None:
            out = [[] for _ in self.masks]
            for i, ps in enumerate(self.preds):
                for p in ps:
                    out[p].append(i)
            self._succs = [np.array(s, dtype=np.int64) for s in out]
        return self._succs


def _as_index(fam) -> _InclusionIndex:
    return fam if isinstance(fam, _InclusionIndex) else _InclusionIndex(fam)


def _check_k(k: int) -> None:
    if k < 2:
        raise DomainError(f"chain length must be at least 2, got {k}")


def _chain_dp(idx: _InclusionIndex, k: int, preds=None, active=None):
    """Number of j-chains ending at each member, for j = k.

    ``preds`` overrides the predecessor lists (e.g. covering pairs only);
    ``active`` masks out members that may not appear in a chain.
    """
    preds = idx.preds if preds is None else preds
    size = len(idx)
    f = np.ones(size, dtype=object)
    if active is not None:
        f[~active] = 0
    for _ in range(k - 1):
        g = np.zeros(size, dtype=object)
        for i, ps in enumerate(preds):
            if len(ps) and (active is None or active[i]):
                g[i] = f[ps].sum()
        f = g
    return f


def count_k_chains(fam: SetFamily, k: int) -> int:
    """Number of k-chains F1 < F2 < ... < Fk among the members of ``fam``."""
    _check_k(k)
    if len(fam) < k:
        return 0
    return int(sum(_chain_dp(_as_index(fam), k)))


def count_2chains_cross(fam_a: SetFamily, fam_b: SetFamily) -> int:
    """Ordered pairs (A, B) in fam_a x fam_b with A < B or B < A."""
    if fam_a.n != fam_b.n:
        raise DomainError("families live over different ground sets")
    b = np.array(fam_b.masks, dtype=np.int64)
    if not len(b):
        return 0
    total = 0
    for a in fam_a.masks:
        below = (b & ~a) == 0
        above = (a & ~b) == 0
        total += int(np.count_nonzero(below ^ above))
    return total


@dataclass(frozen=True)
class Chain:
    sets: tuple[ElementSet, ...]

    def __post_init__(self):
        if len(self.sets) < 1:
            raise DomainError("a chain needs at least one set")
        for a, b in zip(self.sets, self.sets[1:]):
            if a.n != b.n or a.bits == b.bits or not a.issubset(b):
                raise DomainError(f"{a} is not a strict subset of {b}")

    @classmethod
    def from_masks(cls, masks: Sequence[int], n: int) -> "Chain":
        return cls(tuple(ElementSet(m, n) for m in masks))

    def __len__(self):
        return len(self.sets)

    @property
    def steps(self) -> tuple[int, ...]:
        return tuple(b.cardinality() - a.cardinality() for a, b in zip(self.sets, self.sets[1:]))


def owner_of(chain: Chain, n: int) -> ElementSet:
    """The endpoint a chain is charged to: F1 if |F1| + |Fk| < n, else Fk."""
    first, last = chain.sets[0], chain.sets[-1]
    return first if first.cardinality() + last.cardinality() < n else last


@dataclass(frozen=True)
class ChainCountReport:
    n: int
    k: int
    total: int
    per_owner: dict[int, int] = field(repr=False)
    c1: int
    c2: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "total": str(self.total),
            "c1": str(self.c1),
            "c2": str(self.c2),
            "per_owner": {format_set(m): str(v) for m, v in self.per_owner.items()},
        }


def _unit_step_preds(idx: _InclusionIndex):
    return [ps[idx.sizes[ps] == idx.sizes[i] - 1] for i, ps in enumerate(idx.preds)]


def owner_counts(fam: SetFamily, k: int) -> ChainCountReport:
    """Per-owner chain counts C(F) and the unit-step / larger-step split."""
    _check_k(k)
    idx = _as_index(fam)
    n = fam.n
    total = int(sum(_chain_dp(idx, k))) if len(idx) >= k else 0
    c1 = int(sum(_chain_dp(idx, k, preds=_unit_step_preds(idx)))) if len(idx) >= k else 0

    per_owner = dict.fromkeys(idx.masks, 0)
    if total:
        sizes = idx.sizes
        # owned as maximum: chains ending at F with every set of size >= n - |F|
        for low in sorted(set((n - sizes).tolist())):
            active = sizes >= low
            ends = _chain_dp(idx, k, active=active)
            for i in np.flatnonzero(sizes == n - low):
                per_owner[idx.masks[i]] += int(ends[i])
        # owned as minimum: chains starting at F with every set of size < n - |F|
        for high in sorted(set((n - sizes - 1).tolist())):
            active = sizes <= high
            starts = _chain_dp(idx, k, preds=idx.succs, active=active)
            for i in np.flatnonzero(sizes == n - high - 1):
                per_owner[idx.masks[i]] += int(starts[i])
    return ChainCountReport(n, k, total, per_owner, c1, total - c1)


def count_chains_step_constrained(fam: SetFamily, k: int, alphas: Sequence[int]) -> int:
    """k-chains whose i-th step |F_{i+1} minus F_i| is at least alphas[i]."""
    _check_k(k)
    if len(alphas) != k - 1:
        raise DomainError(f"need {k - 1} step sizes, got {len(alphas)}")
    if any(a < 1 for a in alphas):
        raise DomainError("step sizes must be positive")
    idx = _as_index(fam)
    size = len(idx)
    f = np.ones(size, dtype=object)
    for alpha in alphas:
        g = np.zeros(size, dtype=object)
        for i, ps in enumerate(idx.preds):
            ok = ps[idx.sizes[i] - idx.sizes[ps] >= alpha]
            if len(ok):
                g[i] = f[ok].sum()
        f = g
    return int(sum(f))


def perm_weight_set(s: ElementSet | int, n: int) -> int:
    """Number of permutations of [n] having ``s`` as an initial segment."""
    size = s.cardinality() if isinstance(s, ElementSet) else s.bit_count()
    return factorial(size) * factorial(n - size)


def perm_weight_chain(chain: Chain, n: int) -> int:
    """Number of permutations of [n] containing every set of ``chain`` as a prefix."""
    weight = factorial(chain.sets[0].cardinality()) * factorial(n - chain.sets[-1].cardinality())
    for step in chain.steps:
        weight *= factorial(step)
    return weight


def _weighted_chain_sum(idx: _InclusionIndex, k: int, preds=None) -> int:
    """Sum over k-chains of the number of permutations containing the chain."""
    preds = idx.preds if preds is None else preds
    n = idx.n
    fact = np.array([factorial(i) for i in range(n + 1)], dtype=object)
    w = fact[idx.sizes].copy()
    for _ in range(k - 1):
        g = np.zeros(len(idx), dtype=object)
        for i, ps in enumerate(preds):
            if len(ps):
                g[i] = (w[ps] * fact[idx.sizes[i] - idx.sizes[ps]]).sum()
        w = g
    return int((w * fact[n - idx.sizes]).sum()) if len(idx) else 0


@dataclass(frozen=True)
class LymAudit:
    n: int
    k: int
    set_weight_sum: int
    chain_weight_sum: int
    step_chain_weight_sum: int
    lhs: tuple[int, int, int]
    rhs: tuple[int, int, int]
    prefix_count: int | None

    @property
    def margins(self) -> tuple[int, int, int]:
        return tuple(a - b for a, b in zip(self.lhs, self.rhs))

    @property
    def holds(self) -> tuple[bool, bool, bool]:
        return tuple(m >= 0 for m in self.margins)

    @property
    def identity_ok(self) -> bool | None:
        if self.prefix_count is None:
            return None
        return self.prefix_count == self.set_weight_sum

    def to_dict(self) -> dict:
        names = ("chains", "all_chains_k2", "step_chains")
        return {
            "n": self.n,
            "k": self.k,
            "set_weight_sum": str(self.set_weight_sum),
            "chain_weight_sum": str(self.chain_weight_sum),
            "step_chain_weight_sum": str(self.step_chain_weight_sum),
            "prefix_count": None if self.prefix_count is None else str(self.prefix_count),
            "inequalities": [
                {"name": nm, "lhs": str(a), "rhs": str(b), "margin": str(a - b), "holds": a >= b}
                for nm, a, b in zip(names, self.lhs, self.rhs)
            ],
        }


def prefix_member_count(fam: SetFamily) -> int:
    """Sum over all permutations of [n] of the number of members that are prefixes.

    Direct enumeration of S_n; only feasible for small n.
    """
    members = set(fam.masks)
    total = 0
    for perm in permutations(range(fam.n)):
        prefix = 0
        total += 0 in members
        for x in perm:
            prefix |= 1 << x
            total += prefix in members
    return total


def lym_audit(fam: SetFamily, k: int) -> LymAudit:
    """Exact sides of the three permutation-averaging inequalities.

    (i)   (k-1) n!     >= sum_F |S[F]| - sum_chains |S[chain]|
    (ii)  (k^2-1) n!   >= k sum_F |S[F]| - sum_chains |S[chain]|
    (iii) (k^2-k) n!   >= (k-1) sum_F |S[F]| - sum_{chains with a step >= 2} |S[chain]|
    """
    _check_k(k)
    n = fam.n
    idx = _as_index(fam)
    nfact = factorial(n)
    set_sum = sum(perm_weight_set(m, n) for m in fam.masks)
    chain_sum = _weighted_chain_sum(idx, k) if len(idx) >= k else 0
    unit_sum = _weighted_chain_sum(idx, k, preds=_unit_step_preds(idx)) if len(idx) >= k else 0
    step_sum = chain_sum - unit_sum
    lhs = ((k - 1) * nfact, (k * k - 1) * nfact, (k * k - k) * nfact)
    rhs = (set_sum - chain_sum, k * set_sum - chain_sum, (k - 1) * set_sum - step_sum)
    prefix = prefix_member_count(fam) if n <= PERMUTATION_CHECK_MAX_N else None
    return LymAudit(n, k, set_sum, chain_sum, step_sum, lhs, rhs, prefix)
