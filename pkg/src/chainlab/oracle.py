"""Ground-truth minimum chain counts at small n.

:func:`exhaustive_min` evaluates every family of s subsets of [n] (n <= 4).
It does not reuse the per-family counter: it tabulates the k-chain count of
all 2^(2^n) subfamilies at once with a recurrence on the canonically last
member, then reads off each size class.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil

import numpy as np

from .bounds import band_radius, middle_sum, thm32_weights
from .chains import count_k_chains
from .exceptions import DomainError
from .extremal import canonical_family, check_extremal_2chain, conjectured_min
from .familyio import format_family
from .lattice import SetFamily, canonical_masks, complement_family, sperner_bound

EXHAUSTIVE_MAX_N = 4
BRANCH_AND_BOUND_MAX_N = 6
WITNESS_CAP = 10_000


@dataclass
class OracleResult:
    n: int
    s: int
    k: int
    minimum: int
    witnesses: list[SetFamily] = field(default_factory=list)
    optimum_count: int = 0
    families_examined: int = 0
    complete: bool = True

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "k": self.k,
            "minimum": str(self.minimum),
            "optimum_count": str(self.optimum_count),
            "families_examined": str(self.families_examined),
            "complete": self.complete,
            "witnesses": [format_family(w) for w in self.witnesses],
        }


@lru_cache(maxsize=None)
def _universe(n: int):
    subsets = canonical_masks(n)
    # down[i]: bitmask over canonical positions of the strict subsets of subsets[i]
    down = []
    for i, x in enumerate(subsets):
        bits = 0
        for j, y in enumerate(subsets[:i]):
            if y & ~x == 0:
                bits |= 1 << j
        down.append(bits)
    return subsets, down


@lru_cache(maxsize=None)
def _popcounts(n: int) -> np.ndarray:
    size = 1 << (1 << n)
    pc = np.zeros(size, dtype=np.int8)
    for h in range(1 << n):
        pc[1 << h: 2 << h] = pc[: 1 << h] + 1
    return pc


@lru_cache(maxsize=16)
def chain_table(n: int, k: int) -> np.ndarray:
    """table[F] = number of k-chains in the family encoded by F.

    Bit i of F selects the i-th subset of [n] in canonical order.
    """
    if n > EXHAUSTIVE_MAX_N:
        raise DomainError(f"exhaustive tables need n <= {EXHAUSTIVE_MAX_N}")
    if k < 1:
        raise DomainError("k must be positive")
    if k == 1:
        return _popcounts(n).astype(np.int64)
    shorter = chain_table(n, k - 1)
    _, down = _universe(n)
    size = 1 << (1 << n)
    table = np.zeros(size, dtype=np.int64)
    for h in range(1 << n):
        lower = np.arange(1 << h, dtype=np.int64)
        # canonically last member h has no strict superset among the others
        table[1 << h: 2 << h] = table[: 1 << h] + shorter[lower & down[h]]
    return table


def _decode(n: int, code: int) -> SetFamily:
    subsets, _ = _universe(n)
    return SetFamily(n, [subsets[i] for i in range(1 << n) if code >> i & 1])


def _encode(fam: SetFamily) -> int:
    subsets, _ = _universe(fam.n)
    pos = {x: i for i, x in enumerate(subsets)}
    return sum(1 << pos[m] for m in fam.masks)


def _size_class(n: int, s: int) -> np.ndarray:
    return np.flatnonzero(_popcounts(n) == s)


def exhaustive_min(n: int, s: int, k: int, cap: int = WITNESS_CAP, recount: bool = True) -> OracleResult:
    """Minimum k-chain count over every family of s subsets of [n], with optimal families."""
    if n > EXHAUSTIVE_MAX_N:
        raise DomainError(f"exhaustive search needs n <= {EXHAUSTIVE_MAX_N}, got {n}")
    if not 0 <= s <= 1 << n:
        raise DomainError(f"s={s} outside [0, {1 << n}]")
    codes = _size_class(n, s)
    counts = chain_table(n, k)[codes]
    minimum = int(counts.min())
    best = codes[counts == minimum]
    witnesses = [_decode(n, int(c)) for c in best[:cap]]
    if recount:
        for w in witnesses:
            assert count_k_chains(w, k) == minimum, f"recount mismatch on {w}"
    return OracleResult(n, s, k, minimum, witnesses, len(best), len(codes))


def optimal_families(n: int, s: int, k: int) -> set[SetFamily]:
    codes = _size_class(n, s)
    counts = chain_table(n, k)[codes]
    return {_decode(n, int(c)) for c in codes[counts == counts.min()]}


class _Search:
    def __init__(self, n, s, k, deadline):
        self.n, self.s, self.k = n, s, k
        self.deadline = deadline
        self.subsets = canonical_masks(n)
        total = len(self.subsets)
        # the stability bound can fail for families holding the empty set or [n]
        # once its level band reaches them; only prune with it when it cannot
        self.use_weights = band_radius(n, k).twice <= n - 2
        weights, self.offset = thm32_weights(n, k)
        self.w = [weights[x.bit_count()] for x in self.subsets]
        # suffix_best[i][j]: smallest total weight of j subsets taken from positions >= i
        self.suffix_best = []
        for i in range(total + 1):
            prefix = [Fraction(0)]
            for v in sorted(self.w[i:]):
                prefix.append(prefix[-1] + v)
            self.suffix_best.append(prefix)
        self.supersets = [[j for j in range(i + 1, total) if x & ~self.subsets[j] == 0]
                          for i, x in enumerate(self.subsets)]
        # added[j]: k-chains the subset at position j would close with the chosen sets
        self.added = [0] * total
        self.best = None
        self.best_family = None
        self.nodes = 0
        self.timed_out = False

    def run(self, incumbent, incumbent_family):
        self.best, self.best_family = incumbent, incumbent_family
        self._dfs(0, [], [], 0, Fraction(0))
        return not self.timed_out

    def _dfs(self, pos, chosen, ends, count, weight):
        self.nodes += 1
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            self.timed_out = True
        if self.timed_out:
            return
        need = self.s - len(chosen)
        if need == 0:
            if count < self.best:
                self.best = count
                self.best_family = SetFamily(self.n, chosen)
            return
        if len(self.subsets) - pos < need or count >= self.best:
            return
        # chains closed by the cheapest completion, ignoring chains among new sets
        if count + sum(sorted(self.added[pos:])[:need]) >= self.best:
            return
        if self.use_weights:
            bound = weight + self.suffix_best[pos][need] - self.offset
            if ceil(bound) >= self.best:
                return
        x = self.subsets[pos]
        # ends[i][j]: (j+1)-chains among chosen sets ending at chosen[i]
        new_ends = [1]
        for j in range(1, self.k):
            new_ends.append(sum(e[j - 1] for y, e in zip(chosen, ends) if y & ~x == 0))
        step = new_ends[self.k - 2]
        ups = self.supersets[pos]
        if step:
            for j in ups:
                self.added[j] += step
        chosen.append(x)
        ends.append(new_ends)
        self._dfs(pos + 1, chosen, ends, count + new_ends[self.k - 1], weight + self.w[pos])
        chosen.pop()
        ends.pop()
        if step:
            for j in ups:
                self.added[j] -= step
        self._dfs(pos + 1, chosen, ends, count, weight)


def branch_and_bound_min(n: int, s: int, k: int, time_budget: float | None = 60.0) -> OracleResult:
    """Depth-first search over families in canonical order.

    Branches are cut when the partial count, the partial count plus the
    cheapest chains the remaining sets must close, or the stability bound
    of the cheapest completion already reaches the incumbent, which starts
    at the centered family. ``complete`` is False if the budget ran out.
    """
    if n > BRANCH_AND_BOUND_MAX_N:
        raise DomainError(f"branch and bound is limited to n <= {BRANCH_AND_BOUND_MAX_N}")
    if not 0 <= s <= 1 << n:
        raise DomainError(f"s={s} outside [0, {1 << n}]")
    start = canonical_family(n, s)
    incumbent = count_k_chains(start, k)
    if time_budget is not None and time_budget <= 0:
        return OracleResult(n, s, k, incumbent, [start], 1, 0, complete=False)
    deadline = float("inf") if time_budget is None else time.monotonic() + time_budget
    search = _Search(n, s, k, deadline)
    complete = search.run(incumbent, start)
    best_family = search.best_family
    assert count_k_chains(best_family, k) == search.best
    return OracleResult(n, s, k, search.best, [best_family], 1, search.nodes, complete)


@dataclass
class ConjectureRow:
    s: int
    oracle_min: int
    conjectured: int
    counterexample: SetFamily | None = None

    @property
    def ok(self) -> bool:
        return self.oracle_min == self.conjectured


@dataclass
class ConjectureReport:
    n: int
    k: int
    rows: list[ConjectureRow]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "ok": self.ok,
            "rows": [
                {
                    "s": r.s,
                    "oracle_min": str(r.oracle_min),
                    "conjectured": str(r.conjectured),
                    "ok": r.ok,
                    "counterexample": None if r.counterexample is None else format_family(r.counterexample),
                }
                for r in self.rows
            ],
        }


def verify_conjecture(n: int, k: int, s_range=None) -> ConjectureReport:
    """Compare the exhaustive minimum with the centered family for each s."""
    s_values = range(0, (1 << n) + 1) if s_range is None else s_range
    rows = []
    for s in s_values:
        res = exhaustive_min(n, s, k, cap=1, recount=False)
        conj = conjectured_min(n, s, k)
        row = ConjectureRow(s, res.minimum, conj)
        if not row.ok:
            row.counterexample = res.witnesses[0] if res.minimum < conj else canonical_family(n, s)
        rows.append(row)
    return ConjectureReport(n, k, rows)


@dataclass
class IffReport:
    n: int
    s: int
    optimal: int
    certified: int
    optimal_not_certified: list[SetFamily]
    certified_not_optimal: list[SetFamily]

    @property
    def ok(self) -> bool:
        return not self.optimal_not_certified and not self.certified_not_optimal

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "ok": self.ok,
            "optimal": self.optimal,
            "certified": self.certified,
            "optimal_not_certified": [format_family(f) for f in self.optimal_not_certified],
            "certified_not_optimal": [format_family(f) for f in self.certified_not_optimal],
        }


def verify_iff_characterization(n: int, s: int) -> IffReport:
    """Both directions of the 2-chain characterization over all families of size s."""
    if s < sperner_bound(n):
        raise DomainError(f"s={s} below the Sperner bound {sperner_bound(n)}")
    if n > EXHAUSTIVE_MAX_N:
        raise DomainError(f"needs n <= {EXHAUSTIVE_MAX_N}")
    codes = _size_class(n, s)
    counts = chain_table(n, 2)[codes]
    minimum = counts.min()
    optimal = {int(c) for c in codes[counts == minimum]}
    certified = set()
    for c in codes:
        if check_extremal_2chain(_decode(n, int(c))).satisfied:
            certified.add(int(c))
    return IffReport(
        n, s, len(optimal), len(certified),
        [_decode(n, c) for c in sorted(optimal - certified)],
        [_decode(n, c) for c in sorted(certified - optimal)],
    )


def erdos_zero_threshold(n: int, k: int) -> int:
    """Largest s with zero forced k-chains: M_{k-1}."""
    return middle_sum(n, k - 1)


def complement_closed(n: int, families) -> bool:
    fams = set(families)
    return all(complement_family(f) in fams for f in fams)
