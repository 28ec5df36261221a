"""Chain-count local search by shifting sets toward the middle levels.

Each step takes the sets furthest from the middle (after complementing the
family if its deepest deviation is below n/2), finds the nearest level of
their shadow that is not fully present, and moves them down along a
matching in the inclusion graph. A step is kept only if a recount shows a
strict decrease in k-chains.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .bounds import r_param
from .chains import count_k_chains
from .exceptions import ContractError, DomainError
from .lattice import (
    SetFamily,
    canonical_key,
    canonical_masks,
    complement_family,
    format_set,
    set_shadow,
    sperner_bound,
)

log = logging.getLogger(__name__)


@dataclass
class BipartiteGraph:
    """Left vertices are larger sets, right vertices are subsets of them."""

    left: list[int]
    right: list[int]
    adj: list[list[int]]  # adj[i] = indices into ``right``

    @classmethod
    def inclusion(cls, left: Sequence[int], right: Sequence[int]) -> "BipartiteGraph":
        left = sorted(left, key=canonical_key)
        right = sorted(right, key=canonical_key)
        adj = [[j for j, b in enumerate(right) if b != a and b & ~a == 0] for a in left]
        return cls(left, right, adj)

    def right_degrees(self) -> list[int]:
        deg = [0] * len(self.right)
        for nbrs in self.adj:
            for j in nbrs:
                deg[j] += 1
        return deg

    def neighbourhood(self, lefts) -> set[int]:
        out = set()
        for i in lefts:
            out.update(self.adj[i])
        return out

    def edges_between(self, lefts, rights) -> int:
        rights = set(rights)
        return sum(1 for i in lefts for j in self.adj[i] if j in rights)


def max_matching(g: BipartiteGraph) -> dict[int, int]:
    """Maximum matching left index -> right index by augmenting paths.

    Vertices are tried in index order, so the result is deterministic.
    """
    match_right: dict[int, int] = {}

    def augment(u, seen):
        for v in g.adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_right or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(len(g.left)):
        augment(u, set())
    return {u: v for v, u in match_right.items()}


@dataclass
class HallDecomposition:
    violator: list[int]
    u1: list[int]
    v1: list[int]
    matching: dict[int, int]
    lhs: int
    rhs: int


def _violation(g: BipartiteGraph, lefts) -> bool:
    return len(g.neighbourhood(lefts)) < len(lefts)


def hall_decomposition(g: BipartiteGraph) -> HallDecomposition:
    """Split off U1, V1 with a perfect matching when no left-saturating matching exists.

    U0 is the alternating-path closure of the first unmatched left vertex u
    (pruned greedily in index order while Hall's condition still fails),
    U1 = U0 minus u and V1 = N(U1). Guarantees
    e(U1, V) + e(U - U1, V1) <= |U1| * max right degree.
    """
    if any(not nbrs for nbrs in g.adj):
        raise ContractError("every left vertex needs at least one neighbour")
    matching = max_matching(g)
    if len(matching) == len(g.left):
        raise ContractError("graph has a left-saturating matching")
    match_right = {v: u for u, v in matching.items()}
    root = next(u for u in range(len(g.left)) if u not in matching)

    reached = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            w = match_right[v]  # every right vertex reachable from root is matched
            if w not in reached:
                reached.add(w)
                queue.append(w)
    violator = sorted(reached)
    for u in list(violator):
        if u == root:
            continue
        trial = [x for x in violator if x != u]
        if _violation(g, trial):
            violator = trial

    u1 = [u for u in violator if u != root]
    v1 = sorted(g.neighbourhood(u1))
    sub = BipartiteGraph([g.left[u] for u in u1], [g.right[v] for v in v1],
                         [[v1.index(v) for v in g.adj[u]] for u in u1])
    local = max_matching(sub)
    if len(local) != len(u1) or len(v1) != len(u1):
        raise ContractError("Hall violator was not minimal")
    perfect = {u1[a]: v1[b] for a, b in local.items()}

    delta = max(g.right_degrees(), default=0)
    outside = [u for u in range(len(g.left)) if u not in set(u1)]
    lhs = g.edges_between(u1, range(len(g.right))) + g.edges_between(outside, v1)
    rhs = len(u1) * delta
    assert lhs <= rhs, f"bipartite decomposition inequality failed: {lhs} > {rhs}"
    return HallDecomposition(violator, u1, v1, perfect, lhs, rhs)


@dataclass
class ShiftStep:
    removed: list[int]
    inserted: list[int]
    ell: int
    twice_m: int
    move: str
    count_after: int
    complemented: bool = False

    def to_dict(self) -> dict:
        return {
            "removed": [format_set(m) for m in self.removed],
            "inserted": [format_set(m) for m in self.inserted],
            "ell": self.ell,
            "m": f"{self.twice_m // 2}" if self.twice_m % 2 == 0 else f"{self.twice_m}/2",
            "move": self.move,
            "complemented": self.complemented,
            "count_after": str(self.count_after),
        }


@dataclass
class ShiftTrace:
    k: int
    initial_count: int
    final_count: int
    steps: list[ShiftStep] = field(default_factory=list)
    strip: ShiftStep | None = None

    def counts(self) -> list[int]:
        return [self.initial_count] + [s.count_after for s in self.steps]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "initial_count": str(self.initial_count),
            "final_count": str(self.final_count),
            "strip": None if self.strip is None else self.strip.to_dict(),
            "steps": [s.to_dict() for s in self.steps],
        }


def strip_extremes(fam: SetFamily) -> SetFamily:
    """Replace the empty set and [n] by absent sets, without adding chains."""
    n = fam.n
    full = (1 << n) - 1
    present = set(fam.masks)
    extremes = [x for x in (full, 0) if x in present]
    if not extremes:
        return fam
    free = [x for x in canonical_masks(n) if x not in present and x not in (0, full)]
    if len(free) < len(extremes):
        raise DomainError(f"no room to replace the empty set / [n] in a family of {len(fam)} sets")
    before = count_k_chains(fam, 2) if len(fam) <= 4096 else None
    out = fam.with_changes(remove=extremes, add=free[: len(extremes)])
    if before is not None:
        assert count_k_chains(out, 2) <= before
    return out


def _deviation(fam: SetFamily) -> tuple[int, int]:
    """Twice the distance of the largest and of the smallest member from n/2."""
    sizes = [m.bit_count() for m in fam.masks]
    return 2 * max(sizes) - fam.n, fam.n - 2 * min(sizes)


def _apply(fam: SetFamily, pairs) -> SetFamily:
    return fam.with_changes(remove=[a for a, _ in pairs], add=[b for _, b in pairs])


def shift_step(fam: SetFamily, k: int) -> tuple[SetFamily, ShiftStep] | None:
    """One improving shift of the extreme sets, or None if none is found."""
    if k < 2:
        raise DomainError("k must be at least 2")
    n = fam.n
    if not fam.masks:
        return None
    # below the Sperner bound the band is as narrow as it gets
    twice_r = r_param(n, len(fam)).twice if len(fam) >= sperner_bound(n) else n % 2
    top, bottom = _deviation(fam)
    flipped = bottom > top
    work = complement_family(fam) if flipped else fam
    twice_m = max(top, bottom)
    if twice_m <= twice_r:
        return None

    before = count_k_chains(work, k)
    if flipped:
        assert before == count_k_chains(fam, k), "complementing changed the chain count"
    size = (n + twice_m) // 2
    present = set(work.masks)
    tops = [a for a in work.masks if a.bit_count() == size]

    ell = None
    for cand in range(1, twice_m):
        if any(b not in present for a in tops for b in set_shadow(a, cand)):
            ell = cand
            break

    result = None
    left: list[int] = []
    right: list[int] = []
    if ell is not None:
        shadows = {a: [b for b in set_shadow(a, ell) if b not in present] for a in tops}
        left = [a for a in tops if shadows[a]]
        right = sorted({b for a in left for b in shadows[a]}, key=canonical_key)
        graph = BipartiteGraph.inclusion(left, right)
        matching = max_matching(graph)
        if len(matching) == len(left):
            move = "matching"
            pairs = [(graph.left[u], graph.right[v]) for u, v in sorted(matching.items())]
        else:
            move = "hall"
            dec = hall_decomposition(graph)
            pairs = [(graph.left[u], graph.right[v]) for u, v in sorted(dec.matching.items())]
        result = _best(work, k, before, [(move, pairs)])
    if result is None:
        moves = _single_moves(work, left, right) + _relocations(work, tops, twice_r)
        result = _best(work, k, before, moves)
    if result is None:
        return None
    move, pairs, shifted, after = result
    if flipped:
        shifted = complement_family(shifted)
        full = (1 << n) - 1
        pairs = [(full ^ a, full ^ b) for a, b in pairs]
    step = ShiftStep([a for a, _ in pairs], [b for _, b in pairs], ell or 0, twice_m, move, after, flipped)
    return shifted, step


def _best(fam, k, before, candidates):
    best = None
    for move, pairs in candidates:
        shifted = _apply(fam, pairs)
        after = count_k_chains(shifted, k)
        if after < before and (best is None or after < best[3]):
            best = (move, pairs, shifted, after)
    return best


def _single_moves(fam: SetFamily, left, right):
    """One set of the shift at a time, including the witness variant."""
    present = set(fam.masks)
    moves = []
    for a in left:
        # a member C below A: drop the smallest element of the smallest such C
        below = [c for c in fam.masks if c != a and c & ~a == 0 and c]
        if below:
            c = min(below, key=canonical_key)
            x = c & -c
            if a ^ x not in present:
                moves.append(("witness", [(a, a ^ x)]))
        for b in right:
            if b & ~a == 0:
                moves.append(("single", [(a, b)]))
    return moves


def _relocations(fam: SetFamily, tops, twice_r):
    """Move a top-level set to an absent set inside the band, middle levels first."""
    n = fam.n
    present = set(fam.masks)
    targets = [b for b in canonical_masks(n)
               if b not in present and abs(2 * b.bit_count() - n) <= twice_r]
    targets.sort(key=lambda b: (abs(2 * b.bit_count() - n), canonical_key(b)))
    return [("relocate", [(a, b)]) for a in tops for b in targets]


def minimize(fam: SetFamily, k: int, max_steps: int = 100) -> tuple[SetFamily, ShiftTrace]:
    """Strip the empty set and [n] once, then shift until no step improves."""
    initial = count_k_chains(fam, k)
    trace = ShiftTrace(k, initial, initial)
    current = fam
    if len(fam) <= (1 << fam.n) - 2:
        stripped = strip_extremes(fam)
        if stripped != fam:
            after = count_k_chains(stripped, k)
            removed = sorted(set(fam.masks) - set(stripped.masks))
            inserted = sorted(set(stripped.masks) - set(fam.masks))
            trace.strip = ShiftStep(removed, inserted, 0, 0, "strip", after)
            current = stripped
    count = count_k_chains(current, k)
    for _ in range(max_steps):
        res = shift_step(current, k)
        if res is None:
            break
        current, step = res
        assert step.count_after < count and len(current) == len(fam)
        count = step.count_after
        trace.steps.append(step)
        log.debug("shift %s ell=%d -> %d chains", step.move, step.ell, count)
    trace.final_count = count
    return current, trace
