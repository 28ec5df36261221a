"""Shared brute-force references and hypothesis strategies.

The references deliberately avoid the package's dynamic programs: they
enumerate tuples of members directly.
"""
from itertools import combinations

from hypothesis import strategies as st

from chainlab.bounds import band_radius
from chainlab.chains import count_k_chains
from chainlab.extremal import conjectured_min
from chainlab.lattice import SetFamily, full_level, level_masks, levels


def brute_chains(fam: SetFamily, k: int):
    """Every k-chain, as a tuple of masks, by checking all k-subsets of members."""
    # canonical order puts every strict subset before its supersets
    for combo in combinations(fam.masks, k):
        if all(a & ~b == 0 for a, b in zip(combo, combo[1:])):
            yield combo


def brute_count(fam: SetFamily, k: int) -> int:
    return sum(1 for _ in brute_chains(fam, k))


@st.composite
def families(draw, min_n=1, max_n=5, max_size=None):
    n = draw(st.integers(min_n, max_n))
    cap = 1 << n if max_size is None else min(max_size, 1 << n)
    masks = draw(st.sets(st.integers(0, (1 << n) - 1), max_size=cap))
    return SetFamily(n, masks)


def edge_gain(n: int, ell: int) -> int:
    """2-chains gained by swapping ell middle sets for upper-edge sets.

    Every upper-edge set above a swapped set stays in the family.
    """
    mid = n // 2
    removed = level_masks(n, mid)[:ell]
    uppers = level_masks(n, mid + 1)
    above = [u for u in uppers if any(x & ~u == 0 for x in removed)]
    fresh = [u for u in uppers if u not in above][:ell]
    before = full_level(n, mid).with_changes(add=above)
    after = before.with_changes(remove=removed, add=fresh)
    return count_k_chains(after, 2) - count_k_chains(before, 2)


def outside_gain(n: int, k: int, ell: int) -> int:
    """k-chains gained by swapping ell lower-edge sets for sets one level above the band.

    Every level of the band except the lower edge is full, so the family
    holds all upper-edge sets, and no lower-edge set survives below the
    added sets.
    """
    twice = band_radius(n, k).twice
    lo, hi = (n - twice) // 2, (n + twice) // 2
    removed = level_masks(n, lo)[:ell]
    added = level_masks(n, hi + 1)[:ell]
    before = levels(n, range(lo + 1, hi + 1)).with_changes(add=removed)
    after = before.with_changes(remove=removed, add=added)
    # the starting family is optimal, so the difference is a gain over the minimum
    assert count_k_chains(before, k) == conjectured_min(n, len(before), k)
    return count_k_chains(after, k) - count_k_chains(before, k)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda x: int(x.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
