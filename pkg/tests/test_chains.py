from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from chainlab.chains import (
    Chain,
    count_2chains_cross,
    count_chains_step_constrained,
    count_k_chains,
    lym_audit,
    owner_counts,
    owner_of,
    perm_weight_chain,
    perm_weight_set,
    prefix_member_count,
)
from chainlab.exceptions import DomainError
from chainlab.extremal import canonical_family
from chainlab.lattice import ElementSet, SetFamily, full_level, levels, power_set

from conftest import brute_chains, brute_count, families


def test_count_examples():
    assert count_k_chains(full_level(4, 2), 2) == 0
    assert count_k_chains(power_set(2), 2) == 5
    assert count_k_chains(power_set(2), 3) == 2
    assert count_k_chains(canonical_family(4, 7), 2) == 3


def test_count_small_families():
    assert count_k_chains(SetFamily(3, []), 2) == 0
    assert count_k_chains(SetFamily(3, [1]), 2) == 0
    with pytest.raises(DomainError):
        count_k_chains(power_set(2), 1)


def test_count_big_integers():
    # every permutation of [n] is a maximal chain of the power set
    assert count_k_chains(power_set(10), 11) == factorial(10)


def test_cross_examples():
    assert count_2chains_cross(full_level(4, 2), full_level(4, 3)) == 12
    anti = full_level(4, 2)
    assert count_2chains_cross(anti, anti) == 0
    assert count_2chains_cross(SetFamily(3, [0b001]), SetFamily(3, [0b011, 0b110])) == 1
    with pytest.raises(DomainError):
        count_2chains_cross(SetFamily(2, []), SetFamily(3, []))


@given(families(max_n=4), families(max_n=4))
def test_cross_matches_pairs(a, b):
    if a.n != b.n:
        return
    expected = sum(1 for x in a.masks for y in b.masks if x != y and (x & ~y == 0 or y & ~x == 0))
    assert count_2chains_cross(a, b) == expected


def test_owner_examples():
    chain = Chain.from_masks([0b1, 0b11, 0b111], 5)
    assert owner_of(chain, 5) == ElementSet(0b1, 5)
    assert owner_of(Chain.from_masks([0b1, 0b11, 0b111], 4), 4) == ElementSet(0b111, 4)
    assert owner_of(Chain.from_masks([0b1, 0b11], 3), 3) == ElementSet(0b11, 3)


def test_chain_validation():
    with pytest.raises(DomainError):
        Chain.from_masks([0b11, 0b1], 3)
    with pytest.raises(DomainError):
        Chain.from_masks([0b1, 0b1], 3)
    assert Chain.from_masks([0, 0b1, 0b111], 3).steps == (1, 2)


def test_owner_counts_examples():
    fam = levels(4, [2, 3]).with_changes(add=[0b0001])
    rep = owner_counts(fam, 3)
    assert rep.total == 6 and rep.c2 == 0
    assert all(m.bit_count() == 3 for m, c in rep.per_owner.items() if c)

    rep = owner_counts(full_level(5, 2), 3)
    assert rep.total == 0 and not any(rep.per_owner.values())

    rep = owner_counts(levels(4, [1, 2, 3]), 3)
    assert (rep.total, rep.c1, rep.c2) == (24, 24, 0)


def test_owner_report_json():
    d = owner_counts(power_set(2), 2).to_dict()
    assert d["total"] == "5"
    assert d["per_owner"]["{}"] == "2"  # {} < {1} and {} < {2}
    assert sum(int(v) for v in d["per_owner"].values()) == 5


@settings(max_examples=60, deadline=None)
@given(families(max_n=5, max_size=20), st.integers(2, 4))
def test_owner_counts_match_enumeration(fam, k):
    rep = owner_counts(fam, k)
    expected = dict.fromkeys(fam.masks, 0)
    c1 = 0
    for chain in brute_chains(fam, k):
        owner = owner_of(Chain.from_masks(chain, fam.n), fam.n)
        expected[owner.bits] += 1
        c1 += all(b.bit_count() - a.bit_count() == 1 for a, b in zip(chain, chain[1:]))
    assert rep.per_owner == expected
    assert rep.total == sum(expected.values()) == count_k_chains(fam, k)
    assert rep.c1 == c1 and rep.c1 + rep.c2 == rep.total


@settings(max_examples=80, deadline=None)
@given(families(max_n=5, max_size=24), st.integers(2, 4))
def test_count_matches_enumeration(fam, k):
    assert count_k_chains(fam, k) == brute_count(fam, k)


@settings(deadline=None)
@given(families(max_n=5, max_size=20), st.integers(0, 31), st.integers(2, 3))
def test_adding_a_member_never_decreases(fam, extra, k):
    extra &= (1 << fam.n) - 1
    assert count_k_chains(fam.with_changes(add=[extra]), k) >= count_k_chains(fam, k)


@given(st.integers(2, 6), st.integers(2, 4), st.data())
def test_consecutive_levels_have_no_long_steps(n, k, data):
    lo = data.draw(st.integers(0, max(0, n - k + 1)))
    fam = levels(n, range(lo, min(n, lo + k - 1) + 1))
    assert owner_counts(fam, k).c2 == 0


def test_step_constrained_examples():
    assert count_chains_step_constrained(levels(4, [1, 2, 3]), 2, [2]) == 12
    assert count_chains_step_constrained(power_set(2), 2, [2]) == 1
    with pytest.raises(DomainError):
        count_chains_step_constrained(power_set(2), 3, [1])
    with pytest.raises(DomainError):
        count_chains_step_constrained(power_set(2), 2, [0])


@settings(deadline=None)
@given(families(max_n=5, max_size=20), st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_step_constrained_matches_enumeration(fam, alphas):
    k = len(alphas) + 1
    expected = sum(
        1 for ch in brute_chains(fam, k)
        if all(b.bit_count() - a.bit_count() >= al for a, b, al in zip(ch, ch[1:], alphas))
    )
    assert count_chains_step_constrained(fam, k, alphas) == expected
    if all(a == 1 for a in alphas):
        assert expected == count_k_chains(fam, k)


def test_perm_weights():
    assert perm_weight_set(ElementSet(0b1, 3), 3) == 2
    assert perm_weight_set(0, 4) == 24
    assert perm_weight_set(0b11, 4) == 4
    assert perm_weight_chain(Chain.from_masks([0b1, 0b11], 3), 3) == 1
    assert perm_weight_chain(Chain.from_masks([0, 0b1111], 4), 4) == 24
    assert perm_weight_chain(Chain.from_masks([0b1, 0b111], 4), 4) == 2


def _prefix_perms(chain_masks, n):
    hits = 0
    for perm in permutations(range(n)):
        prefixes = {0}
        acc = 0
        for x in perm:
            acc |= 1 << x
            prefixes.add(acc)
        hits += all(m in prefixes for m in chain_masks)
    return hits


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.data())
def test_perm_weight_chain_counts_permutations(n, data):
    masks = sorted(data.draw(st.sets(st.integers(0, (1 << n) - 1), min_size=1, max_size=4)),
                   key=lambda m: (m.bit_count(), m))
    if not all(a & ~b == 0 for a, b in zip(masks, masks[1:])):
        return
    chain = Chain.from_masks(masks, n)
    w = perm_weight_chain(chain, n)
    assert w == _prefix_perms(masks, n)
    assert w <= perm_weight_set(masks[0], n) and w <= perm_weight_set(masks[-1], n)
    assert w <= factorial(n)


def test_lym_audit_examples():
    audit = lym_audit(power_set(3), 2)
    assert audit.set_weight_sum == 24
    assert audit.chain_weight_sum == 36
    assert audit.margins[0] == 18
    assert all(audit.holds)
    assert audit.identity_ok

    audit = lym_audit(SetFamily(4, []), 2)
    assert audit.margins == audit.lhs and all(audit.holds)

    audit = lym_audit(canonical_family(4, 10), 3)
    assert audit.margins[0] == 0


def test_lym_audit_skips_permutations_above_eight():
    audit = lym_audit(full_level(9, 4), 2)
    assert audit.prefix_count is None and audit.identity_ok is None


@settings(max_examples=30, deadline=None)
@given(families(max_n=6, max_size=30), st.integers(2, 4))
def test_lym_identity_and_inequalities(fam, k):
    audit = lym_audit(fam, k)
    assert audit.prefix_count == prefix_member_count(fam) == audit.set_weight_sum
    assert all(audit.holds)
