from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from chainlab.bounds import middle_sum, thm13_lower
from chainlab.chains import count_k_chains
from chainlab.exceptions import DomainError
from chainlab.extremal import (
    canonical_family,
    check_extremal_2chain,
    conjectured_min,
    level_fill_order,
    saturated_example,
)
from chainlab.lattice import SetFamily, levels, sperner_bound


def test_fill_order():
    assert level_fill_order(4) == [2, 3, 1, 4, 0]
    assert level_fill_order(5) == [2, 3, 1, 4, 0, 5]


def test_canonical_examples():
    assert canonical_family(2, 3) == SetFamily.from_sets([[1], [2], [1, 2]], 2)
    fam = canonical_family(4, 7)
    assert fam == levels(4, [2]).with_changes(add=[0b0111])
    assert canonical_family(3, 6) == levels(3, [1, 2])
    with pytest.raises(DomainError):
        canonical_family(3, 9)


@given(st.integers(1, 7), st.data())
def test_canonical_size(n, data):
    s = data.draw(st.integers(0, 2 ** n))
    assert len(canonical_family(n, s)) == s


def test_conjectured_examples():
    assert conjectured_min(4, 7, 2) == 3
    assert conjectured_min(3, 4, 2) == 2
    assert conjectured_min(4, 11, 3) == 6


def test_certificate_examples():
    fam = SetFamily.from_sets([[1], [2], [3], [1, 2]], 3)
    cert = check_extremal_2chain(fam)
    assert cert.satisfied and str(cert.r) == "1/2"
    assert cert.violating_sets == ()

    bad = fam.with_changes(remove=[0b011], add=[0])
    cert = check_extremal_2chain(bad)
    assert not cert.satisfied and not cert.condition_results[0]
    assert 0 in cert.violating_sets

    cert = check_extremal_2chain(levels(4, [2, 3]))
    assert cert.satisfied and cert.r.twice == 2

    with pytest.raises(DomainError):
        check_extremal_2chain(levels(4, [1]))


def test_certificate_reports_comparable_boundary_sets():
    # r = 1 at n=4, s=8: two boundary 3-sets are fine, a 1-set below them is not
    fam = levels(4, [2]).with_changes(add=[0b0111, 0b0001])
    cert = check_extremal_2chain(fam)
    assert not cert.satisfied
    assert not cert.condition_results[2]
    assert {0b0111, 0b0001} <= set(cert.violating_sets)
    assert cert.to_dict()["conditions"][2] == {"index": 3, "applicable": True, "holds": False}


@given(st.integers(1, 7), st.data())
def test_canonical_passes_certificate(n, data):
    s = data.draw(st.integers(sperner_bound(n), 2 ** n))
    cert = check_extremal_2chain(canonical_family(n, s))
    assert cert.satisfied and not cert.violating_sets


@settings(deadline=None)
@given(st.integers(2, 6), st.data())
def test_thm13_tight_above_the_zero_threshold(n, data):
    k = data.draw(st.integers(2, n))
    base = middle_sum(n, k - 1)
    assert conjectured_min(n, base, k) == 0
    t = data.draw(st.integers(0, min(comb(n, (n + k) // 2), 2 ** n - base)))
    assert conjectured_min(n, base + t, k) == thm13_lower(n, k, t)


def test_saturated_examples():
    fam = saturated_example(1)
    assert fam == SetFamily.from_sets([[2], [3], [1, 2], [1, 3]], 3)
    assert count_k_chains(fam, 2) == 2
    fam = saturated_example(2)
    assert len(fam) == 12 and count_k_chains(fam, 2) == 6
    with pytest.raises(DomainError):
        saturated_example(0)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_saturated_structure(m):
    fam = saturated_example(m)
    n = 2 * m + 1
    assert count_k_chains(fam, 2) == comb(2 * m, m)
    # each member sits in exactly one comparable pair
    for a in fam.masks:
        partners = [b for b in fam.masks if b != a and (a & ~b == 0 or b & ~a == 0)]
        assert len(partners) == 1
    assert len(fam) * n == sperner_bound(n) * (n + 1)
