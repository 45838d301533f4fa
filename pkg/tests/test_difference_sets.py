from itertools import combinations, product
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from toricdesigns.combinatorics import crystal_ball
from toricdesigns.difference_sets import (
    BtSet,
    bt_size_bound_check,
    search_sidon,
    singer_bt_set,
    singer_exponents,
    sum_set,
    verify_bt,
)
from toricdesigns.errors import UsageError
from toricdesigns.finite_field import make_field


def bt_oracle(elements, t, m):
    """Definition check: equal sums over ordered t-tuples force equal multisets."""
    seen = {}
    for idx in product(range(len(elements)), repeat=t):
        s = sum(elements[i] for i in idx) % m
        key = tuple(sorted(idx))
        if seen.setdefault(s, key) != key:
            return False
    return True


def sidon_oracle(n, m):
    """All n-subsets of Z_m containing 0 whose nonzero differences are distinct."""
    out = []
    for rest in combinations(range(1, m), n - 1):
        z = (0,) + rest
        diffs = [(a - b) % m for a in z for b in z if a != b]
        if len(diffs) == len(set(diffs)):
            out.append(z)
    return out


# --- verification --------------------------------------------------------


def test_singer_q4_in_gf64():
    F = make_field(2, 6, (1, 0, 0, 0, 0, 1, 1), (0, 1))
    z = singer_bt_set(4, 2, F)
    assert z.provenance["T"] == [0, 1, 14, 25, 58]
    assert z.elements == (0, 1, 4, 14, 16) and z.m == 21
    assert sum_set(z) == [0, 1, 2, 4, 5, 7, 8, 9, 11, 14, 15, 16, 17, 18, 20]
    assert verify_bt(z).valid


def test_small_sidon_examples():
    assert verify_bt(BtSet(2, 7, (0, 1, 3))).valid
    assert verify_bt(BtSet(2, 31, (0, 1, 3, 8, 12, 18))).valid
    bad = verify_bt(BtSet(2, 6, (0, 1, 2)))
    assert not bad.valid
    assert bad.distinct_sums < bad.expected_sums == 6
    (a, b), (c, d) = bad.witness
    assert (a + b) % 6 == (c + d) % 6 and sorted((a, b)) != sorted((c, d))
    za, zc, zd, zb = bad.difference_form
    assert (za - zc) % 6 == (zd - zb) % 6


@settings(max_examples=300, deadline=None)
@given(
    st.integers(1, 4),
    st.integers(2, 40).flatmap(lambda m: st.tuples(st.just(m), st.sets(st.integers(0, m - 1), min_size=1, max_size=6))),
)
def test_verify_matches_definition(t, m_els):
    m, els = m_els
    z = BtSet(t, m, tuple(els))
    assert verify_bt(z).valid == bt_oracle(z.elements, t, m)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(2, 7, (0, 1, 3)), (2, 13, (0, 1, 3, 9)), (2, 21, (0, 1, 4, 14, 16)), (3, 40, (0, 1, 4, 13))]), st.integers(-50, 50), st.integers(1, 60))
def test_shift_and_dilation_preserve_bt(case, c, u):
    t, m, els = case
    z = BtSet(t, m, els)
    assert verify_bt(z).valid
    assert verify_bt(z.shifted(c)).valid
    if gcd(u, m) == 1:
        assert verify_bt(z.dilated(u)).valid


def test_bound_check():
    res = bt_size_bound_check(BtSet(2, 21, (0, 1, 4, 14, 16)))
    assert res.bound == 21 and res.satisfied and res.saturated
    res = bt_size_bound_check(BtSet(2, 31, (0, 1, 3, 8, 12, 18)))
    assert res.bound == 31 and res.saturated
    res = bt_size_bound_check(BtSet(3, 5, (0, 1)))
    assert res.bound == 3 and res.satisfied and not res.saturated
    res = bt_size_bound_check(BtSet(1, 1, (0,)))
    assert res.bound == 1 and res.saturated
    with pytest.raises(UsageError):
        bt_size_bound_check(BtSet(2, 6, (0, 1, 2)))


def test_json_roundtrip():
    z = BtSet(2, 7, (3, 0, 1), {"note": "x"})
    assert z.elements == (0, 1, 3)
    assert BtSet.from_json(z.to_json()) == z
    with pytest.raises(UsageError):
        BtSet.from_json({**z.to_json(), "bogus": 1})


@pytest.mark.parametrize("args", [(2, 7, (0, 7)), (2, 7, (1, 1)), (0, 7, (0,)), (2, 7, ())])
def test_invalid_sets_rejected(args):
    with pytest.raises(UsageError):
        BtSet(*args)


# --- Singer --------------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
@pytest.mark.parametrize("t", [2, 3])
def test_singer_sets_are_bt(q, t):
    z = singer_bt_set(q, t)
    assert z.n == q + 1
    assert z.m == (q ** (t + 1) - 1) // (q - 1)
    assert bt_oracle(z.elements, t, z.m) if z.n ** t <= 10**5 else verify_bt(z).valid
    assert z.m >= crystal_ball(z.n, t // 2)


def test_singer_default_q2():
    assert singer_bt_set(2, 2).elements == (0, 1, 3)
    assert singer_bt_set(2, 2).m == 7


def test_singer_t1_is_whole_group():
    z = singer_bt_set(5, 1)
    assert z.m == 6 and z.n == 6


def test_singer_provenance_records_field():
    z = singer_bt_set(3, 2)
    F = make_field(3, 3)
    assert z.provenance["field"] == F.to_json()
    T, F2 = singer_exponents(3, 2)
    assert F2 == F and T == z.provenance["T"]


def test_singer_rejects_non_prime_power_and_wrong_field():
    with pytest.raises(UsageError):
        singer_bt_set(6, 2)
    with pytest.raises(UsageError):
        singer_bt_set(4, 2, make_field(2, 4))


# --- search --------------------------------------------------------------


@pytest.mark.parametrize("n,m", [(2, 3), (3, 7), (3, 8), (3, 10), (4, 13), (4, 14), (4, 12), (5, 21), (5, 20)])
def test_search_matches_subset_enumeration(n, m):
    got = [z.elements for z in search_sidon(n, m, "all")]
    assert got == sidon_oracle(n, m)


def test_search_modes():
    assert search_sidon(2, 3, "exists")
    assert [z.elements for z in search_sidon(4, 13, "first")] == [sidon_oracle(4, 13)[0]]
    assert search_sidon(5, 20, "exists") == []
    assert len(search_sidon(4, 13, "exists")) == 1
    with pytest.raises(UsageError):
        search_sidon(3, 7, "some")


def test_search_dense_31():
    found = [z.elements for z in search_sidon(6, 31, "all")]
    assert (0, 1, 3, 8, 12, 18) in found
    assert len(found) == 60
    assert all(verify_bt(BtSet(2, 31, z)).valid for z in found)


def test_search_43_is_empty():
    assert search_sidon(7, 43, "all") == []


def test_search_thread_independent():
    assert search_sidon(5, 21, "all", threads=2) == search_sidon(5, 21, "all", threads=1)
    assert search_sidon(4, 13, "first", threads=2) == search_sidon(4, 13, "first", threads=1)


def test_search_progress_callback():
    calls = []
    search_sidon(4, 13, "all", progress=lambda i, total: calls.append((i, total)))
    assert calls and calls[-1][0] == calls[-1][1]
