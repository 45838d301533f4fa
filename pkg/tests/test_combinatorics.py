from itertools import product
from math import comb

import pytest

from toricdesigns.combinatorics import crystal_ball, enumerate_Pst, enumerate_St, min_design_size
from toricdesigns.errors import ResourceError, UsageError


def compositions(s, n):
    return [c for c in product(range(s + 1), repeat=n) if sum(c) == s]


def pst_oracle(n, s):
    """The defining set {q - r}, built from every pair of compositions."""
    cs = compositions(s, n)
    return {tuple(a - b for a, b in zip(q, r)) for q in cs for r in cs}


def test_small_examples():
    assert enumerate_Pst(4, 0) == [(0, 0, 0, 0)]
    assert set(enumerate_Pst(2, 1)) == {(0, 0), (1, -1), (-1, 1)}
    assert len(enumerate_Pst(3, 2)) == 19


@pytest.mark.parametrize("n,s", [(n, s) for n in range(1, 6) for s in range(4)])
def test_enumeration_matches_definition(n, s):
    got = enumerate_Pst(n, s)
    assert got == sorted(got)
    assert len(set(got)) == len(got)
    assert set(got) == pst_oracle(n, s)


@pytest.mark.parametrize("n,s", [(n, s) for n in range(1, 7) for s in range(5)])
def test_size_is_crystal_ball(n, s):
    P = enumerate_Pst(n, s)
    assert len(P) == crystal_ball(n, s)
    assert len(P) % 2 == 1
    Pset = set(P)
    assert (0,) * n in Pset
    assert all(tuple(-v for v in k) in Pset for k in P)


def test_crystal_ball_values():
    assert crystal_ball(3, 2) == 19
    assert all(crystal_ball(n, 1) == n * (n - 1) + 1 for n in range(1, 51))
    assert all(crystal_ball(1, t) == 1 for t in range(10))
    assert all(crystal_ball(2, t) == 2 * t + 1 for t in range(21))
    # A_2 is the hexagonal lattice: 1, 7, 19, 37, 61
    assert [crystal_ball(3, t) for t in range(5)] == [1, 7, 19, 37, 61]


def test_crystal_ball_monotone():
    for n in range(1, 10):
        for t in range(8):
            assert crystal_ball(n, t) <= crystal_ball(n, t + 1)
            assert crystal_ball(n, t) <= crystal_ball(n + 1, t)


def test_crystal_ball_is_exact_for_large_arguments():
    # exact integer arithmetic: compare against the same sum in plain ints
    n, t = 60, 40
    expected = sum(comb(n - 1, i) ** 2 * comb(n - i + t - 1, t - i) for i in range(t + 1))
    assert crystal_ball(n, t) == expected
    assert isinstance(crystal_ball(n, t), int)


def test_min_design_size():
    assert min_design_size(6, 2) == 31
    assert min_design_size(7, 2) == 43
    assert all(min_design_size(n, 1) == 1 for n in range(1, 8))
    assert min_design_size(3, 2) == 7


def test_St():
    assert enumerate_St(2, 1) == [(1, -1)]
    assert len(enumerate_St(3, 1)) == 3
    assert len(enumerate_St(3, 2)) == 9
    for n in range(1, 6):
        for t in range(1, 4):
            S = enumerate_St(n, t)
            assert len(S) == (crystal_ball(n, t) - 1) // 2
            full = set(S) | {tuple(-v for v in k) for k in S} | {(0,) * n}
            assert full == set(enumerate_Pst(n, t))


def test_guards():
    with pytest.raises(UsageError):
        crystal_ball(0, 1)
    with pytest.raises(UsageError):
        enumerate_Pst(3, -1)
    with pytest.raises(ResourceError):
        enumerate_Pst(40, 10)
