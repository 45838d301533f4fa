"""Lattice-vector sets and crystal ball numbers of the root lattice A_{n-1}.

``P_s^(n)`` is the set of differences ``q - r`` of two compositions of ``s``
into ``n`` nonnegative parts.  Equivalently it is every integer vector with
zero sum whose positive entries add up to at most ``s``; that characterisation
is what :func:`enumerate_Pst` walks, so it never materialises the (much
larger) set of composition pairs.
"""

from __future__ import annotations

from math import comb
from typing import Iterator

from .errors import UsageError, ResourceError

__all__ = [
    "MAX_PST_SIZE",
    "enumerate_Pst",
    "enumerate_St",
    "crystal_ball",
    "min_design_size",
]

MAX_PST_SIZE = 10**7

ExponentVector = tuple[int, ...]


def crystal_ball(n: int, t: int) -> int:
    """Crystal ball number ``G_{n-1}(t)`` as an exact integer.

    >>> crystal_ball(3, 2)
    19
    """
    if n < 1 or t < 0:
        raise UsageError(f"need n >= 1 and t >= 0, got n={n}, t={t}")
    return sum(comb(n - 1, i) ** 2 * comb(n - i + t - 1, t - i) for i in range(t + 1))


def min_design_size(n: int, t: int) -> int:
    """Lower bound on the size of a finite P(T^n) t-design."""
    if n < 1 or t < 1:
        raise UsageError(f"need n >= 1 and t >= 1, got n={n}, t={t}")
    return crystal_ball(n, t // 2)


def _guard(n: int, s: int) -> None:
    if n < 1 or s < 0:
        raise UsageError(f"need n >= 1 and s >= 0, got n={n}, s={s}")
    size = crystal_ball(n, s)
    if size > MAX_PST_SIZE:
        raise ResourceError(f"|P_{s}^({n})| = {size} exceeds the guard {MAX_PST_SIZE}")


def _walk(n: int, s: int) -> Iterator[ExponentVector]:
    # Entries are chosen left to right in increasing order, so output is
    # lexicographic.  pos/neg track the running positive and negative mass.
    vec = [0] * n

    def rec(i: int, pos: int, neg: int):
        if i == n - 1:
            last = neg - pos
            if -s <= last <= s and pos + max(last, 0) <= s:
                vec[i] = last
                yield tuple(vec)
            return
        for v in range(-(s - neg), s - pos + 1):
            vec[i] = v
            yield from rec(i + 1, pos + max(v, 0), neg + max(-v, 0))

    yield from rec(0, 0, 0)


def enumerate_Pst(n: int, s: int) -> list[ExponentVector]:
    """All vectors of ``P_s^(n)`` in lexicographic order."""
    _guard(n, s)
    if n == 1:
        return [(0,)]
    return list(_walk(n, s))


def enumerate_St(n: int, t: int) -> list[ExponentVector]:
    """``(P_t^(n) minus 0)`` modulo ``k ~ -k``.

    The representative kept is the one whose first nonzero entry is positive.
    """
    out = []
    for k in enumerate_Pst(n, t):
        for v in k:
            if v:
                if v > 0:
                    out.append(k)
                break
    return out
