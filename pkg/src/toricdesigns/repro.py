"""End-to-end checks of the worked examples, plus a design corpus.

:func:`run_repro` executes each check and returns one :class:`ReproItem`
per check; the ``repro`` CLI subcommand prints them as a table.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Callable, Iterator, NamedTuple

from .combinatorics import crystal_ball, enumerate_Pst
from .difference_sets import BtSet, bt_size_bound_check, search_sidon, singer_bt_set, sum_set, verify_bt
from .finite_field import make_field
from .quantum_designs import almost_minimal_2design, frame_potential, moment_tensor_check
from .toric_designs import (
    WeightedPhaseSet,
    grid_design,
    group_design_from_bt,
    is_minimal,
    quadratic_prime_design,
    verify_design,
)

__all__ = [
    "GF64_MODULUS",
    "GF64_GENERATOR",
    "SINGER_Q4_T",
    "SINGER_Q4_S",
    "SINGER_Q4_SUMS",
    "DENSE_SIDON_31",
    "ReproItem",
    "run_repro",
    "corpus_bt_sets",
    "corpus_designs",
    "bound_violations",
]

# GF(2^6) = Z_2[x]/(1 + x^5 + x^6) with generator x
GF64_MODULUS = (1, 0, 0, 0, 0, 1, 1)
GF64_GENERATOR = (0, 1)
SINGER_Q4_T = [0, 1, 14, 25, 58]
SINGER_Q4_S = [0, 1, 4, 14, 16]
SINGER_Q4_SUMS = [0, 1, 2, 4, 5, 7, 8, 9, 11, 14, 15, 16, 17, 18, 20]
DENSE_SIDON_31 = (0, 1, 3, 8, 12, 18)
QUADRATIC_N2 = [(Fraction(0), Fraction(k, 3)) for k in range(3)]


class ReproItem(NamedTuple):
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float


def _singer() -> tuple[bool, str]:
    F = make_field(2, 6, GF64_MODULUS, GF64_GENERATOR)
    z = singer_bt_set(4, 2, F)
    T = z.provenance["T"]
    ok = T == SINGER_Q4_T and list(z.elements) == SINGER_Q4_S and z.m == 21 and sum_set(z) == SINGER_Q4_SUMS
    return ok, f"T={T} S={list(z.elements)} mod {z.m}, |sums|={len(sum_set(z))}"


def _sidon31() -> tuple[bool, str]:
    z = BtSet(2, 31, DENSE_SIDON_31)
    v = verify_bt(z)
    X = group_design_from_bt(z)
    rep = verify_design(X, 2)
    ok = v.valid and rep.max_deviation < 1e-12 and is_minimal(X, 2)
    return ok, f"valid={v.valid} |X|={len(X)} deviation={rep.max_deviation:.2e}"


def _search43(threads: int = 1) -> tuple[bool, str]:
    found = search_sidon(7, 43, "all", threads=threads)
    return not found, f"{len(found)} Sidon sets of size 7 mod 43"


def _crystal_ball() -> tuple[bool, str]:
    ok = all(len(enumerate_Pst(n, s)) == crystal_ball(n, s) for n in range(1, 7) for s in range(5))
    ok &= all(crystal_ball(n, 1) == n * (n - 1) + 1 for n in range(1, 51))
    ok &= all(crystal_ball(2, t) == 2 * t + 1 for t in range(21))
    return ok, "|P_s^(n)| = G_{n-1}(s) for n<=6, s<=4"


def _constructions() -> tuple[bool, str]:
    worst = 0.0
    for n in range(2, 5):
        for t in range(1, 4):
            worst = max(worst, verify_design(grid_design(n, t), t).max_deviation)
    for n in range(2, 7):
        worst = max(worst, verify_design(quadratic_prime_design(n), 2).max_deviation)
    X2 = quadratic_prime_design(2)
    same = list(X2.points) == QUADRATIC_N2 and set(X2.weights) == {Fraction(1, 3)}
    return worst < 1e-12 and same, f"max deviation {worst:.2e}; n=2 quadratic matches: {same}"


def _quantum() -> tuple[bool, str]:
    ok = True
    parts = []
    for d in (3, 4, 5, 6):
        D = almost_minimal_2design(d)
        fp = frame_potential(D, 2)
        rep = moment_tensor_check(D, 2, 1e-10)
        ok &= len(D) == d * d + 1 and abs(fp - 2 / (d * (d + 1))) <= 1e-12 and rep.passed
        parts.append(f"d={d}:{len(D)}")
    D3 = almost_minimal_2design(3)
    ok &= sorted(set(D3.weights)) == [Fraction(1, 12), Fraction(3, 28)]
    return ok, " ".join(parts)


_CHECKS: list[tuple[int, str, Callable[[], tuple[bool, str]], float]] = [
    (1, "Singer set q=4, t=2 in GF(2^6)", _singer, 1.0),
    (2, "dense Sidon set mod 31", _sidon31, 1.0),
    (3, "no Sidon set of size 7 mod 43", _search43, 10.0),
    (4, "crystal ball counts", _crystal_ball, 5.0),
    (5, "grid and quadratic designs", _constructions, 10.0),
    (6, "almost-minimal quantum 2-designs", _quantum, 30.0),
]


def run_repro() -> list[ReproItem]:
    items = []
    for number, name, check, limit in _CHECKS:
        t0 = time.perf_counter()
        try:
            ok, detail = check()
        except Exception as exc:  # report, don't abort the table
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        dt = time.perf_counter() - t0
        items.append(ReproItem(number, name, ok and dt < limit, detail, dt, limit))
    return items


def corpus_bt_sets() -> Iterator[BtSet]:
    """Every B_t set the package constructs or the examples mention."""
    yield BtSet(2, 21, tuple(SINGER_Q4_S))
    yield BtSet(2, 31, DENSE_SIDON_31)
    yield BtSet(2, 7, (0, 1, 3))
    for q in (2, 3, 4, 5, 7, 8, 9):
        for t in (2, 3):
            yield singer_bt_set(q, t)
    for n, m in ((2, 3), (3, 7), (4, 13), (5, 21), (6, 31)):
        yield from search_sidon(n, m, "first")


def corpus_designs() -> Iterator[tuple[WeightedPhaseSet, int]]:
    """``(design, t)`` pairs for every construction at its certified degree."""
    for n in range(2, 5):
        for t in range(1, 4):
            yield grid_design(n, t), t
    for n in range(2, 7):
        yield quadratic_prime_design(n), 2
    for z in corpus_bt_sets():
        yield group_design_from_bt(z), z.t


def bound_violations() -> list[str]:
    """Descriptions of any corpus item breaking the size bounds (should be empty)."""
    bad = []
    for z in corpus_bt_sets():
        if verify_bt(z).valid and not bt_size_bound_check(z).satisfied:
            bad.append(f"B_{z.t} set {z.elements} mod {z.m}")
    for X, t in corpus_designs():
        if verify_design(X, t).passed and len(X) < crystal_ball(X.n, t // 2):
            bad.append(f"{X.provenance.get('construction')} design n={X.n} t={t} size {len(X)}")
    return bad
