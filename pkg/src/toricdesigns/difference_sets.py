"""B_t mod m sets: exact verification, Singer's construction, Sidon search.

A set ``z`` of ``n`` residues is B_t mod m when all ``C(n+t-1, t)`` sums of
``t``-element multisets drawn from ``z`` are distinct mod ``m``.  For ``t = 2``
these are modular Sidon sets.  Cyclic P(T^n) t-designs of size ``m`` are the
same thing (see :func:`toricdesigns.toric_designs.group_design_from_bt`).
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Callable

from .combinatorics import crystal_ball
from .errors import ResourceError, UsageError
from .finite_field import FieldSpec, dlog_table, make_field, prime_power

__all__ = [
    "BtSet",
    "BtVerification",
    "BoundCheck",
    "MAX_MULTISETS",
    "verify_bt",
    "sum_set",
    "singer_exponents",
    "singer_bt_set",
    "search_sidon",
    "bt_size_bound_check",
]

log = logging.getLogger(__name__)

MAX_MULTISETS = 10**8


@dataclass(frozen=True)
class BtSet:
    """Candidate B_t mod m set; elements are stored sorted."""

    t: int
    m: int
    elements: tuple[int, ...]
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.t < 1 or self.m < 1:
            raise UsageError(f"need t >= 1 and m >= 1, got t={self.t}, m={self.m}")
        els = tuple(sorted(int(e) for e in self.elements))
        if not els:
            raise UsageError("a B_t set needs at least one element")
        if any(not 0 <= e < self.m for e in els):
            raise UsageError(f"elements must lie in [0, {self.m})")
        if len(set(els)) != len(els):
            raise UsageError("elements must be distinct")
        object.__setattr__(self, "elements", els)

    @property
    def n(self) -> int:
        return len(self.elements)

    def shifted(self, c: int) -> BtSet:
        return BtSet(self.t, self.m, tuple((e + c) % self.m for e in self.elements), self.provenance)

    def dilated(self, u: int) -> BtSet:
        return BtSet(self.t, self.m, tuple((e * u) % self.m for e in self.elements), self.provenance)

    def to_json(self) -> dict:
        return {"t": self.t, "m": self.m, "elements": list(self.elements), "provenance": self.provenance}

    @classmethod
    def from_json(cls, obj: dict) -> BtSet:
        unknown = set(obj) - {"t", "m", "elements", "provenance", "schema_version"}
        if unknown:
            raise UsageError(f"unknown B_t-set keys: {sorted(unknown)}")
        return cls(int(obj["t"]), int(obj["m"]), tuple(obj["elements"]), obj.get("provenance", {}))


@dataclass(frozen=True)
class BtVerification:
    valid: bool
    distinct_sums: int
    expected_sums: int
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    # t=2 only: (z_a, z_c, z_d, z_b) with z_a - z_c == z_d - z_b mod m
    difference_form: tuple[int, int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class BoundCheck:
    bound: int
    satisfied: bool
    saturated: bool


def _check_multiset_count(n: int, t: int) -> int:
    count = comb(n + t - 1, t)
    if count > MAX_MULTISETS:
        raise ResourceError(f"C({n + t - 1}, {t}) = {count} multisets exceeds {MAX_MULTISETS}")
    return count


def sum_set(z: BtSet) -> list[int]:
    """Sorted distinct values of the t-fold multiset sums of ``z`` mod m."""
    _check_multiset_count(z.n, z.t)
    return sorted({sum(c) % z.m for c in combinations_with_replacement(z.elements, z.t)})


def verify_bt(z: BtSet) -> BtVerification:
    """Count distinct t-fold sums and report the first colliding pair."""
    expected = _check_multiset_count(z.n, z.t)
    seen: dict[int, tuple[int, ...]] = {}
    witness = None
    for ms in combinations_with_replacement(z.elements, z.t):
        s = sum(ms) % z.m
        if s in seen:
            if witness is None:
                witness = (seen[s], ms)
        else:
            seen[s] = ms
    distinct = len(seen)
    diff = None
    if witness is not None and z.t == 2:
        (a, b), (c, d) = witness
        diff = (a, c, d, b)
    return BtVerification(distinct == expected, distinct, expected, witness, diff)


def bt_size_bound_check(z: BtSet) -> BoundCheck:
    """Check ``m >= G_{n-1}(t // 2)`` for a valid B_t mod m set."""
    if not verify_bt(z).valid:
        raise UsageError("bound check needs a valid B_t set")
    bound = crystal_ball(z.n, z.t // 2)
    return BoundCheck(bound, z.m >= bound, z.m == bound)


# ---------------------------------------------------------------------------
# Singer construction


def _singer_field(q: int, t: int, field_spec: FieldSpec | None) -> FieldSpec:
    p, k = prime_power(q)
    if field_spec is None:
        return make_field(p, k * (t + 1))
    if field_spec.p != p or field_spec.m != k * (t + 1):
        raise UsageError(
            f"field GF({field_spec.p}^{field_spec.m}) is not GF({q}^{t + 1})"
        )
    if field_spec.generator is None:
        return make_field(field_spec.p, field_spec.m, field_spec.modulus)
    return field_spec


def singer_exponents(q: int, t: int, field_spec: FieldSpec | None = None) -> tuple[list[int], FieldSpec]:
    """Exponent set ``T_t = {0} u {a : theta^a - theta in GF(q)}``.

    GF(q) sits inside GF(q^(t+1)) as zero together with the powers of
    ``theta^((q^(t+1)-1)/(q-1))``.  Returns the sorted exponents and the field
    actually used.
    """
    if t < 1:
        raise UsageError(f"need t >= 1, got {t}")
    F = _singer_field(q, t, field_spec)
    order = F.order - 1
    m = order // (q - 1)
    theta = F.theta
    y = theta**m
    subfield = [F.zero] + [y**j for j in range(q - 1)]
    dlog = dlog_table(F)
    exps = {0}
    for gamma in subfield:
        exps.add(dlog[theta + gamma])
    return sorted(exps), F


def singer_bt_set(q: int, t: int, field_spec: FieldSpec | None = None) -> BtSet:
    """Singer's B_t mod ``(q^(t+1)-1)/(q-1)`` set of size ``q + 1``.

    Without ``field_spec`` the field is built from the first irreducible
    modulus and smallest primitive element; both are recorded in the
    provenance because the resulting residues depend on them.
    """
    exps, F = singer_exponents(q, t, field_spec)
    m = (q ** (t + 1) - 1) // (q - 1)
    return BtSet(
        t,
        m,
        tuple(a % m for a in exps),
        {"construction": "singer", "q": q, "T": exps, "field": F.to_json()},
    )


# ---------------------------------------------------------------------------
# Sidon search


def _extend(n: int, m: int, elems: list[int], mask: int, mode: str, out: list) -> bool:
    """Depth-first extension of a canonical prefix.  Returns True to stop."""
    if len(elems) == n:
        out.append(tuple(elems))
        return mode != "all"
    last = elems[-1]
    for c in range(last + 1, m - (n - len(elems)) + 1):
        new = mask
        ok = True
        for z in elems:
            d1 = (c - z) % m
            bit = 1 << d1
            if new & bit:
                ok = False
                break
            new |= bit
            d2 = m - d1
            bit = 1 << d2
            if new & bit:
                ok = False
                break
            new |= bit
        if ok:
            elems.append(c)
            stop = _extend(n, m, elems, new, mode, out)
            elems.pop()
            if stop:
                return True
    return False


def _branch(args: tuple[int, int, int, str]) -> list[tuple[int, ...]]:
    n, m, second, mode = args
    out: list[tuple[int, ...]] = []
    d = second % m
    mask = (1 << d) | (1 << (m - d))
    if d == m - d:
        return out
    _extend(n, m, [0, second], mask, mode, out)
    return out


def search_sidon(
    n: int,
    m: int,
    mode: str = "all",
    threads: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> list[BtSet]:
    """Exhaustive search for Sidon sets of size ``n`` mod ``m`` containing 0.

    A new element is admitted only if none of its differences to the current
    prefix has appeared already, tracked in an ``m``-bit mask.  ``mode`` is
    ``"all"``, ``"first"`` (lexicographically smallest) or ``"exists"``
    (stop at the first hit).  Translates are not generated; dilates are not
    deduplicated.  Work is split over the choice of second element, and the
    merged result does not depend on ``threads``.
    """
    if mode not in ("all", "first", "exists"):
        raise UsageError(f"unknown search mode {mode!r}")
    if n < 1 or m < 1:
        raise UsageError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    prov = {"construction": "search", "mode": mode}
    if n == 1:
        return [BtSet(2, m, (0,), prov)]
    if n > m:
        return []

    branches = [(n, m, s, mode) for s in range(1, m - n + 2)]
    found: list[tuple[int, ...]] = []
    total = len(branches)

    def consume(results):
        for i, res in enumerate(results, 1):
            found.extend(res)
            if progress is not None:
                progress(i, total)
            log.debug("sidon n=%d m=%d: branch %d/%d, %d found", n, m, i, total, len(found))
            if res and mode != "all":
                return

    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            consume(ex.map(_branch, branches))
    else:
        consume(map(_branch, branches))

    found.sort()
    if mode != "all":
        found = found[:1]
    return [BtSet(2, m, z, dict(prov)) for z in found]
