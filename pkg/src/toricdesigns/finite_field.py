"""Exact arithmetic in GF(p^m) using the polynomial representation.

Elements are coefficient tuples of length ``m`` with the constant term first.
The field is ``Z_p[x] / (f)`` for a monic irreducible ``f`` of degree ``m``,
stored the same way (length ``m + 1``, leading coefficient 1).

Everything here is sized for desk-scale fields (``p^m`` up to about 2^20);
factorisation is trial division and nothing is cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import DomainError, UsageError

__all__ = [
    "FieldSpec",
    "FieldElement",
    "is_prime",
    "prime_factors",
    "prime_power",
    "next_prime",
    "is_irreducible",
    "find_irreducible",
    "find_primitive",
    "make_field",
    "field_arith",
    "dlog_table",
]


# ---------------------------------------------------------------------------
# integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order (trial division)."""
    if n < 1:
        raise UsageError(f"cannot factor {n}")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise UsageError otherwise."""
    if q < 2:
        raise UsageError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise UsageError(f"{q} is not a prime power")
    p, k = ps[0], 0
    while q > 1:
        q //= p
        k += 1
    return p, k


def next_prime(n: int) -> int:
    """Smallest prime strictly larger than ``n``."""
    c = n + 1
    while not is_prime(c):
        c += 1
    return c


# ---------------------------------------------------------------------------
# polynomials over Z_p (lists, constant term first, no trailing zeros)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    r = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(r) - 1 >= df and r:
        shift = len(r) - 1 - df
        c = (r[-1] * inv_lead) % p
        for i, fc in enumerate(f):
            r[shift + i] = (r[shift + i] - c * fc) % p
        _trim(r)
    return r


def _poly_mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _poly_mod(prod, f, p)


def _poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, f, p)
    return _poly_mod(result, f, p)


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _check_monic(p: int, coeffs: Sequence[int]) -> list[int]:
    if not is_prime(p):
        raise UsageError(f"p={p} is not prime")
    c = [int(x) for x in coeffs]
    if len(c) < 2:
        raise UsageError("polynomial must have degree >= 1")
    if any(not 0 <= x < p for x in c):
        raise UsageError(f"coefficients must lie in [0, {p})")
    if c[-1] != 1:
        raise UsageError("polynomial must be monic (leading coefficient 1, constant term first)")
    return c


def is_irreducible(p: int, coeffs: Sequence[int]) -> bool:
    """Ben-Or test: ``f`` of degree ``m`` is irreducible over Z_p iff
    ``gcd(x^(p^i) - x, f) == 1`` for every ``1 <= i <= m // 2``."""
    f = _check_monic(p, coeffs)
    m = len(f) - 1
    x = [0, 1]
    h = _poly_mod(x, f, p)
    for _ in range(m // 2):
        h = _poly_powmod(h, p, f, p)
        g = _poly_gcd(f, _poly_sub(h, x, p), p)
        if len(g) > 1:
            return False
    return True


def _digits(v: int, p: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        v, r = divmod(v, p)
        out.append(r)
    return tuple(out)


def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree ``m`` over Z_p.

    Candidates are scanned by the integer ``sum(c_i * p**i)`` of their lower
    coefficients, so the result is reproducible (e.g. x^6+x+1 for 2^6).
    """
    if not is_prime(p) or m < 1:
        raise UsageError(f"need prime p and m >= 1, got p={p}, m={m}")
    for v in range(p**m):
        cand = _digits(v, p, m) + (1,)
        if is_irreducible(p, cand):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# field objects


@dataclass(frozen=True)
class FieldElement:
    """An element of ``Z_p[x]/(modulus)``. Supports ``+ - * / **``."""

    p: int
    modulus: tuple[int, ...]
    coeffs: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.modulus) - 1

    def _other(self, other: FieldElement) -> FieldElement:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.p != self.p or other.modulus != self.modulus:
            raise UsageError("operands belong to different fields")
        return other

    def _new(self, poly: Sequence[int]) -> FieldElement:
        c = list(poly) + [0] * (self.m - len(poly))
        return FieldElement(self.p, self.modulus, tuple(c))

    def __add__(self, other):
        other = self._other(other)
        return self._new([(a + b) % self.p for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        other = self._other(other)
        return self._new([(a - b) % self.p for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self._new([(-a) % self.p for a in self.coeffs])

    def __mul__(self, other):
        other = self._other(other)
        return self._new(_poly_mulmod(self.coeffs, other.coeffs, self.modulus, self.p))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e > 0 and self.is_zero():
            return self
        return self._new(_poly_powmod(self.coeffs, e, self.modulus, self.p))

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise DomainError("zero has no multiplicative inverse")
        # a^(p^m - 2) = a^-1 in the multiplicative group
        return self ** (self.p**self.m - 2)

    def to_int(self) -> int:
        """Base-``p`` integer with the constant term as the lowest digit."""
        return sum(c * self.p**i for i, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "GF({}^{})[{}]".format(self.p, self.m, " + ".join(terms) or "0")


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) with a fixed irreducible modulus and (optionally) a generator.

    ``generator`` is a coefficient tuple; ``None`` marks a spec that still
    needs :func:`find_primitive`.
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    generator: tuple[int, ...] | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        if not is_prime(self.p) or self.m < 1:
            raise UsageError(f"need prime p and m >= 1, got p={self.p}, m={self.m}")
        if len(self.modulus) != self.m + 1:
            raise UsageError(f"modulus must have m+1={self.m + 1} coefficients")
        if not is_irreducible(self.p, self.modulus):
            raise UsageError(f"modulus {list(self.modulus)} is reducible over Z_{self.p}")
        if self.generator is not None:
            g = tuple(int(c) for c in self.generator)
            g = g + (0,) * (self.m - len(g))
            object.__setattr__(self, "generator", g)
            if len(g) != self.m or any(not 0 <= c < self.p for c in g):
                raise UsageError("generator coefficients out of range")
            if not _has_full_order(self.element(g)):
                raise UsageError(f"generator {list(g)} is not primitive")

    @property
    def order(self) -> int:
        return self.p**self.m

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.m:
            raise UsageError(f"element has more than m={self.m} coefficients")
        return FieldElement(self.p, self.modulus, tuple(c + [0] * (self.m - len(c))))

    def from_int(self, v: int) -> FieldElement:
        return FieldElement(self.p, self.modulus, _digits(v, self.p, self.m))

    @property
    def zero(self) -> FieldElement:
        return self.from_int(0)

    @property
    def one(self) -> FieldElement:
        return self.from_int(1)

    @property
    def x(self) -> FieldElement:
        """The class of the indeterminate (equals ``-modulus[0]`` when m=1)."""
        return self.element(_poly_mod([0, 1], self.modulus, self.p))

    @property
    def theta(self) -> FieldElement:
        if self.generator is None:
            raise UsageError("field spec has no generator; call find_primitive")
        return self.element(self.generator)

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.order):
            yield self.from_int(v)

    def owns(self, a: FieldElement) -> bool:
        return a.p == self.p and a.modulus == self.modulus

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "modulus": list(self.modulus),
            "generator": None if self.generator is None else list(self.generator),
        }

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        unknown = set(obj) - {"p", "m", "modulus", "generator"}
        if unknown:
            raise UsageError(f"unknown field-spec keys: {sorted(unknown)}")
        return cls(int(obj["p"]), int(obj["m"]), tuple(obj["modulus"]), obj.get("generator"))


def _has_full_order(g: FieldElement) -> bool:
    n = g.p**g.m - 1
    if g.is_zero():
        return False
    one = FieldElement(g.p, g.modulus, (1,) + (0,) * (g.m - 1))
    if g**n != one:
        return False
    return all(g ** (n // ell) != one for ell in prime_factors(n)) if n > 1 else True


def find_primitive(spec: FieldSpec) -> FieldElement:
    """Smallest element of multiplicative order ``p^m - 1``.

    Elements are ordered by :meth:`FieldElement.to_int`, i.e. the coefficient
    list read from the highest power down.  For GF(2^6) mod x^6+x^5+1 this
    gives ``x``.
    """
    for v in range(1, spec.order):
        g = spec.from_int(v)
        if _has_full_order(g):
            return g
    raise AssertionError("multiplicative group is cyclic; unreachable")


def make_field(
    p: int,
    m: int,
    modulus: Sequence[int] | None = None,
    generator: Sequence[int] | None = None,
) -> FieldSpec:
    """Build a complete :class:`FieldSpec`, searching for any missing part."""
    if modulus is None:
        modulus = find_irreducible(p, m)
    spec = FieldSpec(p, m, tuple(modulus), None if generator is None else tuple(generator))
    if spec.generator is None:
        spec = FieldSpec(p, m, spec.modulus, find_primitive(spec).coeffs)
    return spec


def field_arith(spec: FieldSpec, op: str, *operands: FieldElement | int) -> FieldElement:
    """Dispatch ``add``, ``sub``, ``mul``, ``pow`` or ``inv`` on elements of ``spec``.

    ``pow`` takes an element and an integer exponent.
    """
    elems = [o for o in operands if isinstance(o, FieldElement)]
    for e in elems:
        if not spec.owns(e):
            raise UsageError("operand does not belong to this field")
    if op == "add":
        a, b = operands
        return a + b
    if op == "sub":
        a, b = operands
        return a - b
    if op == "mul":
        a, b = operands
        return a * b
    if op == "pow":
        a, e = operands
        return a ** int(e)
    if op == "inv":
        (a,) = operands
        return a.inverse()
    raise UsageError(f"unknown field operation {op!r}")


def dlog_table(spec: FieldSpec) -> dict[FieldElement, int]:
    """Map every nonzero element ``g**a`` to ``a`` in ``[0, p^m - 1)``."""
    g = spec.theta
    table = {}
    cur = spec.one
    for a in range(spec.order - 1):
        table[cur] = a
        cur = cur * g
    if len(table) != spec.order - 1:
        raise AssertionError("generator is not primitive")
    return table
