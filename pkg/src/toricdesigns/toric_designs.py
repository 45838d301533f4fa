"""Weighted point sets on the projective torus P(T^n) and the t-design test.

Points are stored with their first coordinate fixed to 0.  A phase is
either a :class:`~fractions.Fraction` ``r`` meaning the angle ``2*pi*r``
(kept reduced into ``[0, 1)``), or a float angle in radians in
``[0, 2*pi)``.  One design never mixes the two.

A finite set ``X`` with weights ``w`` is a P(T^n) t-design exactly when
``sum_j w_j exp(i k . phi_j) = 0`` for every nonzero ``k`` in ``P_t^(n)``.
Only one of each ``+-k`` pair needs checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from ._json import SCHEMA_VERSION, number_from_json, number_to_json
from .combinatorics import enumerate_Pst, enumerate_St, min_design_size
from .difference_sets import BtSet, verify_bt
from .errors import ResourceError, UsageError
from .finite_field import next_prime

__all__ = [
    "DEFAULT_TOLERANCE",
    "MAX_DESIGN_POINTS",
    "WeightedPhaseSet",
    "VerificationReport",
    "grid_design",
    "quadratic_prime_design",
    "group_design_from_bt",
    "monomial_sums",
    "verify_design",
    "gram_matrix",
    "gram_check",
    "is_minimal",
    "drop_coordinate",
]

DEFAULT_TOLERANCE = 1e-9
MAX_DESIGN_POINTS = 10**7
TWO_PI = 2.0 * math.pi

# above this common denominator rational phases are evaluated as floats
_MAX_TABLE = 1 << 22


def _normalize(coords, rational: bool):
    if rational:
        c0 = coords[0]
        return tuple((c - c0) % 1 for c in coords)
    c0 = coords[0]
    return tuple(float((c - c0) % TWO_PI) for c in coords)


@dataclass(frozen=True)
class WeightedPhaseSet:
    """A finite weighted subset of P(T^n).

    Construct with :meth:`from_points` to merge coincident points; the plain
    constructor insists they are already distinct.
    """

    n: int
    points: tuple[tuple, ...]
    weights: tuple
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 1:
            raise UsageError(f"need n >= 1, got {self.n}")
        if len(self.points) != len(self.weights) or not self.points:
            raise UsageError("need one weight per point and at least one point")
        rational = _is_rational(self.points[0][0]) if self.points[0] else True
        pts = []
        for p in self.points:
            if len(p) != self.n:
                raise UsageError(f"point {p} does not have {self.n} coordinates")
            if any(_is_rational(c) != rational for c in p):
                raise UsageError("rational and real phases cannot be mixed")
            pts.append(_normalize(tuple(Fraction(c) if rational else c for c in p), rational))
        if len(set(pts)) != len(pts):
            raise UsageError("points must be distinct after normalisation")
        ws = tuple(Fraction(w) if _is_rational(w) else float(w) for w in self.weights)
        if any(w <= 0 for w in ws):
            raise UsageError("weights must be positive")
        if all(isinstance(w, Fraction) for w in ws):
            if sum(ws) != 1:
                raise UsageError(f"rational weights sum to {sum(ws)}, not 1")
        elif abs(math.fsum(float(w) for w in ws) - 1.0) > 1e-9:
            raise UsageError("weights do not sum to 1")
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "weights", ws)

    @classmethod
    def from_points(cls, n: int, points: Sequence[Sequence], weights: Sequence, provenance=None):
        """Normalise, merge coincident points (summing weights), keep first-seen order."""
        if not points:
            raise UsageError("need at least one point")
        rational = _is_rational(points[0][0])
        merged: dict[tuple, object] = {}
        for p, w in zip(points, weights):
            key = _normalize(tuple(Fraction(c) if rational else c for c in p), rational)
            merged[key] = merged[key] + w if key in merged else w
        return cls(n, tuple(merged), tuple(merged.values()), dict(provenance or {}))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def encoding(self) -> str:
        return "rational" if isinstance(self.points[0][0], Fraction) else "real"

    @property
    def is_uniform(self) -> bool:
        return len(set(self.weights)) == 1

    def angles(self) -> np.ndarray:
        """``(N, n)`` array of angles in radians."""
        if self.encoding == "rational":
            return np.array([[TWO_PI * float(c) for c in p] for p in self.points], dtype=float)
        return np.array(self.points, dtype=float)

    def weight_array(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights])

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "phase_encoding": self.encoding,
            "points": [[number_to_json(c) for c in p] for p in self.points],
            "weights": [number_to_json(w) for w in self.weights],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, obj: dict) -> WeightedPhaseSet:
        allowed = {"schema_version", "n", "phase_encoding", "points", "weights", "provenance"}
        unknown = set(obj) - allowed
        if unknown:
            raise UsageError(f"unknown design keys: {sorted(unknown)}")
        enc = obj.get("phase_encoding", "rational")
        pts = [[number_from_json(c) for c in p] for p in obj["points"]]
        for p in pts:
            for c in p:
                if _is_rational(c) != (enc == "rational"):
                    raise UsageError(f"phase {c!r} does not match encoding {enc!r}")
        ws = [number_from_json(w) for w in obj["weights"]]
        return cls(int(obj["n"]), tuple(tuple(p) for p in pts), tuple(ws), obj.get("provenance", {}))


def _is_rational(c) -> bool:
    return isinstance(c, (Fraction, int)) and not isinstance(c, bool)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a design check; ``passed`` iff ``max_deviation <= tolerance``."""

    t: int
    max_deviation: float
    worst: tuple | None
    passed: bool
    tolerance: float

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "max_deviation": self.max_deviation,
            "worst_exponent": None if self.worst is None else _listify(self.worst),
            "pass": self.passed,
            "tolerance": self.tolerance,
        }


def _listify(x):
    return [_listify(v) for v in x] if isinstance(x, tuple) else x


# ---------------------------------------------------------------------------
# constructions


def grid_design(n: int, t: int) -> WeightedPhaseSet:
    """All points with coordinates in ``Z_{t+1}``, uniform weights."""
    if n < 2 or t < 1:
        raise UsageError(f"need n >= 2 and t >= 1, got n={n}, t={t}")
    size = (t + 1) ** (n - 1)
    if size > MAX_DESIGN_POINTS:
        raise ResourceError(f"grid design has {size} points (guard {MAX_DESIGN_POINTS})")
    w = Fraction(1, size)
    pts = [(Fraction(0),) + tuple(Fraction(d, t + 1) for d in ds) for ds in product(range(t + 1), repeat=n - 1)]
    return WeightedPhaseSet(n, tuple(pts), (w,) * size, {"construction": "grid", "t": t})


def quadratic_prime_design(n: int) -> WeightedPhaseSet:
    """P(T^n) 2-design with phases ``(j*q1 + j^2*q2)/p`` over ``q1, q2 in Z_p``.

    ``p`` is the smallest prime above ``max(2, n)``.  Coincident points are
    merged, which leaves ``p`` points for n=2 and ``p^2`` otherwise.
    """
    if n < 2:
        raise UsageError(f"need n >= 2, got {n}")
    p = next_prime(max(2, n))
    w = Fraction(1, p * p)
    pts = [
        tuple(Fraction((j * q1 + j * j * q2) % p, p) for j in range(n))
        for q1 in range(p)
        for q2 in range(p)
    ]
    return WeightedPhaseSet.from_points(n, pts, [w] * len(pts), {"construction": "quadratic", "p": p})


def group_design_from_bt(z: BtSet, n: int | None = None) -> WeightedPhaseSet:
    """Cyclic design ``{d * z / m : d in Z_m}`` from a valid B_t mod m set."""
    if n is not None and n != z.n:
        raise UsageError(f"B_t set has {z.n} elements, not {n}")
    if not verify_bt(z).valid:
        raise UsageError(f"{z.elements} is not a B_{z.t} mod {z.m} set")
    m = z.m
    base = [(e - z.elements[0]) % m for e in z.elements]
    pts = [tuple(Fraction(d * e % m, m) for e in base) for d in range(m)]
    prov = {"construction": "group", "t": z.t, "m": m, "z": list(z.elements)}
    if z.provenance:
        prov["bt_provenance"] = z.provenance
    return WeightedPhaseSet.from_points(z.n, pts, [Fraction(1, m)] * m, prov)


def drop_coordinate(X: WeightedPhaseSet, i: int) -> WeightedPhaseSet:
    """Project a P(T^n) design onto P(T^{n-1}) by deleting coordinate ``i``."""
    if X.n < 2:
        raise UsageError("cannot drop a coordinate from P(T^1)")
    pts = [p[:i] + p[i + 1:] for p in X.points]
    return WeightedPhaseSet.from_points(X.n - 1, pts, list(X.weights), {"projected_from": X.provenance, "dropped": i})


# ---------------------------------------------------------------------------
# verification


def _phase_values(X: WeightedPhaseSet, exps: np.ndarray) -> np.ndarray:
    """``exp(i k . phi_j)`` as a ``(len(exps), N)`` complex array.

    Rational designs are reduced exactly modulo their common denominator
    before evaluating the exponential, so equal phases give identical values.
    """
    if X.encoding == "rational":
        den = 1
        for p in X.points:
            for c in p:
                den = math.lcm(den, c.denominator)
        if den <= _MAX_TABLE:
            ints = np.array([[c.numerator * (den // c.denominator) for c in p] for p in X.points], dtype=np.int64)
            table = np.exp(2j * np.pi * np.arange(den) / den)
            return table[(exps @ ints.T) % den]
    return np.exp(1j * (exps @ X.angles().T))


def _csum(values: np.ndarray) -> complex:
    return complex(math.fsum(values.real), math.fsum(values.imag))


def monomial_sums(X: WeightedPhaseSet, exponents: Sequence[Sequence[int]]) -> np.ndarray:
    """Weighted sums ``sum_j w_j exp(i k . phi_j)`` for each exponent ``k``."""
    exps = np.array(exponents, dtype=np.int64).reshape(-1, X.n)
    if not len(exps):
        return np.zeros(0, dtype=complex)
    vals = _phase_values(X, exps) * X.weight_array()
    return np.array([_csum(row) for row in vals])


def verify_design(X: WeightedPhaseSet, t: int, tolerance: float = DEFAULT_TOLERANCE) -> VerificationReport:
    """Largest ``|sum_j w_j exp(i k . phi_j)|`` over nonzero ``k`` in ``P_t^(n)``.

    The weight normalisation ``|sum w - 1|`` is folded into the deviation.
    """
    if t < 1:
        raise UsageError(f"need t >= 1, got {t}")
    exps = enumerate_St(X.n, t)
    worst_dev = abs(math.fsum(float(w) for w in X.weights) - 1.0)
    worst = (0,) * X.n
    if exps:
        devs = np.abs(monomial_sums(X, exps))
        i = int(np.argmax(devs))
        if devs[i] >= worst_dev:
            worst_dev, worst = float(devs[i]), exps[i]
    return VerificationReport(t, worst_dev, worst, worst_dev <= tolerance, tolerance)


def gram_matrix(X: WeightedPhaseSet, s: int) -> np.ndarray:
    """Gram matrix of the vectors ``(sqrt(w_j) exp(i k . phi_j))_j``, ``k in P_s^(n)``."""
    ks = np.array(enumerate_Pst(X.n, s), dtype=np.int64)
    vecs = _phase_values(X, ks) * np.sqrt(X.weight_array())
    return vecs @ vecs.conj().T


def gram_check(X: WeightedPhaseSet, t: int, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Even-``t`` design test: the Gram matrix over ``P_{t/2}^(n)`` is the identity."""
    if t < 2 or t % 2:
        raise UsageError(f"gram_check needs an even t >= 2, got {t}")
    G = gram_matrix(X, t // 2)
    return float(np.max(np.abs(G - np.eye(len(G))))) <= tolerance


def is_minimal(X: WeightedPhaseSet, t: int, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """True iff ``X`` is a t-design of the smallest possible size ``G_{n-1}(t // 2)``."""
    if not verify_design(X, t, tolerance).passed:
        raise UsageError("is_minimal needs a verified t-design")
    return len(X) == min_design_size(X.n, t)
