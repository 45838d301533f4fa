"""Complex-projective designs from simplex x projective-torus products.

A pair ``(p, phi)`` with ``p`` on the simplex and ``phi`` on P(T^d) gives the
state ``sum_k sqrt(p_k) exp(i phi_k) |k>``.  Pairing a simplex t-design with
a P(T^d) t-design under the product measure gives a CP^{d-1} t-design.

Two verifiers are provided.  :func:`frame_potential` is cheap and only
compares one number with the Welch bound.  :func:`moment_tensor_check`
compares every entry of the t-th moment operator with the normalised
symmetric-subspace projector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import NamedTuple, Sequence

import numpy as np

from ._json import SCHEMA_VERSION, frac_from_json, frac_to_json, number_from_json, number_to_json
from .difference_sets import singer_bt_set
from .errors import ResourceError, UsageError
from .finite_field import prime_power
from .toric_designs import DEFAULT_TOLERANCE, VerificationReport, WeightedPhaseSet, group_design_from_bt, verify_design

__all__ = [
    "MAX_MOMENT_ENTRIES",
    "ExactAmplitude",
    "SimplexDesign",
    "StateDesign",
    "simplex_two_design",
    "simplex_moment_deviation",
    "concatenate",
    "frame_potential",
    "welch_bound",
    "frame_potential_check",
    "symmetric_projector",
    "moment_tensor_check",
    "almost_minimal_2design",
]

MAX_MOMENT_ENTRIES = 10**7


class ExactAmplitude(NamedTuple):
    """``sqrt(mag2) * exp(2*pi*i*phase)`` with both parts rational."""

    mag2: Fraction
    phase: Fraction

    def to_complex(self) -> complex:
        r = math.sqrt(self.mag2)
        return complex(r * math.cos(2 * math.pi * self.phase), r * math.sin(2 * math.pi * self.phase))


@dataclass(frozen=True)
class SimplexDesign:
    d: int
    points: tuple[tuple[Fraction, ...], ...]
    weights: tuple[Fraction, ...]
    degree: int

    def __post_init__(self):
        if len(self.points) != len(self.weights):
            raise UsageError("need one weight per point")
        for p in self.points:
            if len(p) != self.d or any(c < 0 for c in p) or sum(p) != 1:
                raise UsageError(f"{p} is not a point of the {self.d - 1}-simplex")
        if any(w <= 0 for w in self.weights) or sum(self.weights) != 1:
            raise UsageError("simplex weights must be positive and sum to 1")


@dataclass(frozen=True)
class StateDesign:
    """Weighted unit vectors in C^d.

    ``states`` holds either tuples of :class:`ExactAmplitude` or tuples of
    complex numbers; :meth:`vectors` gives the numeric view either way.
    """

    d: int
    states: tuple[tuple, ...]
    weights: tuple
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if len(self.states) != len(self.weights) or not self.states:
            raise UsageError("need one weight per state and at least one state")
        if any(len(s) != self.d for s in self.states):
            raise UsageError(f"every state needs {self.d} amplitudes")
        if any(w <= 0 for w in self.weights):
            raise UsageError("weights must be positive")
        if all(isinstance(w, Fraction) for w in self.weights):
            if sum(self.weights) != 1:
                raise UsageError("rational weights must sum to exactly 1")
        elif abs(math.fsum(float(w) for w in self.weights) - 1) > 1e-12:
            raise UsageError("weights must sum to 1")
        norms = np.linalg.norm(self.vectors(), axis=1)
        if np.max(np.abs(norms - 1)) > 1e-12:
            raise UsageError("states must be unit vectors")

    def __len__(self) -> int:
        return len(self.states)

    @property
    def exact(self) -> bool:
        return isinstance(self.states[0][0], ExactAmplitude)

    def vectors(self) -> np.ndarray:
        if isinstance(self.states[0][0], ExactAmplitude):
            return np.array([[a.to_complex() for a in s] for s in self.states], dtype=complex)
        return np.array(self.states, dtype=complex)

    def weight_array(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights])

    def to_json(self) -> dict:
        if self.exact:
            states = [[{"mag2": frac_to_json(a.mag2), "phase": frac_to_json(a.phase)} for a in s] for s in self.states]
        else:
            states = [[[c.real, c.imag] for c in s] for s in self.states]
        return {
            "schema_version": SCHEMA_VERSION,
            "d": self.d,
            "encoding": "exact" if self.exact else "complex",
            "states": states,
            "weights": [number_to_json(w) for w in self.weights],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, obj: dict) -> StateDesign:
        unknown = set(obj) - {"schema_version", "d", "encoding", "states", "weights", "provenance"}
        if unknown:
            raise UsageError(f"unknown state-design keys: {sorted(unknown)}")
        if obj.get("encoding", "exact") == "exact":
            states = tuple(
                tuple(ExactAmplitude(frac_from_json(a["mag2"]), frac_from_json(a["phase"])) for a in s)
                for s in obj["states"]
            )
        else:
            states = tuple(tuple(complex(re, im) for re, im in s) for s in obj["states"])
        ws = tuple(number_from_json(w) for w in obj["weights"])
        return cls(int(obj["d"]), states, ws, obj.get("provenance", {}))


# ---------------------------------------------------------------------------
# simplex


def simplex_two_design(d: int) -> SimplexDesign:
    """Vertices of the simplex weighted ``1/(d(d+1))`` plus the centroid weighted ``d/(d+1)``.

    These are the only weights matching the flat measure's first and second
    moments, ``E[p_a] = 1/d`` and ``E[p_a p_b] = (1 + [a == b]) / (d(d+1))``.
    """
    if d < 2:
        raise UsageError(f"need d >= 2, got {d}")
    vertices = [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
    centroid = (Fraction(1, d),) * d
    wv = Fraction(1, d * (d + 1))
    return SimplexDesign(d, tuple(vertices) + (centroid,), (wv,) * d + (Fraction(d, d + 1),), 2)


def _dirichlet_moment(alpha: Sequence[int]) -> Fraction:
    # E[prod p_i^alpha_i] under the flat (Dirichlet(1,...,1)) measure
    d, k = len(alpha), sum(alpha)
    num = math.factorial(d - 1) * math.prod(math.factorial(a) for a in alpha)
    return Fraction(num, math.factorial(d - 1 + k))


def simplex_moment_deviation(S: SimplexDesign, t: int) -> Fraction:
    """Largest exact error over monomials of total degree <= ``t``."""
    worst = Fraction(0)
    for alpha in product(range(t + 1), repeat=S.d):
        if sum(alpha) > t:
            continue
        avg = sum(w * math.prod(p[i] ** alpha[i] for i in range(S.d)) for p, w in zip(S.points, S.weights))
        worst = max(worst, abs(avg - _dirichlet_moment(alpha)))
    return worst


# ---------------------------------------------------------------------------
# concatenation


def concatenate(
    S: SimplexDesign,
    X: WeightedPhaseSet,
    t: int,
    tolerance: float = DEFAULT_TOLERANCE,
) -> StateDesign:
    """Product of a simplex design and a P(T^d) design as a CP^{d-1} design.

    Phases on zero-weight coordinates are irrelevant, and states are taken up
    to global phase, so coincident projective points are merged.  In
    particular every vertex of the simplex contributes one basis state.
    """
    if S.d != X.n:
        raise UsageError(f"simplex dimension {S.d} != torus dimension {X.n}")
    if S.degree < t:
        raise UsageError(f"simplex design certifies degree {S.degree} < {t}")
    if not verify_design(X, t, tolerance).passed:
        raise UsageError(f"phase set is not a P(T^{X.n}) {t}-design")
    exact = X.encoding == "rational"
    merged: dict[tuple, object] = {}
    for p, wp in zip(S.points, S.weights):
        for phi, wx in zip(X.points, X.weights):
            key = _state_key(p, phi, exact)
            w = wp * wx
            merged[key] = merged[key] + w if key in merged else w
    if exact:
        states = tuple(tuple(ExactAmplitude(m2, ph) for m2, ph in key) for key in merged)
    else:
        states = tuple(tuple(math.sqrt(m2) * complex(math.cos(ph), math.sin(ph)) for m2, ph in key) for key in merged)
    prov = {"construction": "concatenation", "t": t, "phases": X.provenance}
    return StateDesign(S.d, states, tuple(merged.values()), prov)


def _state_key(p, phi, exact: bool) -> tuple:
    # global phase fixed by the first coordinate with nonzero magnitude
    ref = next(ph for m2, ph in zip(p, phi) if m2)
    if exact:
        return tuple((m2, (ph - ref) % 1 if m2 else Fraction(0)) for m2, ph in zip(p, phi))
    return tuple((float(m2), float((ph - ref) % (2 * math.pi)) if m2 else 0.0) for m2, ph in zip(p, phi))


def almost_minimal_2design(d: int) -> StateDesign:
    """CP^{d-1} 2-design of size ``d^2 + 1`` from a Singer Sidon set.

    Requires ``d - 1`` to be a prime power.
    """
    try:
        prime_power(d - 1)
    except UsageError:
        raise UsageError(f"d - 1 = {d - 1} is not a prime power") from None
    z = singer_bt_set(d - 1, 2)
    return concatenate(simplex_two_design(d), group_design_from_bt(z), 2)


# ---------------------------------------------------------------------------
# verification


def welch_bound(d: int, t: int) -> float:
    return 1.0 / math.comb(d + t - 1, t)


def frame_potential(D: StateDesign, t: int) -> float:
    """``sum_ij w_i w_j |<psi_i|psi_j>|^(2t)``."""
    if t < 1:
        raise UsageError(f"need t >= 1, got {t}")
    V = D.vectors()
    w = D.weight_array()
    overlaps = np.abs(V.conj() @ V.T) ** (2 * t)
    return math.fsum((np.outer(w, w) * overlaps).ravel())


def frame_potential_check(D: StateDesign, t: int, tolerance: float = 1e-12) -> bool:
    """True iff the frame potential meets the Welch bound within ``tolerance``."""
    return frame_potential(D, t) - welch_bound(D.d, t) <= tolerance


def symmetric_projector(d: int, t: int) -> np.ndarray:
    """``Pi_t`` on ``(C^d)^{(x)t}`` as a ``d^t x d^t`` matrix.

    Entry ``(a, b)`` is ``(1/t!) * #{sigma : a_k == b_sigma(k) for all k}``.
    """
    tuples = list(product(range(d), repeat=t))
    index = {a: i for i, a in enumerate(tuples)}
    P = np.zeros((len(tuples), len(tuples)))
    perms = list(permutations(range(t)))
    for a in tuples:
        for sigma in perms:
            b = [0] * t
            for k in range(t):
                b[sigma[k]] = a[k]
            P[index[a], index[tuple(b)]] += 1
    return P / len(perms)


def _moment_operator(D: StateDesign, t: int) -> np.ndarray:
    V = D.vectors()
    w = D.weight_array()
    T = V
    for _ in range(t - 1):
        T = np.einsum("ni,nj->nij", T, V).reshape(len(V), -1)
    return np.einsum("n,na,nb->ab", w, T, T.conj())


def moment_tensor_check(D: StateDesign, t: int, tolerance: float = 1e-10) -> VerificationReport:
    """Compare ``sum_i w_i prod_k <a_k|psi_i><psi_i|b_k>`` with ``Pi_t(a;b)/Tr Pi_t``.

    ``worst`` is the index pair ``(a, b)`` of the largest deviation.
    """
    if t < 1:
        raise UsageError(f"need t >= 1, got {t}")
    if D.d ** (2 * t) > MAX_MOMENT_ENTRIES:
        raise ResourceError(f"d^(2t) = {D.d ** (2 * t)} moment entries exceeds {MAX_MOMENT_ENTRIES}")
    target = symmetric_projector(D.d, t) / math.comb(D.d + t - 1, t)
    dev = np.abs(_moment_operator(D, t) - target)
    i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
    tuples = list(product(range(D.d), repeat=t))
    worst = float(dev[i, j])
    return VerificationReport(t, worst, (tuples[i], tuples[j]), worst <= tolerance, tolerance)
