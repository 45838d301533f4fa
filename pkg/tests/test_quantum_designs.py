import math
from fractions import Fraction
from itertools import permutations, product

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from toricdesigns.difference_sets import BtSet
from toricdesigns.errors import UsageError
from toricdesigns.quantum_designs import (
    StateDesign,
    _dirichlet_moment,
    almost_minimal_2design,
    concatenate,
    frame_potential,
    frame_potential_check,
    moment_tensor_check,
    simplex_moment_deviation,
    simplex_two_design,
    symmetric_projector,
    welch_bound,
)
from toricdesigns.toric_designs import WeightedPhaseSet, grid_design, group_design_from_bt, quadratic_prime_design


def haar_states(d, N, seed):
    rng = np.random.default_rng(seed)
    V = rng.normal(size=(N, d)) + 1j * rng.normal(size=(N, d))
    return V / np.linalg.norm(V, axis=1, keepdims=True)


def uniform_design(V):
    N = len(V)
    return StateDesign(V.shape[1], tuple(map(tuple, V.tolist())), (1.0 / N,) * N)


# --- simplex -------------------------------------------------------------


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_simplex_weights(d):
    S = simplex_two_design(d)
    assert S.weights[:d] == (Fraction(1, d * (d + 1)),) * d
    assert S.weights[d] == Fraction(d, d + 1)
    assert simplex_moment_deviation(S, 2) == 0
    # for d=2 the rule is Simpson's rule, which is also exact at degree 3
    assert (simplex_moment_deviation(S, 3) > 0) == (d > 2)
    assert simplex_moment_deviation(S, 4) > 0


def test_simplex_d3_not_a_3_design():
    assert simplex_moment_deviation(simplex_two_design(3), 3) == Fraction(1, 90)


def test_dirichlet_moments_against_symbolic_integral():
    # flat probability measure on {p0 + p1 + p2 = 1}: density 2 on the triangle
    a, b = sp.symbols("a b", nonnegative=True)
    for alpha in [(0, 0, 0), (1, 0, 0), (2, 0, 0), (1, 1, 0), (1, 1, 1), (2, 1, 0), (3, 0, 0)]:
        f = 2 * a ** alpha[0] * b ** alpha[1] * (1 - a - b) ** alpha[2]
        exact = sp.integrate(sp.integrate(f, (b, 0, 1 - a)), (a, 0, 1))
        assert _dirichlet_moment(alpha) == Fraction(int(exact.p), int(exact.q))
    x = sp.symbols("x")
    for k in range(5):
        exact = sp.integrate(x**k, (x, 0, 1))
        assert _dirichlet_moment((k, 0)) == Fraction(int(exact.p), int(exact.q))


def test_simplex_d1_rejected():
    with pytest.raises(UsageError):
        simplex_two_design(1)


# --- symmetric projector -------------------------------------------------


def _swap_operator_projector(d, t):
    """Average of the tensor-factor permutation operators, built index by index."""
    dim = d**t
    P = np.zeros((dim, dim))
    perms = list(permutations(range(t)))
    for sigma in perms:
        for a in product(range(d), repeat=t):
            src = np.ravel_multi_index(a, (d,) * t)
            dst = np.ravel_multi_index(tuple(a[sigma[k]] for k in range(t)), (d,) * t)
            P[dst, src] += 1
    return P / len(perms)


@pytest.mark.parametrize("d,t", [(2, 1), (2, 2), (3, 2), (2, 3), (3, 3), (4, 2)])
def test_symmetric_projector(d, t):
    P = symmetric_projector(d, t)
    assert np.allclose(P, _swap_operator_projector(d, t))
    assert np.allclose(P @ P, P)
    assert np.allclose(P, P.T)
    assert math.isclose(np.trace(P), math.comb(d + t - 1, t))


def test_projector_entries_for_t2():
    d = 3
    target = symmetric_projector(d, 2) / math.comb(d + 1, 2)
    # <aa|P|aa> = 2/(d(d+1)),  <ab|P|ab> = <ab|P|ba> = 1/(d(d+1)) for a != b
    assert target[0, 0] == pytest.approx(2 / (d * (d + 1)))
    assert target[1, 1] == pytest.approx(1 / (d * (d + 1)))
    assert target[1, 3] == pytest.approx(1 / (d * (d + 1)))


# --- the d=3 worked example ---------------------------------------------


def test_d3_example_states_and_weights():
    D = almost_minimal_2design(3)
    assert len(D) == 10
    V = D.vectors()
    w = D.weight_array()
    basis = np.eye(3)
    w7 = np.exp(2j * np.pi / 7)
    psi = [np.array([1, w7**k, w7 ** (3 * k)]) / np.sqrt(3) for k in range(7)]
    expected = [(b, 1 / 12) for b in basis] + [(v, 3 / 28) for v in psi]
    # match up to global phase
    used = set()
    for v, wv in expected:
        hits = [i for i in range(10) if abs(abs(np.vdot(V[i], v)) - 1) < 1e-12]
        assert len(hits) == 1
        assert w[hits[0]] == pytest.approx(wv)
        used.add(hits[0])
    assert len(used) == 10
    assert sorted(set(D.weights)) == [Fraction(1, 12), Fraction(3, 28)]


@pytest.mark.parametrize("d", [3, 4, 5, 6, 8])
def test_almost_minimal_family(d):
    D = almost_minimal_2design(d)
    assert len(D) == d * d + 1
    assert frame_potential(D, 2) == pytest.approx(2 / (d * (d + 1)), abs=1e-12)
    assert frame_potential_check(D, 2)
    assert moment_tensor_check(D, 2).passed
    assert not frame_potential_check(D, 3)
    assert not moment_tensor_check(D, 3).passed


@pytest.mark.parametrize("d", [2, 7, 11])
def test_almost_minimal_rejects(d):
    with pytest.raises(UsageError):
        almost_minimal_2design(d)


def test_size_accounting():
    # basis states collapse to d points; the centroid keeps all |X| phases
    for X in (grid_design(3, 2), quadratic_prime_design(3), group_design_from_bt(BtSet(2, 13, (0, 1, 3, 9)))):
        D = concatenate(simplex_two_design(X.n), X, 2)
        assert len(D) == X.n + len(X)
        assert frame_potential_check(D, 2)


def test_concatenate_checks_inputs():
    with pytest.raises(UsageError):
        concatenate(simplex_two_design(3), grid_design(4, 2), 2)
    with pytest.raises(UsageError):
        concatenate(simplex_two_design(3), grid_design(3, 2), 3)
    with pytest.raises(UsageError):
        concatenate(simplex_two_design(3), grid_design(3, 1), 2)


def test_real_phases_give_complex_states():
    X = grid_design(3, 2)
    R = WeightedPhaseSet(3, tuple(map(tuple, X.angles().tolist())), tuple(float(w) for w in X.weights))
    D = concatenate(simplex_two_design(3), R, 2)
    assert not D.exact and len(D) == 12
    assert moment_tensor_check(D, 2).passed


# --- generic verifier properties -----------------------------------------


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(1, 3), st.integers(2, 30), st.integers(0, 2**32 - 1))
def test_welch_bound_holds_for_random_states(d, t, N, seed):
    D = uniform_design(haar_states(d, N, seed))
    assert frame_potential(D, t) >= welch_bound(d, t) - 1e-12


def test_t1_design_is_orthonormal_basis():
    D = StateDesign(3, tuple(map(tuple, np.eye(3, dtype=complex).tolist())), (Fraction(1, 3),) * 3)
    assert frame_potential_check(D, 1)
    assert moment_tensor_check(D, 1).passed
    assert not moment_tensor_check(D, 2).passed


def test_moment_check_approaches_haar():
    D = uniform_design(haar_states(2, 20000, 1))
    rep = moment_tensor_check(D, 2, tolerance=0.02)
    assert rep.passed and rep.max_deviation > 1e-6


def test_state_validation():
    with pytest.raises(UsageError):
        StateDesign(2, ((1, 1),), (1.0,))
    with pytest.raises(UsageError):
        StateDesign(2, ((1, 0),), (0.5,))


def test_json_roundtrip():
    D = almost_minimal_2design(3)
    E = StateDesign.from_json(D.to_json())
    assert E.states == D.states and E.weights == D.weights
    C = uniform_design(haar_states(3, 4, 0))
    C2 = StateDesign.from_json(C.to_json())
    assert np.allclose(C2.vectors(), C.vectors())
    with pytest.raises(UsageError):
        StateDesign.from_json({**D.to_json(), "x": 0})
