import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from fuzzyproc.fre import (
    FnnConfig,
    FreSystem,
    clamp_activation,
    compose,
    fnn_solve,
    forward,
    greatest_solution,
    partition_diagnose,
    two_stage_solve,
)

fuzzy = st.floats(0, 1, allow_nan=False)


def mats(n, m):
    return arrays(np.float64, (n, m), elements=fuzzy)


def brute_compose(P, Q):
    n, k = P.shape
    m = Q.shape[1]
    out = np.zeros((n, m))
    for i in range(n):
        for j in range(m):
            out[i, j] = max(min(P[i, t], Q[t, j]) for t in range(k))
    return out


def test_compose_small_example():
    P = np.array([[0.3, 0.8], [1.0, 0.1]])
    Q = np.array([[0.5], [0.6]])
    assert compose(P, Q).ravel().tolist() == [0.6, 0.5]
    assert compose(P, Q, "max-product").ravel() == pytest.approx([0.48, 0.5])
    with pytest.raises(ValueError):
        compose(P, np.ones((3, 1)))
    with pytest.raises(ValueError):
        compose(np.array([[1.2]]), np.array([[0.1]]))


@given(mats(3, 4), mats(4, 2))
def test_compose_matches_brute_force(P, Q):
    assert np.array_equal(compose(P, Q), brute_compose(P, Q))


@given(mats(3, 3), mats(3, 3), mats(3, 3))
def test_compose_associative(A, B, C):
    assert np.array_equal(compose(compose(A, B), C), compose(A, compose(B, C)))


@given(mats(3, 4), mats(4, 2))
def test_inverse_is_reverse_composition(P, Q):
    assert np.array_equal(compose(P, Q).T, compose(Q.T, P.T))


@given(mats(4, 4), mats(4, 1))
def test_greatest_solution_dominates(P, Q):
    R = compose(P, Q)
    Qhat, ok = greatest_solution(FreSystem(P, R))
    assert ok
    assert np.array_equal(compose(P, Qhat), R)
    assert (Qhat >= Q).all()


def test_unsolvable_row_detected():
    P = np.array([[0.2, 0.3], [0.9, 0.4]])
    R = np.array([0.5, 0.4])
    _, ok = greatest_solution(FreSystem(P, R))
    assert not ok
    diag = partition_diagnose(FreSystem(P, R))
    assert [d.satisfiable for d in diag] == [False, True]


def test_greatest_solution_by_hand():
    P = np.array([[0.8, 0.3], [0.2, 0.9]])
    R = np.array([0.5, 0.6])
    Q, ok = greatest_solution(FreSystem(P, R))
    assert ok
    assert Q.ravel().tolist() == [0.5, 0.6]


def test_activation_and_forward():
    assert clamp_activation(1.4) == 1.0
    assert clamp_activation(-0.2) == 0.0
    W = np.array([[0.5, 2.0], [0.1, 0.1]])
    assert forward(W, [0.4, 0.3]).tolist() == pytest.approx([0.6, 0.04])


def test_fnn_recovers_constructed_targets():
    rng = np.random.default_rng(3)
    W_true = rng.uniform(0, 1, (4, 4))
    x = rng.uniform(0.2, 1, 4)
    t = forward(W_true, x)
    res = fnn_solve(FreSystem(rng.uniform(0, 1, (4, 4)), t), x, t, FnnConfig(seed=1))
    assert res.converged
    assert res.residual <= 1e-6
    assert all(a >= b for a, b in zip(res.trace, res.trace[1:]))


def test_fnn_respects_zero_mask_and_is_deterministic():
    P = np.array([[0.5, 0.0], [0.3, 0.4]])
    x = np.array([1.0, 1.0])
    t = np.array([0.9, 0.2])
    a = fnn_solve(FreSystem(P, t), x, t, FnnConfig(seed=5))
    b = fnn_solve(FreSystem(P, t), x, t, FnnConfig(seed=5))
    assert a.weights[0, 1] == 0.0
    assert np.array_equal(a.weights, b.weights)
    assert a.trace == b.trace


def test_fnn_config_validation():
    with pytest.raises(ValueError):
        FnnConfig(tolerance=0)
    with pytest.raises(ValueError):
        FnnConfig(max_iters=0)


def test_two_stage_uses_network_only_when_needed():
    P = np.array([[0.8, 0.3], [0.2, 0.9]])
    ok = two_stage_solve(FreSystem(P, [0.5, 0.6]), [1, 1])
    assert ok.solvable and ok.network is None
    bad = two_stage_solve(FreSystem(np.array([[0.2, 0.3], [0.9, 0.4]]), [0.5, 0.4]), [1, 1])
    assert not bad.solvable and bad.network is not None
