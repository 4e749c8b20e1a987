import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzzyproc import lp
from fuzzyproc.errors import InfeasibleError, UnboundedError
from fuzzyproc.lp import solve_crisp_lp


def grid_oracle(c, A, b, hi, steps=401):
    """Best objective over a grid of [0, hi]^2 (feasible points only)."""
    g = np.linspace(0, hi, steps)
    X = np.array(list(itertools.product(g, g)))
    ok = (X @ A.T <= b + 1e-9).all(axis=1)
    return (X[ok] @ c).max()


def test_textbook_instance():
    x, z = solve_crisp_lp([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert x == pytest.approx([2, 6])
    assert z == pytest.approx(36)


def test_tie_break_is_lexicographic():
    # every point of the edge x1 + x2 = 1 is optimal
    x, z = solve_crisp_lp([1, 1], [[1, 1]], [1])
    assert x.tolist() == [0.0, 1.0]
    assert z == 1.0


def test_infeasible_and_unbounded():
    with pytest.raises(InfeasibleError):
        solve_crisp_lp([1, 1], [[1, 1]], [-1])
    with pytest.raises(UnboundedError):
        solve_crisp_lp([1, 0], [[0, 1]], [1])
    with pytest.raises(InfeasibleError):
        solve_crisp_lp([1, 1, 1, 1], [[1, 1, 1, 1]], [-1])
    with pytest.raises(UnboundedError):
        solve_crisp_lp([1, 0, 0, 0], [[0, 1, 1, 1]], [1])


def test_shape_mismatch():
    with pytest.raises(ValueError):
        solve_crisp_lp([1, 2], [[1, 2, 3]], [1])


def test_equality_pins_variable():
    x, _ = solve_crisp_lp([-0.544, 3], [[1, 0], [0, 1], [0, -1], [-0.544, 1]], [33.652, 23.05, -23.05, 4.843])
    assert x[1] == pytest.approx(23.05)
    assert x[0] == pytest.approx((23.05 - 4.843) / 0.544)


coef = st.floats(-5, 5, allow_nan=False).map(lambda v: round(v, 2))
pos = st.floats(0.1, 5).map(lambda v: round(v, 2))


@settings(max_examples=40)
@given(st.tuples(coef, coef), st.lists(st.tuples(pos, pos, st.floats(1, 10)), min_size=1, max_size=4))
def test_matches_grid_search(c, rows):
    A = np.array([[r[0], r[1]] for r in rows])
    b = np.array([r[2] for r in rows])
    c = np.array(c)
    x, z = solve_crisp_lp(c, A, b)
    assert (A @ x <= b + 1e-9).all() and (x >= 0).all()
    hi = float((b / A.min(axis=1)).max())
    best = grid_oracle(c, A, b, hi)
    assert z >= best - 1e-9
    # grid spacing bounds how far the grid can fall short
    assert z - best <= np.abs(c).sum() * hi / 400 + 1e-9


@settings(max_examples=40)
@given(st.integers(0, 100_000))
def test_simplex_agrees_with_vertex_enumeration(seed):
    rng = np.random.default_rng(seed)
    n, m = 3, int(rng.integers(1, 5))
    A = np.round(rng.uniform(0.1, 3, (m, n)), 2)
    b = np.round(rng.uniform(1, 10, m), 2)
    c = np.round(rng.uniform(-2, 3, n), 2)
    xv = lp._solve_vertices(c, A, b)
    xs = lp._solve_simplex(c, A, b)
    assert c @ xs == pytest.approx(c @ xv, abs=1e-8)
    assert xs == pytest.approx(xv, abs=1e-7)


def test_large_problem_uses_simplex():
    c = np.array([1.0, 1, 1, 1, 1])
    A = np.eye(5)
    b = np.arange(1.0, 6)
    x, z = solve_crisp_lp(c, A, b)
    assert x == pytest.approx(b, abs=1e-12)
    assert z == pytest.approx(15)
