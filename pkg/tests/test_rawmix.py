import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzzyproc.errors import InfeasibleError
from fuzzyproc.rawmix import (
    MixState,
    OxideComposition,
    RefineConfig,
    build_mix_system,
    fnn_refine,
    mix_error,
    moduli,
    moduli_jacobian,
    norm_band_flags,
    project_sum_zero_box,
    solve_dw,
)

FEEDERS = [
    {"CaO": 52, "SiO2": 4, "Al2O3": 1, "Fe2O3": 0.5},
    {"CaO": 2, "SiO2": 58, "Al2O3": 16, "Fe2O3": 7},
    {"CaO": 1, "SiO2": 90, "Al2O3": 3, "Fe2O3": 1},
    {"CaO": 2, "SiO2": 10, "Al2O3": 4, "Fe2O3": 75},
]
COMP = OxideComposition.from_table(FEEDERS, "percent")
W0 = np.array([0.846, 0.106, 0.036, 0.012])


def random_comp(rng, n=4):
    ox = rng.uniform(0.01, 0.2, size=(n, 4))
    ox[:, 0] = rng.uniform(0.05, 0.35, n)
    return OxideComposition(ox[:, 0], ox[:, 1], ox[:, 2], ox[:, 3])


def test_moduli_by_hand():
    comp = OxideComposition([0.5], [0.1], [0.04], [0.02])
    m = moduli(comp, [1.0])
    assert m.lsf == pytest.approx(0.5 / (0.28 + 0.048 + 0.013))
    assert m.sm == pytest.approx(0.1 / 0.06)
    assert m.am == pytest.approx(2.0)


def test_percent_and_fraction_agree():
    frac = OxideComposition.from_table([{k: v / 100 for k, v in r.items()} for r in FEEDERS], "fraction")
    assert moduli(frac, W0) == moduli(COMP, W0)
    with pytest.raises(ValueError):
        OxideComposition.from_table(FEEDERS, "ppm")
    with pytest.raises(ValueError):
        OxideComposition.from_table(FEEDERS, "fraction")


@pytest.mark.parametrize("seed", range(50))
def test_jacobian_matches_central_differences(seed):
    rng = np.random.default_rng(seed)
    comp = random_comp(rng)
    w = rng.uniform(0.1, 1.0, 4)
    J = moduli_jacobian(comp, w)
    h = 1e-6
    for i in range(4):
        e = np.zeros(4)
        e[i] = h
        fd = (moduli(comp, w + e).as_array() - moduli(comp, w - e).as_array()) / (2 * h)
        rel = np.abs(fd - J[:, i]) / np.maximum(np.abs(J[:, i]), 1e-12)
        assert (rel < 1e-6).all() or np.abs(fd - J[:, i]).max() < 1e-9


@given(st.integers(0, 10_000))
def test_euler_orthogonality(seed):
    rng = np.random.default_rng(seed)
    comp = random_comp(rng)
    w = rng.uniform(0.05, 1.0, 4)
    assert np.abs(moduli_jacobian(comp, w) @ w).max() < 1e-9


@given(st.integers(0, 10_000), st.floats(0.01, 100))
def test_moduli_scale_invariant(seed, k):
    rng = np.random.default_rng(seed)
    comp = random_comp(rng)
    w = rng.uniform(0.05, 1.0, 4)
    assert moduli(comp, k * w).as_array() == pytest.approx(moduli(comp, w).as_array(), rel=1e-12)


def test_mix_system_shape():
    J = moduli_jacobian(COMP, W0)
    s = build_mix_system(J, [0, 0, 0])
    assert s.rhs.tolist() == [0, 0, 0, 0]
    assert s.matrix[-1].tolist() == [1, 1, 1, 1]
    s3 = build_mix_system(J, [0.1, 0.2, 0.3], use_lsf=False)
    assert s3.matrix.shape == (3, 4)
    assert s3.rows == ("sm", "am", "sum")
    assert s3.rhs.tolist() == [0.2, 0.3, 0.0]


def test_zero_rhs_gives_zero_dw():
    J = moduli_jacobian(COMP, W0)
    assert np.array_equal(solve_dw(build_mix_system(J, [0, 0, 0]), -0.05, 0.05), np.zeros(4))


def test_interior_square_solve_is_exact():
    J = moduli_jacobian(COMP, W0)
    dw_true = np.array([0.004, -0.003, 0.001, -0.002])
    sys = build_mix_system(J, J @ dw_true)
    dw = solve_dw(sys, -0.05, 0.05)
    assert np.abs(sys.matrix @ dw - sys.rhs).max() < 1e-9
    # same answer as plain elimination
    assert dw == pytest.approx(np.linalg.solve(sys.matrix, sys.rhs), abs=1e-12)


def test_duplicate_feeders_give_minimum_norm():
    rows = FEEDERS[:3] + [FEEDERS[2]]
    comp = OxideComposition.from_table(rows, "percent")
    w = np.array([0.8, 0.12, 0.04, 0.04])
    J = moduli_jacobian(comp, w)
    sys = build_mix_system(J, [0.01, 0.05, 0.02])
    dw = solve_dw(sys, -1, 1)
    assert dw[2] == pytest.approx(dw[3], abs=1e-12)
    # shifting weight between the twin feeders leaves A dw alone but grows the norm
    for t in np.linspace(-0.01, 0.01, 41):
        alt = dw + t * np.array([0, 0, 1, -1])
        assert np.allclose(sys.matrix @ alt, sys.matrix @ dw, atol=1e-12)
        assert np.linalg.norm(dw) <= np.linalg.norm(alt) + 1e-15


@given(st.integers(0, 10_000))
def test_solve_dw_sum_and_bounds(seed):
    rng = np.random.default_rng(seed)
    comp = random_comp(rng)
    w = rng.uniform(0.05, 1, 4)
    lo = -rng.uniform(0.001, 0.05, 4)
    hi = rng.uniform(0.001, 0.05, 4)
    J = moduli_jacobian(comp, w)
    dw = solve_dw(build_mix_system(J, rng.normal(0, 0.5, 3)), lo, hi)
    assert abs(dw.sum()) <= 1e-9
    assert (dw >= lo).all() and (dw <= hi).all()


@given(
    st.lists(st.floats(-1, 1), min_size=2, max_size=6),
    st.floats(0.01, 1),
)
def test_projection_is_nearest_feasible_point(v, width):
    v = np.array(v)
    lo, hi = -width * np.ones(v.size), width * np.ones(v.size)
    p = project_sum_zero_box(v, lo, hi)
    assert abs(p.sum()) <= 1e-12
    assert (p >= lo).all() and (p <= hi).all()
    # optimality: no feasible pairwise transfer brings p closer to v
    for i in range(v.size):
        for j in range(v.size):
            if i == j:
                continue
            step = min(1e-4, hi[i] - p[i], p[j] - lo[j])
            if step <= 0:
                continue
            q = p.copy()
            q[i] += step
            q[j] -= step
            assert np.linalg.norm(q - v) >= np.linalg.norm(p - v) - 1e-12


def test_infeasible_box():
    with pytest.raises(InfeasibleError):
        project_sum_zero_box([0.1, 0.2], [0.01, 0.01], [0.1, 0.1])


def test_mix_error_examples():
    assert mix_error([0.1, 0.2, 0.3], [0.1, 0.2, 0.3]) == 0
    assert mix_error([1, 0, 0], [0, 0, 0]) == 1
    assert mix_error([0.3, 0.1, -0.2], [0, 0, 0]) == pytest.approx(0.14)


def test_norm_band_flags():
    flags = norm_band_flags(moduli(COMP, W0))
    assert set(flags) == {"lsf", "sm", "am"}
    assert not flags["sm"]


def test_refine_zero_targets():
    st_ = MixState(W0, -0.02, 0.02)
    r = fnn_refine(COMP, st_, [0, 0, 0])
    assert r.converged and r.iterations == 0
    assert np.abs(r.dw).max() == pytest.approx(0, abs=1e-15)


@pytest.mark.parametrize("seed", range(5))
def test_refine_meets_constructed_targets(seed):
    rng = np.random.default_rng(seed)
    dw_true = rng.uniform(-0.015, 0.015, 4)
    dw_true -= dw_true.mean()
    J = moduli_jacobian(COMP, W0)
    targets = J @ dw_true
    r = fnn_refine(COMP, MixState(W0, -0.02, 0.02), targets, RefineConfig(seed=seed))
    assert r.error <= 1e-4
    assert all(a >= b for a, b in zip(r.trace, r.trace[1:]))
    assert (r.dw >= -0.02).all() and (r.dw <= 0.02).all()


def test_refine_unreachable_targets_flagged():
    r = fnn_refine(COMP, MixState(W0, -0.001, 0.001), [0.5, 0.5, 0.5], RefineConfig(max_iters=50))
    assert not r.converged
    assert all(a >= b for a, b in zip(r.trace, r.trace[1:]))


def test_refine_is_deterministic():
    st_ = MixState(W0, -0.02, 0.02)
    a = fnn_refine(COMP, st_, [-0.03, -0.2, -0.15], RefineConfig(seed=3))
    b = fnn_refine(COMP, st_, [-0.03, -0.2, -0.15], RefineConfig(seed=3))
    assert np.array_equal(a.dw, b.dw) and a.trace == b.trace


def test_mix_state_validation():
    with pytest.raises(ValueError):
        MixState([0.5, -0.1], -0.1, 0.1)
    with pytest.raises(ValueError):
        MixState([0.5, 0.5], 0.01, 0.1)
    with pytest.raises(ValueError):
        RefineConfig(tolerance=0)
