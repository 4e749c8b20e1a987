import math

import pytest
from hypothesis import given, strategies as st

from fuzzyproc.errors import DomainError, EmptyOutputError
from fuzzyproc.membership import (
    ClippedTerm,
    LinguisticVariable,
    TriangularMF,
    aggregate,
    check_grade,
    defuzz_mom,
    fuzzify,
    mf_grade,
)


def test_grade_at_peak_and_edges():
    mf = TriangularMF(0, 10, 20)
    assert mf_grade(mf, 10) == 1.0
    assert mf_grade(mf, 0) == 0.0
    assert mf_grade(mf, 20) == 0.0
    assert mf_grade(mf, 5) == 0.5
    assert mf_grade(mf, 17) == pytest.approx(0.3)
    assert mf_grade(mf, -1) == 0.0


def test_shoulders():
    left = TriangularMF(0, 0, 10)
    right = TriangularMF(0, 10, 10)
    assert left(0) == 1.0 and left(10) == 0.0 and left(4) == pytest.approx(0.6)
    assert right(10) == 1.0 and right(0) == 0.0


@pytest.mark.parametrize("abc", [(1, 0, 2), (0, 3, 2), (1, 1, 1), (0, math.nan, 1)])
def test_bad_triangles(abc):
    with pytest.raises(ValueError):
        TriangularMF(*abc)


def test_check_grade():
    assert check_grade(0.3) == 0.3
    with pytest.raises(DomainError):
        check_grade(1.2)
    with pytest.raises(DomainError):
        check_grade(-0.1)


def test_fuzzify_outside_universe():
    v = LinguisticVariable.from_mapping("t", (0, 10), {"L": (0, 0, 10), "H": (0, 10, 10)})
    assert fuzzify(v, 2.5) == {"L": 0.75, "H": 0.25}
    with pytest.raises(DomainError):
        fuzzify(v, 10.5)


def test_term_outside_universe_rejected():
    with pytest.raises(ValueError):
        LinguisticVariable.from_mapping("t", (0, 10), {"L": (0, 5, 11)})


def test_mom_of_single_clipped_triangle():
    agg = aggregate([ClippedTerm(0.6, TriangularMF(10, 20, 30))])
    res = defuzz_mom(agg)
    assert res.height == 0.6
    assert res.interval == pytest.approx((16, 24))
    assert res.midpoint == pytest.approx(20)


def test_mom_hull_of_two_plateaus():
    agg = aggregate([ClippedTerm(0.5, TriangularMF(0, 10, 20)), ClippedTerm(0.5, TriangularMF(20, 30, 40))])
    res = defuzz_mom(agg)
    assert len(res.plateaus) == 2
    assert res.interval == pytest.approx((5, 35))
    assert res.midpoint == pytest.approx(20)


def test_mom_lower_term_ignored():
    agg = aggregate([ClippedTerm(0.2, TriangularMF(0, 0, 10)), ClippedTerm(0.7, TriangularMF(10, 20, 30))])
    assert defuzz_mom(agg).midpoint == pytest.approx(20)


def test_empty_and_zero_height():
    with pytest.raises(EmptyOutputError):
        aggregate([])
    with pytest.raises(EmptyOutputError):
        defuzz_mom(aggregate([ClippedTerm(0.0, TriangularMF(0, 1, 2))]))


def test_universe_clips_plateau():
    agg = aggregate([ClippedTerm(1.0, TriangularMF(0, 0, 10))], universe=(0, 10))
    assert defuzz_mom(agg).interval == (0.0, 0.0)


triangles = st.tuples(
    st.floats(-50, 50), st.floats(0.1, 20), st.floats(0.1, 20)
).map(lambda t: TriangularMF(t[0], t[0] + t[1], t[0] + t[1] + t[2]))


@given(triangles, st.floats(-100, 100))
def test_grade_in_unit_interval(mf, x):
    assert 0.0 <= mf(x) <= 1.0


@given(triangles, st.floats(0.01, 1.0))
def test_mom_matches_dense_sampling(mf, h):
    # the analytic plateau is the h-cut of the triangle
    res = defuzz_mom(aggregate([ClippedTerm(h, mf)]))
    lo, hi = res.interval
    assert mf(lo) >= h - 1e-9 and mf(hi) >= h - 1e-9
    assert res.midpoint == pytest.approx((lo + hi) / 2)
    eps = 1e-6 * (mf.right - mf.left)
    if lo - eps > mf.left:
        assert mf(lo - eps) < h
    if hi + eps < mf.right:
        assert mf(hi + eps) < h
