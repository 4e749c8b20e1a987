import pytest
from hypothesis import given, strategies as st

from fuzzyproc.errors import ConfigurationError
from fuzzyproc.setpoint import (
    RuleGrades,
    SetpointCandidate,
    ThrottleSubset,
    candidate_throttle,
    centroid_combine,
    rule_throttle,
    select_setpoint,
)


@pytest.mark.parametrize(
    "a,b,mean",
    [
        (0.35, 0.44, 0.395),
        (0.42, 0.5, 0.46),
        (0.3, 0.4, 0.35),
        (0.6, 0.5, 0.55),
        (0.35, 0.4, 0.375),
        (0.3, 0.25, 0.275),
    ],
)
def test_rule_throttle_means(a, b, mean):
    assert rule_throttle(a, b) == pytest.approx(mean, abs=1e-12)


def test_centroid_normalized_and_raw():
    pairs = [(0.55, 1.0), (0.375, 0.5)]
    assert centroid_combine(pairs, normalize=False) == pytest.approx(0.7375)
    assert centroid_combine(pairs) == pytest.approx(0.7375 / 0.925)
    with pytest.raises(ZeroDivisionError):
        centroid_combine([(0.0, 0.5)])
    with pytest.raises(ValueError):
        centroid_combine([])


def test_equal_locations_give_the_location():
    assert centroid_combine([(0.2, 0.5), (0.9, 0.5)]) == pytest.approx(0.5)


def test_gasoil_selection():
    q = {"P2": 0.5, "Z": 0.5}
    cands = [
        SetpointCandidate(-5.5, (RuleGrades(93, 0.3, 0.4, "P2"), RuleGrades(94, 0.2, 0.6, "Z")), normalize=False),
        SetpointCandidate(-5.0, (RuleGrades(94, 0.6, 0.5, "P2"), RuleGrades(95, 0.35, 0.4, "Z")), {"P2": 1.0}),
        SetpointCandidate(-4.5, (RuleGrades(95, 0.35, 0.4, "P2"), RuleGrades(96, 0.3, 0.25, "Z"))),
        SetpointCandidate(-4.0, (RuleGrades(96, 0.25, 0.3, "P2"), RuleGrades(97, 0.4, 0.4, "Z"))),
    ]
    res = select_setpoint(cands, q)
    t = dict(res.throttles)
    assert t[-5.5] == pytest.approx(0.375)
    assert t[-5.0] == pytest.approx(0.789, abs=0.01)
    assert t[-4.5] == pytest.approx(0.5, abs=0.005)
    assert t[-4.0] == pytest.approx(0.501, abs=0.005)
    assert res.chosen == -5.0


def test_pinned_throttles():
    cands = [SetpointCandidate(sp, throttle=t) for sp, t in [(223, 0.427), (225, 0.415), (227, 0.375), (229, 0.42)]]
    assert select_setpoint(cands, {}).chosen == 223


def test_tie_goes_to_lower_setpoint():
    cands = [SetpointCandidate(5, throttle=0.5), SetpointCandidate(3, throttle=0.5)]
    assert select_setpoint(cands, {}).chosen == 3


def test_configuration_errors():
    with pytest.raises(ConfigurationError):
        SetpointCandidate(1.0)
    with pytest.raises(ConfigurationError):
        ThrottleSubset("P9", 0.5)
    with pytest.raises(ConfigurationError):
        candidate_throttle(SetpointCandidate(1.0, (RuleGrades(1, 0.1, 0.2, "N3"),)), {"Z": 0.5})
    with pytest.raises(ValueError):
        RuleGrades(1, 1.5, 0.2, "Z")
    with pytest.raises(ConfigurationError):
        candidate_throttle(
            SetpointCandidate(1, (RuleGrades(1, 0.1, 0.2, "Z"),)), [ThrottleSubset("Z", 0.5), ThrottleSubset("Z", 0.4)]
        )


grades = st.floats(0, 1)


@given(grades, grades)
def test_rule_throttle_between_grades(a, b):
    m = rule_throttle(a, b)
    assert min(a, b) - 1e-15 <= m <= max(a, b) + 1e-15


@given(st.lists(st.tuples(st.floats(0.01, 1), grades), min_size=1, max_size=6))
def test_normalized_centroid_within_location_range(pairs):
    c = centroid_combine(pairs)
    locs = [loc for _, loc in pairs]
    assert min(locs) - 1e-12 <= c <= max(locs) + 1e-12
