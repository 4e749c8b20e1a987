import pytest

from fuzzyproc.ckd import (
    CKD_RULES,
    CKD_RULES_LISTING,
    MamdaniController,
    RuleTable,
    VolatileTable,
    alkali_ratio,
    ckd_controller,
    evaluate,
    fire_rules,
    infer,
    reprocessing_controller,
)
from fuzzyproc.errors import ConfigurationError, DomainError


@pytest.mark.parametrize("x,y,mid", [(0.5, 5, 0), (1.0, 15, 20), (1.2, 17, 20), (1.5, 25, 40)])
def test_ckd_midpoints(x, y, mid):
    assert evaluate(ckd_controller(), x, y).midpoint == pytest.approx(mid, abs=1e-9)


def test_fired_strengths_at_12_17():
    fired = {(r.x_label, r.y_label): r.strength for r in fire_rules(ckd_controller(), 1.2, 17)}
    assert fired == pytest.approx({("M", "SS"): 0.6, ("M", "TS"): 0.2, ("H", "SS"): 0.4, ("H", "TS"): 0.2}, abs=1e-12)


def test_clipped_interval_at_12_17():
    ev = infer(ckd_controller(), 1.2, 17)
    assert ev.result.height == pytest.approx(0.6)
    assert ev.result.interval == pytest.approx((16, 24))


def test_listing_table_changes_only_the_high_row():
    a, b = ckd_controller(CKD_RULES), ckd_controller(CKD_RULES_LISTING)
    for x, y in [(0.5, 5), (1.0, 15), (0.8, 20)]:
        assert evaluate(a, x, y).midpoint == evaluate(b, x, y).midpoint
    assert evaluate(b, 1.5, 25).midpoint == pytest.approx(30)


@pytest.mark.parametrize("x,y,mid", [(350, 11865, 0), (400, 13020, 10), (450, 15174, 20)])
def test_reprocessing_midpoints(x, y, mid):
    assert evaluate(reprocessing_controller(), x, y).midpoint == pytest.approx(mid, abs=1e-9)


def test_reprocessing_430_case():
    ev = infer(reprocessing_controller(), 430, 13080)
    assert ev.grades_x["M"] == pytest.approx(0.4)
    assert ev.grades_x["H"] == pytest.approx(0.6)
    assert 0.97 <= ev.grades_y["SS"] <= 0.98
    assert 0.02 <= ev.grades_y["TS"] <= 0.03
    assert ev.result.interval == pytest.approx((13, 17))
    assert ev.result.midpoint == pytest.approx(15)


def test_alkali_ratio():
    t = VolatileTable({"SO3": 80, "K2O": 94.2, "Na2O": 62}, "SO3", ("K2O", "Na2O"))
    assert alkali_ratio(t) == pytest.approx(80 / 156.2)
    with pytest.raises(ValueError):
        VolatileTable({"SO3": 80}, "SO3", ("K2O",))


def test_out_of_range_input():
    with pytest.raises(DomainError):
        evaluate(ckd_controller(), 1.6, 10)


def test_rule_table_must_match_terms():
    bad = RuleTable(("L", "M"), ("FS", "SS", "TS"), (("VL", "M", "H"), ("L", "M", "H")))
    base = ckd_controller()
    with pytest.raises(ConfigurationError):
        MamdaniController(base.input_x, base.input_y, base.output, bad)
    with pytest.raises(ConfigurationError):
        MamdaniController(
            base.input_x, base.input_y, base.output,
            RuleTable(("L", "M", "H"), ("FS", "SS", "TS"), (("XX", "M", "H"),) * 3),
        )
