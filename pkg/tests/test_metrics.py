import json

import pytest

from spectra import run
from spectra.mechanisms import Mechanism, MechanismConfig
from spectra.metrics import (
    BREAKS,
    SUSTAINABLE,
    Degenerate,
    Uniform,
    collusion_viability,
    comparison_csv,
    efficiency_ratio,
    monte_carlo_revenue,
    report_json,
    score,
)
from spectra.scenarios import build_scenario, fixture_outcome
from spectra.strategies import CartelAgreement

from oracles import expected_fpsb_revenue_uniform, expected_second_highest_uniform


def test_swiss_fixture_revenue():
    s, out = fixture_outcome("swiss_inversion")
    assert score(out, s).revenue == 121 + 134 + 55


def test_threshold_fixture_efficiency():
    s, out = fixture_outcome("threshold_problem")
    rep = score(out, s)
    assert rep.welfare_achieved == 200 * s.money_scale
    assert rep.welfare_optimal == 250 * s.money_scale
    assert rep.efficiency == pytest.approx(0.8)


def test_efficient_outcome_scores_one():
    s = build_scenario("vickrey_gap")
    assert score(run(s), s).efficiency == 1.0


def test_efficiency_ratio_zero_zero():
    assert efficiency_ratio(0, 0) == 1.0


def test_winners_curse_gap():
    s = build_scenario("vickrey_gap")
    rep = score(run(s, mechanism="FPSB"), s)
    assert rep.winners_curse_gap == {"L": 5 * s.money_scale}
    nz = build_scenario("vickrey_gap", variant="new_zealand")
    assert score(run(nz), nz).winners_curse_gap == {"L": 400 * nz.money_scale}
    inc = build_scenario("increment_demo")
    assert score(run(inc), inc).winners_curse_gap == {}


def test_unsold_count_and_revenue():
    s = build_scenario("increment_demo")
    rep = score(run(s), s)
    assert rep.unsold_count == 0 and rep.revenue == 15100


def test_claim1_contrast():
    s = build_scenario("claim1_collusion")
    hamr = collusion_viability(s, s.cartel)
    assert hamr.verdict == BREAKS
    assert hamr.witness.best.gain > 0
    assert "CartelDefector" in hamr.trace(s.money_scale)
    samr = collusion_viability(s, s.cartel, s.mechanism.with_(kind=Mechanism.SAMR))
    assert samr.verdict == SUSTAINABLE
    assert max(samr.gains.values()) <= 0


def test_single_member_cartel_sustainable():
    s = build_scenario("claim1_collusion")
    solo = CartelAgreement({"X"}, {"A": "X"})
    assert collusion_viability(s, solo).verdict == SUSTAINABLE


@pytest.mark.parametrize("n", [2, 3])
def test_closed_forms_agree_with_integration(n):
    assert expected_second_highest_uniform(n) == pytest.approx((n - 1) / (n + 1))
    assert expected_fpsb_revenue_uniform(n) == pytest.approx((n - 1) / (n + 1))


def test_monte_carlo_uniform_two_bidders():
    target = expected_second_highest_uniform(2)
    for kind in (Mechanism.VICKREY, Mechanism.FPSB):
        res = monte_carlo_revenue(kind, Uniform(), 2, n_draws=2000, seed=5)
        assert abs(res.mean - target) <= 3 * res.stderr


def test_monte_carlo_degenerate_and_reproducible():
    for kind in ("VICKREY", "FPSB"):
        res = monte_carlo_revenue(kind, Degenerate(0.4), 3, n_draws=1000, seed=1)
        assert res.mean == pytest.approx(0.4) and res.stderr == pytest.approx(0.0)
    a = monte_carlo_revenue(MechanismConfig(Mechanism.FPSB), Uniform(), 3, n_draws=1000, seed=9)
    b = monte_carlo_revenue(MechanismConfig(Mechanism.FPSB), Uniform(), 3, n_draws=1000, seed=9)
    assert a.mean == b.mean and a.revenues == b.revenues


def test_monte_carlo_preconditions():
    with pytest.raises(ValueError):
        monte_carlo_revenue("SAMR", Uniform(), 2, n_draws=1000)
    with pytest.raises(ValueError):
        monte_carlo_revenue("FPSB", Uniform(), 2, n_draws=999)


def test_exports():
    s = build_scenario("vickrey_gap")
    doc = json.loads(report_json(score(run(s), s)))
    assert doc["revenue"] == 1500
    table = comparison_csv([{"mechanism": "FPSB", "revenue": 20}, {"mechanism": "VICKREY", "revenue": 15}])
    assert table.splitlines() == ["mechanism,revenue", "FPSB,20", "VICKREY,15"]
    assert comparison_csv([]) == ""
