import pytest

from spectra import Bidder, License, run
from spectra.errors import ConfigurationError
from spectra.mechanisms import Mechanism
from spectra.scenarios import build_scenario
from spectra.strategies import (
    CartelAgreement,
    CartelDefector,
    CartelMember,
    DemandReducer,
    ExposureChaser,
    LicenseView,
    PrivateState,
    PublicView,
    ScaledSealed,
    ShadedSealed,
    StraightforwardAscending,
    TruthfulSealed,
    make_policy,
)
from spectra.strategies.deviation import deviation_search, unilateral_deviation_gain
from spectra.model import ValuationProfile

from helpers import simple

CATALOG = {"L": License("L", 10.0, reserve_price=100), "M": License("M", 10.0)}


def view(standing=None, bidders=None, min_next=None, lid="L"):
    lv = LicenseView(lid, True, CATALOG[lid].reserve_price, standing, bidders, min_next)
    return PublicView("SEQ_AMR", 1, 0, (lid,), {lid: lv}, CATALOG, identities_visible=True)


def private(values, bidder=None, **kw):
    b = bidder or Bidder("A")
    return PrivateState(b, 0, ValuationProfile(b.id, values), **kw)


def test_truthful_sealed_bids_value():
    assert TruthfulSealed().sealed_bids(private({"L": 20}), {"L": License("L", 1.0)}) == {"L": 20}


def test_shaded_and_scaled():
    cat = {"L": License("L", 1.0)}
    assert ShadedSealed(0.5).sealed_bids(private({"L": 21}), cat) == {"L": 11}
    assert ScaledSealed(1.5).sealed_bids(private({"L": 20}), cat) == {"L": 30}
    with pytest.raises(ConfigurationError):
        ShadedSealed(1.0)
    with pytest.raises(ConfigurationError):
        ScaledSealed(0)


def test_sealed_bid_respects_budget():
    cat = {"L": License("L", 1.0)}
    p = private({"L": 20}, bidder=Bidder("A", budget=10), budget_remaining=10)
    assert TruthfulSealed().sealed_bids(p, cat) == {}


def test_straightforward_stops_at_value():
    pol = StraightforwardAscending()
    assert pol.decide(view(150, ("B",), 151), private({"L": 150})) == {}
    assert pol.decide(view(149, ("B",), 150), private({"L": 150})) == {"L": 150}
    # already standing high: no self-raise
    assert pol.decide(view(120, ("A",), 121), private({"L": 150}, sole=frozenset({"L"}))) == {}


def test_straightforward_credit_uses_net_cost():
    b = Bidder("A", designated=True, credit_fraction=0.25)
    # 160 gross costs 120 net, within value 150
    assert StraightforwardAscending().decide(view(159, ("B",), 160), private({"L": 150}, bidder=b)) == {"L": 160}


def test_demand_reducer_limits_to_k():
    s = build_scenario("demand_reduction_pair")
    out = run(s)
    assert sorted(out.allocation.values()) == ["A", "B"]
    with pytest.raises(ConfigurationError):
        DemandReducer(0)


def test_straightforward_pair_bids_up_to_one_increment_of_100():
    s = build_scenario("demand_reduction_pair")
    out = run(s, agents={b: StraightforwardAscending() for b in s.bidder_ids})
    for price in out.gross_prices.values():
        assert abs(price - 100 * s.money_scale) <= s.mechanism.increment.amount


def test_exposure_chaser_pays_above_single_value():
    s = build_scenario("two_slot_complements", pair_value=200)
    out = run(s)
    a = s.valuations["A"]
    assert out.allocation["s1"] == "A" and out.gross_prices["s1"] > a.value({"s1"})
    assert a.value(out.won_by("A")) - out.payments["A"] < 0


def test_exposure_chaser_unknown_target():
    s = build_scenario("two_slot_complements")
    with pytest.raises(ConfigurationError):
        run(s, agents={"A": ExposureChaser(target={"zz"})})


def test_cartel_member_ignores_rival_license():
    ag = CartelAgreement({"X", "Y"}, {"L": "Y", "M": "X"})
    pol = CartelMember(ag)
    p = private({"L": 500, "M": 5}, bidder=Bidder("X"))
    pol.reset(p, CATALOG)
    assert pol.decide(view(None, None, 100, lid="L"), p) == {}


def test_cartel_agreement_validation():
    with pytest.raises(ConfigurationError):
        CartelAgreement({"X"}, {"L": "Z"})
    with pytest.raises(ConfigurationError):
        CartelAgreement({"X"}, {"L": "X"}, punishment="FINE")
    pol = CartelMember(CartelAgreement({"X"}, {"Q": "X"}))
    with pytest.raises(ConfigurationError):
        pol.reset(private({}, bidder=Bidder("X")), CATALOG)


def test_registry():
    assert isinstance(make_policy("StraightforwardAscending"), StraightforwardAscending)
    with pytest.raises(ConfigurationError):
        make_policy("Oracle")
    with pytest.raises(ConfigurationError):
        make_policy("CartelMember")


def test_defector_gains_under_hamr():
    s = build_scenario("claim1_collusion")
    profile = {m: (lambda: CartelMember(s.cartel)) for m in s.cartel.members}
    gain = unilateral_deviation_gain(s, profile, "X", [lambda: CartelDefector(s.cartel, "own_closed")])
    assert gain > 0


def test_defection_punished_under_samr():
    s = build_scenario("claim1_collusion", mechanism="SAMR")
    profile = {m: (lambda: CartelMember(s.cartel)) for m in s.cartel.members}
    alts = [lambda: CartelDefector(s.cartel, "round", 1), lambda: CartelDefector(s.cartel, "round", 2),
            lambda: CartelDefector(s.cartel, "own_closed"), StraightforwardAscending()]
    for member in ("X", "Y"):
        assert unilateral_deviation_gain(s, profile, member, alts) <= 0


def test_deviation_zero_when_nothing_won():
    s = simple({"A": {"L": 5}, "B": {"L": 50}}, kind=Mechanism.VICKREY)
    gain = unilateral_deviation_gain(s, {}, "A", [ShadedSealed(0.5), ScaledSealed(1.2)])
    assert gain == 0


def test_deviation_search_reports_every_alternative():
    s = simple({"A": {"L": 40}, "B": {"L": 30}}, kind=Mechanism.VICKREY)
    rep = deviation_search(s, "A", [ShadedSealed(0.5), ScaledSealed(1.5)], {"A": TruthfulSealed()})
    assert [r.policy for r in rep.results] == ["ShadedSealed(0.5)", "ScaledSealed(1.5)"]
    assert rep.baseline_utility == 10 and rep.gain <= 0
    with pytest.raises(ConfigurationError):
        deviation_search(s, "Q", [ShadedSealed(0.5)])
    with pytest.raises(ConfigurationError):
        deviation_search(s, "A", [])
