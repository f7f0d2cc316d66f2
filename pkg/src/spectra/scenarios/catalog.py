"""Built-in scenarios reproducing the worked examples.

Catalog money uses ``money_scale = 100`` (amounts below are in rupees
and stored as paise) unless noted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import ConfigurationError
from ..mechanisms.config import Disclosure, IncrementSchedule, Mechanism, MechanismConfig, Ordering
from ..model import AuctionOutcome, Bidder, License, ValuationProfile, unit_demand_profile
from ..strategies.policies import CartelAgreement
from .scenario import Scenario, StrategySpec

RS = 100  # paise per rupee


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    builder: Callable[..., Scenario]
    locus: str
    summary: str


def _lic(lid, reserve=0, bandwidth=10.0, population=1_000_000, region="R0", weight=1.0):
    return License(lid, bandwidth, population, 0.0, reserve, weight, region)


def _strategies(**specs):
    return {bid: StrategySpec(*spec) if isinstance(spec, tuple) else StrategySpec(spec) for bid, spec in specs.items()}


def two_slot_complements(pair_value: int = 300, reserve: int = 0, inc: int = 1, seed: int = 1) -> Scenario:
    """Bidder A wants both slots (singles 100 each); B and C want any one slot at 150."""
    ids = ("s1", "s2")
    licenses = [_lic(lid, reserve * RS) for lid in ids]
    valuations = {
        "A": ValuationProfile("A", {"s1": 100 * RS, "s2": 100 * RS}, {frozenset(ids): (pair_value - 200) * RS}),
        "B": unit_demand_profile("B", ids, 150 * RS),
        "C": unit_demand_profile("C", ids, 150 * RS),
    }
    return Scenario(
        name="two_slot_complements",
        licenses=licenses,
        bidders=[Bidder("A"), Bidder("B"), Bidder("C")],
        valuations=valuations,
        mechanism=MechanismConfig(Mechanism.SEQ_AMR, IncrementSchedule.absolute(inc * RS),
                                  ordering=Ordering("FIXED", ids)),
        strategy_assignments=_strategies(A="ExposureChaser", B="StraightforwardAscending", C="StraightforwardAscending"),
        seed=seed,
        money_scale=RS,
        description=f"Two complementary slots; A's pair value {pair_value}, B and C unit demand at 150.",
    )


def threshold_problem(seed: int = 7) -> Scenario:
    """A wants the pair (200); B and C want one slot each at 150 and 100.

    Package bids are out of engine scope, so A's package bid is
    approximated by item bids under a total budget of 180.
    """
    ids = ("s1", "s2")
    return Scenario(
        name="threshold_problem",
        licenses=[_lic(lid) for lid in ids],
        bidders=[Bidder("A", budget=180 * RS), Bidder("B"), Bidder("C")],
        valuations={
            "A": ValuationProfile("A", {"s1": 100 * RS, "s2": 100 * RS}),
            "B": unit_demand_profile("B", ids, 150 * RS),
            "C": unit_demand_profile("C", ids, 100 * RS),
        },
        mechanism=MechanismConfig(Mechanism.SAMR, IncrementSchedule.absolute(5 * RS)),
        strategy_assignments=_strategies(A="StraightforwardAscending", B="StraightforwardAscending",
                                         C="StraightforwardAscending"),
        seed=seed,
        money_scale=RS,
        description="Threshold problem: B and C together outvalue A's package, item bids only.",
    )


def increment_demo(inc: int = 1, seed: int = 7) -> Scenario:
    """One item, reserve 100, private values 150 (A) and 159 (B)."""
    return Scenario(
        name="increment_demo",
        licenses=[_lic("L", 100 * RS)],
        bidders=[Bidder("A"), Bidder("B")],
        valuations={"A": ValuationProfile("A", {"L": 150 * RS}), "B": ValuationProfile("B", {"L": 159 * RS})},
        mechanism=MechanismConfig(Mechanism.SEQ_AMR, IncrementSchedule.absolute(inc * RS)),
        strategy_assignments=_strategies(A="StraightforwardAscending", B="StraightforwardAscending"),
        seed=seed,
        money_scale=RS,
        description=f"Minimum increment demo with a fixed increment of {inc}.",
    )


def demand_reduction_pair(reserve: int = 10, seed: int = 7) -> Scenario:
    """Two identical slots, two bidders valuing each slot at 100."""
    ids = ("s1", "s2")
    return Scenario(
        name="demand_reduction_pair",
        licenses=[_lic(lid, reserve * RS) for lid in ids],
        bidders=[Bidder("A"), Bidder("B")],
        valuations={bid: ValuationProfile(bid, {"s1": 100 * RS, "s2": 100 * RS}) for bid in ("A", "B")},
        mechanism=MechanismConfig(Mechanism.SAMR, IncrementSchedule.absolute(1 * RS)),
        strategy_assignments=_strategies(A=("DemandReducer", {"k": 1}), B=("DemandReducer", {"k": 1})),
        seed=seed,
        money_scale=RS,
        description="Demand reduction: each bidder could win both slots but settles for one.",
    )


def vickrey_gap(variant: str = "three_bidders", seed: int = 7) -> Scenario:
    """Sealed bids 10/15/20, or a lone high bid of 500 against reserve 100."""
    if variant == "three_bidders":
        values = {"A": 10, "B": 15, "C": 20}
        reserve = 0
    elif variant == "new_zealand":
        values = {"A": 500}
        reserve = 100
    else:
        raise ConfigurationError(f"unknown vickrey_gap variant {variant!r}")
    return Scenario(
        name="vickrey_gap",
        licenses=[_lic("L", reserve * RS)],
        bidders=[Bidder(b) for b in values],
        valuations={b: ValuationProfile(b, {"L": v * RS}) for b, v in values.items()},
        mechanism=MechanismConfig(Mechanism.VICKREY, disclosure=Disclosure.BIDS_AND_IDENTITIES),
        strategy_assignments={b: StrategySpec("TruthfulSealed") for b in values},
        seed=seed,
        money_scale=RS,
        description=f"Second-price gap example ({variant}).",
    )


def claim1_collusion(tsf: int = 2, mechanism: str = "HAMR", inc: int = 5, seed: int = 7) -> Scenario:
    """Two colluders X and Y split licenses A (to X) and C (to Y).

    A is visited before C and both share one threshold, so under HAMR A
    closes first and X can then bid on C with no way left to punish it.
    """
    ids = ("A", "C")
    cartel = CartelAgreement({"X", "Y"}, {"A": "X", "C": "Y"}, "RAISE_ON_DEFECTOR", 0.1)
    return Scenario(
        name="claim1_collusion",
        licenses=[_lic(lid, 10 * RS) for lid in ids],
        bidders=[Bidder("X"), Bidder("Y")],
        valuations={
            "X": ValuationProfile("X", {"A": 100 * RS, "C": 100 * RS}),
            "Y": ValuationProfile("Y", {"A": 80 * RS, "C": 60 * RS}),
        },
        mechanism=MechanismConfig(
            Mechanism(mechanism),
            IncrementSchedule.absolute(inc * RS),
            tsf={lid: tsf for lid in ids},
            default_tsf=tsf,
            ordering=Ordering("FIXED", ids),
            disclosure=Disclosure.BIDS_AND_IDENTITIES,
        ),
        strategy_assignments={b: StrategySpec("CartelMember") for b in ("X", "Y")},
        seed=seed,
        money_scale=RS,
        cartel=cartel,
        description="Two-member cartel under HAMR vs SAMR.",
    )


def five_license_entrant(n_licenses: int = 5, inc: int = 5, seed: int = 7) -> Scenario:
    """Four incumbents (any one license worth 100) and a designated entrant (80).

    Values are synthetic; the point is the 4-vs-5 license contrast.
    """
    if n_licenses < 1:
        raise ConfigurationError("n_licenses must be >= 1")
    ids = tuple(f"L{i + 1}" for i in range(n_licenses))
    incumbents = [f"I{i + 1}" for i in range(4)]
    bidders = [Bidder(b) for b in incumbents] + [Bidder("E", designated=True)]
    valuations = {b: unit_demand_profile(b, ids, 100 * RS) for b in incumbents}
    valuations["E"] = unit_demand_profile("E", ids, 80 * RS)
    return Scenario(
        name="five_license_entrant",
        licenses=[_lic(lid, 10 * RS) for lid in ids],
        bidders=bidders,
        valuations=valuations,
        mechanism=MechanismConfig(Mechanism.SAMR, IncrementSchedule.absolute(inc * RS)),
        strategy_assignments={b.id: StrategySpec("StraightforwardAscending") for b in bidders},
        seed=seed,
        money_scale=RS,
        description=f"{n_licenses} licenses for 4 incumbents and 1 entrant (synthetic values).",
    )


def swiss_inversion(seed: int = 7) -> Scenario:
    """Three licenses sold in sequence, the third carrying double the bandwidth.

    Bidder values are synthetic (money in millions of francs, scale 1);
    the recorded prices live in :func:`fixture_outcome`.
    """
    ids = ("W1", "W2", "W3")
    licenses = [_lic("W1", 0, 10.0), _lic("W2", 0, 10.0), _lic("W3", 0, 20.0)]
    bidders = [Bidder(b) for b in ("P", "Q", "R")]
    valuations = {b.id: unit_demand_profile(b.id, ids, 150) for b in bidders}
    return Scenario(
        name="swiss_inversion",
        licenses=licenses,
        bidders=bidders,
        valuations=valuations,
        mechanism=MechanismConfig(Mechanism.SEQ_AMR, IncrementSchedule.absolute(1), ordering=Ordering("FIXED", ids)),
        strategy_assignments={b.id: StrategySpec("StraightforwardAscending") for b in bidders},
        seed=seed,
        money_scale=1,
        description="Sequential sale with a large third license (synthetic values).",
    )


CATALOG = {
    e.name: e
    for e in [
        CatalogEntry("two_slot_complements", two_slot_complements, "exposure problem, two complementary slots",
                     "A pair 300 (or 200), singles 100; B, C unit demand 150"),
        CatalogEntry("threshold_problem", threshold_problem, "threshold problem with a package bidder",
                     "A pair 200 capped at 180; B 150; C 100"),
        CatalogEntry("increment_demo", increment_demo, "minimum increment size",
                     "reserve 100, values 150 and 159, increment parameter"),
        CatalogEntry("demand_reduction_pair", demand_reduction_pair, "demand reduction",
                     "two slots, two bidders valuing each at 100"),
        CatalogEntry("vickrey_gap", vickrey_gap, "second-price payment rule",
                     "bids 10/15/20, or a single bid of 500 over reserve 100"),
        CatalogEntry("claim1_collusion", claim1_collusion, "collusion under the hybrid auction",
                     "cartel X->A, Y->C with equal thresholds"),
        CatalogEntry("five_license_entrant", five_license_entrant, "number of licenses vs entry",
                     "4 incumbents + 1 entrant, 4 or 5 licenses"),
        CatalogEntry("swiss_inversion", swiss_inversion, "sequential price inversion",
                     "three licenses, third double-size; prices 121/134/55 as fixture"),
    ]
}


def catalog_names() -> list:
    return sorted(CATALOG)


def build_scenario(name: str, **params) -> Scenario:
    """Build a catalog scenario; keyword ``params`` select variants."""
    try:
        entry = CATALOG[name]
    except KeyError:
        raise LookupError(f"unknown scenario {name!r}; known: {', '.join(catalog_names())}") from None
    return entry.builder(**params)


def fixture_outcome(name: str) -> tuple:
    """Recorded outcomes that the engines do not generate themselves.

    Returns ``(scenario, outcome)``.  ``swiss_inversion`` carries the
    reported prices 121, 134 and 55; ``threshold_problem`` has A winning
    the pair for a total of 180.
    """
    if name == "swiss_inversion":
        s = swiss_inversion()
        alloc = {"W1": "P", "W2": "Q", "W3": "R"}
        prices = {"W1": 121, "W2": 134, "W3": 55}
    elif name == "threshold_problem":
        s = threshold_problem()
        alloc = {"s1": "A", "s2": "A"}
        prices = {"s1": 90 * RS, "s2": 90 * RS}
    else:
        raise LookupError(f"no fixture outcome for {name!r}")
    payments = {b.id: 0 for b in s.bidders}
    for lid, w in alloc.items():
        payments[w] += prices[lid]
    outcome = AuctionOutcome("FIXTURE", s.seed, alloc, prices, payments, rounds_elapsed=len(alloc))
    return s, outcome
