"""Small scenario builders shared by the tests."""

from spectra import Bidder, License, ValuationProfile
from spectra.mechanisms import IncrementSchedule, Mechanism, MechanismConfig, Ordering
from spectra.scenarios import Scenario, StrategySpec


def simple(values, reserve=0, kind=Mechanism.SAMR, inc=1, tsf=2, ordering=None, budgets=None, seed=0,
           policy="StraightforwardAscending", **cfg):
    """``values`` is {bidder: {license: value}}; additive valuations."""
    lids = sorted({lid for per in values.values() for lid in per}) or ["L"]
    budgets = budgets or {}
    return Scenario(
        name="t",
        licenses=[License(lid, 10.0, reserve_price=reserve) for lid in lids],
        bidders=[Bidder(b, budget=budgets.get(b)) for b in values],
        valuations={b: ValuationProfile(b, per) for b, per in values.items()},
        mechanism=MechanismConfig(kind, IncrementSchedule.absolute(inc), tsf={}, default_tsf=tsf,
                                  ordering=ordering, **cfg),
        strategy_assignments={b: StrategySpec(policy) for b in values},
        seed=seed,
    )


__all__ = ["simple", "Ordering"]
