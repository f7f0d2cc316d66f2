"""Unilateral-deviation search over a finite set of alternative policies.

Equilibrium statements produced here hold only relative to the declared
alternatives, never against all strategies.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Union

from ..errors import ConfigurationError
from ..model import AuctionOutcome, Money, utility
from ..oracle import check_bounds
from .base import Policy

Alternative = Union[Policy, Callable[[], Policy]]


@dataclass(frozen=True)
class DeviationResult:
    policy: str
    utility: Money
    gain: Money
    outcome: AuctionOutcome


@dataclass(frozen=True)
class DeviationReport:
    bidder_id: str
    baseline_policy: str
    baseline_utility: Money
    baseline_outcome: AuctionOutcome
    results: tuple

    @property
    def gain(self) -> Money:
        return max(r.gain for r in self.results)

    @property
    def best(self) -> DeviationResult:
        """The first alternative achieving the maximum gain (the witness)."""
        top = self.gain
        return next(r for r in self.results if r.gain == top)


def _fresh(alt: Alternative) -> Policy:
    if isinstance(alt, Policy):
        return copy.deepcopy(alt)
    return alt()


def deviation_search(
    scenario,
    deviating_bidder: str,
    alternatives: Iterable[Alternative],
    strategy_profile: Optional[Mapping[str, Alternative]] = None,
    mechanism=None,
    config=None,
    seed: Optional[int] = None,
) -> DeviationReport:
    """Run the baseline profile, then each alternative for one bidder.

    Everyone else keeps their baseline policy and the seed is held fixed,
    so differences in the deviator's utility are due to its policy alone.
    """
    from ..simulate import run

    check_bounds(len(scenario.licenses), len(scenario.bidders))
    if deviating_bidder not in scenario.bidder_ids:
        raise ConfigurationError(f"unknown deviating bidder {deviating_bidder!r}")
    alternatives = list(alternatives)
    if not alternatives:
        raise ConfigurationError("deviation search needs at least one alternative policy")
    profile = dict(strategy_profile or {})

    def agents(override=None):
        base = {b: _fresh(p) for b, p in profile.items()}
        if override is not None:
            base[deviating_bidder] = override
        return scenario.agents(base)

    valuation = scenario.valuations[deviating_bidder]
    baseline_agents = agents()
    baseline_policy = baseline_agents[deviating_bidder].describe()
    baseline = run(scenario, mechanism=mechanism, config=config, agents=baseline_agents, seed=seed)
    base_u = utility(baseline, valuation)

    results = []
    for alt in alternatives:
        policy = _fresh(alt)
        out = run(scenario, mechanism=mechanism, config=config, agents=agents(policy), seed=seed)
        u = utility(out, valuation)
        results.append(DeviationResult(policy.describe(), u, u - base_u, out))
    return DeviationReport(deviating_bidder, baseline_policy, base_u, baseline, tuple(results))


def unilateral_deviation_gain(scenario, strategy_profile, deviating_bidder, alternative_policies, **kwargs) -> Money:
    """Largest utility gain any alternative gives the deviator over the baseline."""
    return deviation_search(scenario, deviating_bidder, alternative_policies, strategy_profile, **kwargs).gain
