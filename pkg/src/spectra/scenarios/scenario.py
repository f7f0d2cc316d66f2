"""The Scenario bundle: everything one auction run needs."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Optional

import numpy as np

from ..errors import ScenarioError
from ..mechanisms.config import MechanismConfig
from ..model import Bidder, License, ValuationProfile
from ..oracle import within_bounds
from ..strategies.policies import CartelAgreement

ENUMERATION_LIMIT = 20


@dataclass(frozen=True)
class StrategySpec:
    policy: str
    params: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "params", {str(k): _plain(v) for k, v in dict(self.params).items()})


def _plain(value):
    # params are kept JSON-shaped so scenarios round-trip through files
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


@dataclass(frozen=True)
class Scenario:
    name: str
    licenses: tuple
    bidders: tuple
    valuations: Mapping[str, ValuationProfile]
    mechanism: MechanismConfig = field(default_factory=MechanismConfig)
    strategy_assignments: Mapping[str, StrategySpec] = field(default_factory=dict)
    seed: int = 0
    money_scale: int = 1
    cartel: Optional[CartelAgreement] = None
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "licenses", tuple(self.licenses))
        object.__setattr__(self, "bidders", tuple(self.bidders))
        object.__setattr__(self, "strategy_assignments", dict(self.strategy_assignments))
        validate(self)
        universe = frozenset(lic.id for lic in self.licenses)
        profiles = {}
        for b in self.bidders:
            p = self.valuations.get(b.id) or ValuationProfile(b.id)
            if p.universe != universe:
                p = ValuationProfile(p.bidder_id, p.base_values, p.bundle_adjustments, universe)
            profiles[b.id] = p
        object.__setattr__(self, "valuations", profiles)
        _check_nonnegative(self)

    @property
    def license_ids(self) -> tuple:
        return tuple(lic.id for lic in self.licenses)

    @property
    def bidder_ids(self) -> tuple:
        return tuple(b.id for b in self.bidders)

    def license(self, lid: str) -> License:
        return next(lic for lic in self.licenses if lic.id == lid)

    def bidder(self, bid: str) -> Bidder:
        return next(b for b in self.bidders if b.id == bid)

    @property
    def oracle_ok(self) -> bool:
        """True when exact welfare (and hence efficiency) can be computed."""
        return within_bounds(len(self.licenses), len(self.bidders))

    def replace(self, **changes) -> "Scenario":
        return replace(self, **changes)

    def agents(self, overrides=None) -> dict:
        """Fresh policy objects for every bidder, from the strategy assignments."""
        from ..strategies.registry import make_policy

        agents = {}
        for b in self.bidders:
            spec = self.strategy_assignments.get(b.id, StrategySpec("StraightforwardAscending"))
            agents[b.id] = make_policy(spec, self.cartel)
        agents.update(overrides or {})
        return agents


def validate(s: Scenario) -> None:
    seen = set()
    for i, lic in enumerate(s.licenses):
        if lic.id in seen:
            raise ScenarioError(f"licenses[{i}].id", f"duplicate license id {lic.id!r}")
        seen.add(lic.id)
    bidders = set()
    for i, b in enumerate(s.bidders):
        if b.id in bidders:
            raise ScenarioError(f"bidders[{i}].id", f"duplicate bidder id {b.id!r}")
        bidders.add(b.id)
    for bid, prof in s.valuations.items():
        if bid not in bidders:
            raise ScenarioError(f"valuations.{bid}", f"valuation for unknown bidder {bid!r}")
        refs = set(prof.base_values)
        for subset in prof.bundle_adjustments:
            refs |= subset
        unknown = refs - seen
        if unknown:
            raise ScenarioError(f"valuations.{bid}", f"unknown license id(s) {sorted(unknown)}")
    for bid in s.strategy_assignments:
        if bid not in bidders:
            raise ScenarioError(f"strategy_assignments.{bid}", f"unknown bidder {bid!r}")
    for lid in s.mechanism.tsf:
        if lid not in seen:
            raise ScenarioError(f"mechanism.tsf.{lid}", f"unknown license id {lid!r}")
    if s.mechanism.ordering is not None:
        for lid in s.mechanism.ordering.order:
            if lid not in seen:
                raise ScenarioError("mechanism.ordering.order", f"unknown license id {lid!r}")
    if s.cartel is not None:
        for m in s.cartel.members:
            if m not in bidders:
                raise ScenarioError("cartel.members", f"unknown bidder {m!r}")
        for lid in s.cartel.designated_winner:
            if lid not in seen:
                raise ScenarioError("cartel.designated_winner", f"unknown license id {lid!r}")
    if s.money_scale < 1:
        raise ScenarioError("money_scale", "must be a positive integer")


def _check_nonnegative(s: Scenario) -> None:
    """value(S) >= 0 for every bundle, by enumeration when small enough."""
    for bid, prof in s.valuations.items():
        if not prof.bundle_adjustments or all(v >= 0 for v in prof.bundle_adjustments.values()):
            continue
        relevant = sorted(set(prof.base_values).union(*prof.bundle_adjustments))
        if len(relevant) <= ENUMERATION_LIMIT:
            pos = {lid: i for i, lid in enumerate(relevant)}
            masks = np.arange(1 << len(relevant), dtype=np.int64)
            values = np.zeros(len(masks), dtype=np.int64)
            for lid, v in prof.base_values.items():
                values += ((masks >> pos[lid]) & 1) * int(v)
            for subset, adj in prof.bundle_adjustments.items():
                m = sum(1 << pos[lid] for lid in subset)
                values += ((masks & m) == m) * int(adj)
            worst = int(values.argmin())
            if values[worst] < 0:
                bundle = [lid for lid in relevant if worst >> pos[lid] & 1]
                raise ScenarioError(f"valuations.{bid}", f"bundle {bundle} has negative value {int(values[worst])}")
        else:
            for subset in prof.bundle_adjustments:
                if prof.value(subset) < 0:
                    raise ScenarioError(f"valuations.{bid}", f"bundle {sorted(subset)} has negative value")
