"""Behavioral archetypes for bidder agents."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Optional

from ..errors import ConfigurationError
from ..model import License, Money, round_half_up, scale_money
from .base import Policy, PrivateState, PublicView, affordable, bandwidth_ok, straightforward_raises


class StraightforwardAscending(Policy):
    """Raise by the minimum increment wherever the price is still below marginal value."""

    name = "StraightforwardAscending"

    def decide(self, view, private):
        return straightforward_raises(view, private, view.biddable)


class TruthfulSealed(StraightforwardAscending):
    """Sealed bid equal to the standalone value of each license."""

    name = "TruthfulSealed"


class ScaledSealed(StraightforwardAscending):
    """Sealed bid of ``multiplier * value``; used for deviation grids."""

    name = "ScaledSealed"

    def __init__(self, multiplier: float):
        if not multiplier > 0:
            raise ConfigurationError("ScaledSealed multiplier must be > 0")
        self.multiplier = float(multiplier)

    def sealed_bids(self, private, catalog):
        bids = {}
        for lid, lic in catalog.items():
            v = private.profile.value({lid})
            if v <= 0:
                continue
            amount = scale_money(v, self.multiplier)
            if amount >= lic.reserve_price and affordable(private, amount):
                bids[lid] = amount
        return bids

    def describe(self):
        return f"{self.name}({self.multiplier:g})"


class ShadedSealed(ScaledSealed):
    """Sealed bid shaded below value by a factor in (0, 1)."""

    name = "ShadedSealed"

    def __init__(self, fraction: float):
        if not 0 < fraction < 1:
            raise ConfigurationError("ShadedSealed fraction must lie in (0, 1)")
        super().__init__(fraction)


class DemandReducer(Policy):
    """Straightforward bidding, but never pursuing more than ``k`` licenses at once."""

    name = "DemandReducer"

    def __init__(self, k: int = 1):
        if k < 1:
            raise ConfigurationError("DemandReducer k must be >= 1")
        self.k = int(k)

    def decide(self, view, private):
        room = self.k - len(private.secured)
        if room <= 0:
            return {}
        return straightforward_raises(view, private, view.biddable, limit=room, prefer_tied=True)

    def describe(self):
        return f"{self.name}({self.k})"


class ExposureChaser(Policy):
    """Complement bidder that chases a whole target bundle.

    On a bundle item it will pay up to the bundle's value minus the
    forecast prices of the other target items still to be bought
    (forecast defaults to their reserve).  Once part of the bundle is
    won, it keeps bidding up to the remaining marginal value, even if the
    pair ends up a loss.
    """

    name = "ExposureChaser"

    def __init__(self, target=None, forecast: Optional[Mapping[str, Money]] = None):
        self.target = frozenset(target) if target else None
        self.forecast = dict(forecast or {})

    def reset(self, private, catalog):
        unknown = ((self.target or frozenset()) | set(self.forecast)) - set(catalog)
        if unknown:
            raise ConfigurationError(f"ExposureChaser references unknown license(s) {sorted(unknown)}")
        if self.target is None:
            prof = private.profile
            liked = {lid for lid, v in prof.base_values.items() if v > 0}
            for subset, adj in prof.bundle_adjustments.items():
                if adj > 0:
                    liked |= subset
            self._target = frozenset(liked)
        else:
            self._target = self.target

    def ceiling(self, lid: str, view: PublicView, private: PrivateState) -> Money:
        held = private.secured
        prof = private.profile
        ceiling = prof.marginal(lid, held)
        if lid in self._target:
            lost = {j for j, res in view.closed.items() if j not in private.won}
            rest = self._target - held - lost - {lid}
            expected = sum(self.forecast.get(j, view.catalog[j].reserve_price) for j in rest)
            bundle = prof.value(held | self._target - lost) - prof.value(held) - expected
            ceiling = max(ceiling, bundle)
        return ceiling

    def decide(self, view, private):
        bids = {}
        spent = 0
        for lid in view.biddable:
            lv = view.licenses[lid]
            if not lv.is_open or lid in private.sole or lv.min_next_bid is None:
                continue
            price = lv.min_next_bid
            cost = private.net(price)
            ceiling = self.ceiling(lid, view, private)
            if ceiling <= 0 or cost > ceiling:
                continue
            if private.budget_remaining is not None and spent + cost > private.budget_remaining:
                continue
            if not bandwidth_ok(private, view.catalog, list(bids) + [lid]):
                continue
            bids[lid] = price
            spent += cost
        return bids


@dataclass(frozen=True)
class CartelAgreement:
    members: frozenset
    designated_winner: Mapping[str, str]
    punishment: str = "NONE"  # NONE | RAISE_ON_DEFECTOR
    markup_fraction: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        object.__setattr__(self, "designated_winner", dict(self.designated_winner))
        if self.punishment not in ("NONE", "RAISE_ON_DEFECTOR"):
            raise ConfigurationError(f"unknown punishment {self.punishment!r}")
        outsiders = set(self.designated_winner.values()) - self.members
        if outsiders:
            raise ConfigurationError(f"designated winners {sorted(outsiders)} are not cartel members")
        if self.markup_fraction < 0:
            raise ConfigurationError("markup_fraction must be >= 0")

    def licenses_of(self, bidder_id: str) -> frozenset:
        return frozenset(lid for lid, b in self.designated_winner.items() if b == bidder_id)


class CartelMember(Policy):
    """Bid only on own designated licenses, at reserve or minimum raises.

    With RAISE_ON_DEFECTOR punishment, a bid by another member on one of
    this member's licenses marks the defector; from then on this member
    also raises on the defector's designated licenses by the markup
    (never above its own marginal value).  When identities are hidden,
    every other member is suspected.
    """

    name = "CartelMember"

    def __init__(self, agreement: CartelAgreement):
        self.agreement = agreement

    def reset(self, private, catalog):
        unknown = set(self.agreement.designated_winner) - set(catalog)
        if unknown:
            raise ConfigurationError(f"cartel agreement references unknown license(s) {sorted(unknown)}")
        if private.id not in self.agreement.members:
            raise ConfigurationError(f"{private.id!r} is not a member of the cartel")
        self.suspects = set()
        self._seen = 0

    def _observe(self, view, private):
        me = private.id
        mine = self.agreement.licenses_of(me)
        own = Counter((e.round_index, e.license_id, e.amount) for e in private.own_bids)
        seen_by_key = Counter()
        for e in view.events[: self._seen]:
            seen_by_key[(e.round_index, e.license_id, e.amount)] += 1
        for e in view.events[self._seen:]:
            key = (e.round_index, e.license_id, e.amount)
            seen_by_key[key] += 1
            owner = self.agreement.designated_winner.get(e.license_id)
            if owner is None:
                continue
            if e.bidder_id is not None:
                if e.bidder_id != owner and e.bidder_id in self.agreement.members and e.bidder_id != me:
                    self.suspects.add(e.bidder_id)
            elif e.license_id in mine and seen_by_key[key] > own[key]:
                self.suspects |= self.agreement.members - {me}
        self._seen = len(view.events)

    def _member_bids(self, view, private):
        self._observe(view, private)
        punishing = self.agreement.punishment == "RAISE_ON_DEFECTOR" and self.suspects
        targets = set(self.agreement.licenses_of(private.id))
        if punishing:
            for s in self.suspects:
                targets |= self.agreement.licenses_of(s)
        bids = {}
        spent = 0
        for lid in view.biddable:
            if lid not in targets:
                continue
            lv = view.licenses[lid]
            if not lv.is_open or lid in private.sole or lv.min_next_bid is None:
                continue
            worth = private.profile.marginal(lid, private.secured)
            price = lv.min_next_bid
            own = self.agreement.designated_winner.get(lid) == private.id
            if not own and lv.standing_high is not None and self.agreement.markup_fraction:
                marked = round_half_up(lv.standing_high * (1 + self.agreement.markup_fraction))
                if price < marked and private.net(marked) <= worth:
                    price = marked
            cost = private.net(price)
            if worth <= 0 or cost > worth:
                continue
            if private.budget_remaining is not None and spent + cost > private.budget_remaining:
                continue
            if not bandwidth_ok(private, view.catalog, list(bids) + [lid]):
                continue
            bids[lid] = price
            spent += cost
        return bids

    def sealed_bids(self, private, catalog):
        bids = {}
        for lid in self.agreement.licenses_of(private.id):
            reserve = catalog[lid].reserve_price
            if private.profile.value({lid}) >= reserve and affordable(private, reserve):
                bids[lid] = reserve
        return bids

    def decide(self, view, private):
        return self._member_bids(view, private)

    def describe(self):
        a = self.agreement
        return f"{self.name}({a.punishment}{'' if a.punishment == 'NONE' else f', {a.markup_fraction:g}'})"


class CartelDefector(CartelMember):
    """Honor the cartel until a trigger fires, then bid straightforwardly everywhere.

    Triggers: ``own_closed`` (every own designated license has closed) or
    ``round`` (round/cycle index reaches ``at_round``).
    """

    name = "CartelDefector"

    def __init__(self, agreement: CartelAgreement, trigger: str = "own_closed", at_round: int = 1):
        super().__init__(agreement)
        if trigger not in ("own_closed", "round"):
            raise ConfigurationError(f"unknown defection trigger {trigger!r}")
        self.trigger = trigger
        self.at_round = int(at_round)

    def reset(self, private, catalog):
        super().reset(private, catalog)
        self.defected = False

    def _fired(self, view, private):
        if self.trigger == "round":
            return view.round_index >= self.at_round
        mine = self.agreement.licenses_of(private.id)
        return bool(mine) and mine <= set(view.closed)

    def decide(self, view, private):
        if not self.defected and self._fired(view, private):
            self.defected = True
        if self.defected:
            return straightforward_raises(view, private, view.biddable)
        return self._member_bids(view, private)

    def describe(self):
        if self.trigger == "round":
            return f"{self.name}(round>={self.at_round})"
        return f"{self.name}(own_closed)"
