"""What a bidder agent sees, and the policy interface engines call."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from ..model import Bidder, License, Money, ValuationProfile, credit_adjusted_payment


@dataclass(frozen=True)
class LicenseView:
    license_id: str
    is_open: bool
    reserve_price: Money
    standing_high: Optional[Money]
    standing_bidders: Optional[tuple]  # None when identities are hidden
    min_next_bid: Optional[Money]  # None when closed
    last_new_bids: int = 0
    saturation_factor: Optional[int] = None
    tsf: Optional[int] = None


@dataclass(frozen=True)
class BidEvent:
    round_index: int
    license_id: str
    amount: Money
    bidder_id: Optional[str]  # None when identities are hidden


@dataclass(frozen=True)
class ClosedResult:
    license_id: str
    sold: bool
    price: Optional[Money]
    winner: Optional[str]  # None when unsold or identities hidden


@dataclass(frozen=True)
class PublicView:
    """Everything common knowledge at a decision point.

    Never carries another bidder's valuation or budget.
    """

    mechanism: str
    round_index: int
    cycle_index: int
    biddable: tuple
    licenses: Mapping[str, LicenseView]
    catalog: Mapping[str, License]  # static license data, in scenario order
    events: tuple = ()
    closed: Mapping[str, ClosedResult] = field(default_factory=dict)
    identities_visible: bool = False


@dataclass(frozen=True)
class PrivateState:
    bidder: Bidder
    index: int
    profile: ValuationProfile
    sole: frozenset = frozenset()  # open licenses where this bidder alone is standing high
    tied: frozenset = frozenset()  # open licenses where it shares the standing high
    won: Mapping[str, Money] = field(default_factory=dict)  # closed licenses won -> gross price
    budget_remaining: Optional[Money] = None
    eligibility: Optional[float] = None
    own_bids: tuple = ()

    @property
    def id(self) -> str:
        return self.bidder.id

    @property
    def secured(self) -> frozenset:
        """Licenses this bidder wins if the auction stopped now (ties excluded)."""
        return self.sole | frozenset(self.won)

    def net(self, amount: Money) -> Money:
        return credit_adjusted_payment(amount, self.bidder)


class Policy:
    """A bidder's decision rule.

    Engines call :meth:`reset` once per run, then :meth:`sealed_bids`
    (sealed formats) or :meth:`decide` (ascending formats, once per
    round or HAMR visit).  Both return ``{license_id: amount}``.
    """

    name = "Policy"

    def reset(self, private: PrivateState, catalog: Mapping[str, License]) -> None:
        pass

    def sealed_bids(self, private: PrivateState, catalog: Mapping[str, License]) -> dict:
        # ascending-minded policies bid their standalone value when sealed
        bids = {}
        for lid in catalog:
            v = private.profile.value({lid})
            if v >= catalog[lid].reserve_price and v > 0 and affordable(private, v):
                bids[lid] = v
        return bids

    def decide(self, view: PublicView, private: PrivateState) -> dict:
        return {}

    def describe(self) -> str:
        return self.name

    def __repr__(self):
        return self.describe()


def affordable(private: PrivateState, amount: Money) -> bool:
    """A single bid whose net cost fits the remaining budget."""
    return private.budget_remaining is None or private.net(amount) <= private.budget_remaining


def rotation_key(license_ids: Iterable[str], offset: int) -> dict:
    """Per-bidder preference among otherwise equal licenses.

    Bidder ``i`` prefers licenses starting at position ``i`` of the
    scenario order; this is what lets symmetric agents spread out.
    """
    ids = list(license_ids)
    n = len(ids) or 1
    return {lid: (pos - offset) % n for pos, lid in enumerate(ids)}


def bandwidth_ok(private: PrivateState, catalog: Mapping[str, License], extra: Iterable[str]) -> bool:
    cap = private.bidder.bandwidth_cap_mhz
    if cap is None:
        return True
    used = defaultdict(float)
    for lid in set(private.won) | private.sole | private.tied | set(extra):
        lic = catalog[lid]
        used[lic.region_id] += lic.bandwidth_mhz
    return all(v <= cap + 1e-9 for v in used.values())


def straightforward_raises(
    view: PublicView,
    private: PrivateState,
    candidates: Iterable[str],
    limit: Optional[int] = None,
    prefer_tied: bool = False,
) -> dict:
    """Minimum raises on the most profitable licenses the bidder is not winning.

    A raise is placed only when its net cost is within the marginal value
    both against current holdings and against holdings plus the raises
    already chosen this round, and budget and cap allow it.  Licenses the
    bidder is tied on count as holdings when valuing the others, so a
    tied bidder does not spread into a second tie it cannot afford.
    """
    held = private.secured | private.tied
    order = rotation_key(view.catalog, private.index)
    options = []
    for lid in candidates:
        lv = view.licenses[lid]
        if not lv.is_open or lid in private.sole or lv.min_next_bid is None:
            continue
        price = lv.min_next_bid
        worth = private.profile.marginal(lid, held)
        surplus = worth - private.net(price)
        if worth <= 0 or surplus < 0:
            continue
        options.append((lid not in private.tied if prefer_tied else 0, -surplus, order[lid], lid, price))
    options.sort()

    chosen = {}
    spent = 0
    for *_, lid, price in options:
        if limit is not None and len(chosen) >= limit:
            break
        cost = private.net(price)
        worth = private.profile.marginal(lid, held | set(chosen))
        if worth <= 0 or cost > worth:
            continue
        if private.budget_remaining is not None and spent + cost > private.budget_remaining:
            continue
        if not bandwidth_ok(private, view.catalog, list(chosen) + [lid]):
            continue
        chosen[lid] = price
        spent += cost
    return chosen
