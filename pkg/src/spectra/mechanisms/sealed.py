"""First-price and Vickrey sealed-bid engines, one independent auction per license."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping, Optional, Union

from ..errors import ConfigurationError, InputError
from ..model import (
    AuctionOutcome,
    Bid,
    LicenseRoundState,
    RejectedBid,
    RoundRecord,
    TieBreak,
    credit_adjusted_payment,
)
from .config import Disclosure, Mechanism
from .ties import resolve_tie

SealedBids = Union[Mapping[str, Mapping[str, int]], Iterable[Bid]]


def normalize_sealed_bids(sealed_bids: SealedBids) -> dict:
    """Flatten to ``{(bidder_id, license_id): amount}``, rejecting duplicates."""
    flat = {}
    if isinstance(sealed_bids, Mapping):
        for bidder_id, per_license in sealed_bids.items():
            for lid, amount in per_license.items():
                flat[(bidder_id, lid)] = int(amount)
        return flat
    for bid in sealed_bids:
        key = (bid.bidder_id, bid.license_id)
        if key in flat:
            raise InputError(f"duplicate sealed bid from {bid.bidder_id!r} on {bid.license_id!r}")
        flat[key] = int(bid.amount)
    return flat


def collect_sealed_bids(scenario, agents) -> dict:
    """Ask every agent for its sealed bids."""
    from ..strategies.base import PrivateState

    catalog = {lic.id: lic for lic in scenario.licenses}
    bids = {}
    for i, bidder in enumerate(scenario.bidders):
        private = PrivateState(bidder=bidder, index=i, profile=scenario.valuations[bidder.id],
                               budget_remaining=bidder.budget)
        policy = agents[bidder.id]
        policy.reset(private, catalog)
        bids[bidder.id] = dict(policy.sealed_bids(private, catalog))
    return bids


def _run_sealed(scenario, sealed_bids: SealedBids, kind: Mechanism, seed: int,
                disclosure: Disclosure = Disclosure.BIDS_AND_IDENTITIES) -> AuctionOutcome:
    licenses = {lic.id: lic for lic in scenario.licenses}
    bidders = {b.id: b for b in scenario.bidders}
    position = {lid: i for i, lid in enumerate(licenses)}

    per_license = defaultdict(list)
    for (bidder_id, lid), amount in normalize_sealed_bids(sealed_bids).items():
        if lid not in licenses:
            raise ConfigurationError(f"sealed bid on unknown license {lid!r}")
        if bidder_id not in bidders:
            raise ConfigurationError(f"sealed bid from unknown bidder {bidder_id!r}")
        if amount < 0:
            raise InputError(f"negative sealed bid from {bidder_id!r} on {lid!r}")
        if amount >= licenses[lid].reserve_price:
            per_license[lid].append((amount, bidder_id))

    # budgets bind across licenses: settle the largest winning bids first
    order = sorted(licenses, key=lambda lid: (-max((a for a, _ in per_license[lid]), default=-1), position[lid]))
    budget_left = {b.id: b.budget for b in scenario.bidders}
    bandwidth = defaultdict(float)
    allocation = {lid: None for lid in licenses}
    prices = {lid: None for lid in licenses}
    ties, rejected, states = [], [], {}

    for lid in order:
        lic = licenses[lid]
        remaining = sorted(per_license[lid], key=lambda t: (-t[0], t[1]))
        top = remaining[0][0] if remaining else None
        second = remaining[1][0] if len(remaining) > 1 else None
        while remaining:
            best = remaining[0][0]
            tied = [b for a, b in remaining if a == best]
            winner = resolve_tie(tied, lid, 1, seed)
            if len(tied) > 1:
                ties.append(TieBreak(lid, 1, tuple(sorted(tied)), winner))
            if kind is Mechanism.FPSB:
                price = best
            else:
                others = [a for a, b in remaining if b != winner]
                price = max([lic.reserve_price] + others[:1])
            bidder = bidders[winner]
            net = credit_adjusted_payment(price, bidder)
            cap = bidder.bandwidth_cap_mhz
            if budget_left[winner] is not None and net > budget_left[winner]:
                rejected.append(RejectedBid(winner, lid, best, "forfeit: budget"))
            elif cap is not None and bandwidth[(winner, lic.region_id)] + lic.bandwidth_mhz > cap + 1e-9:
                rejected.append(RejectedBid(winner, lid, best, "forfeit: bandwidth cap"))
            else:
                allocation[lid] = winner
                prices[lid] = price
                if budget_left[winner] is not None:
                    budget_left[winner] -= net
                bandwidth[(winner, lic.region_id)] += lic.bandwidth_mhz
                break
            remaining = [(a, b) for a, b in remaining if b != winner]
        shown = None
        if disclosure is Disclosure.BIDS_AND_IDENTITIES and allocation[lid] is not None:
            shown = (allocation[lid],)
        states[lid] = LicenseRoundState(top, shown, len(per_license[lid]), False, None, second)

    payments = {b.id: 0 for b in scenario.bidders}
    for lid, winner in allocation.items():
        if winner is not None:
            payments[winner] += credit_adjusted_payment(prices[lid], bidders[winner])
    record = RoundRecord(1, {lid: states[lid] for lid in licenses}, rejected=tuple(rejected))
    return AuctionOutcome(
        mechanism=kind.value,
        seed=seed,
        allocation=allocation,
        gross_prices=prices,
        payments=payments,
        rounds_elapsed=1,
        raise_rounds=0,
        history=(record,),
        tie_breaks=tuple(ties),
    )


def run_fpsb(scenario, sealed_bids: SealedBids, seed: Optional[int] = None, disclosure=Disclosure.BIDS_AND_IDENTITIES) -> AuctionOutcome:
    """Each license to its highest bid, at that bid."""
    return _run_sealed(scenario, sealed_bids, Mechanism.FPSB, scenario.seed if seed is None else seed, disclosure)


def run_vickrey(scenario, sealed_bids: SealedBids, seed: Optional[int] = None, disclosure=Disclosure.BIDS_AND_IDENTITIES) -> AuctionOutcome:
    """Each license to its highest bid, at max(second-highest bid, reserve)."""
    return _run_sealed(scenario, sealed_bids, Mechanism.VICKREY, scenario.seed if seed is None else seed, disclosure)
