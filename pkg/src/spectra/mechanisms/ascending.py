"""Multi-round ascending engines: sequential, simultaneous (SAMR) and hybrid (HAMR).

All three share one order book.  Bids within a round (or a HAMR visit)
are simultaneous: every agent decides on the same public view.  When
several bidders place the same top amount in one round they share the
standing high bid; the tie stays open while bidding continues and is
settled by a seeded draw only when the license closes.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Optional

from ..errors import ConfigurationError, EngineError
from ..model import (
    AuctionOutcome,
    ClosingEvent,
    LicenseRoundState,
    RejectedBid,
    RoundRecord,
    TieBreak,
    credit_adjusted_payment,
)
from ..strategies.base import BidEvent, ClosedResult, LicenseView, Policy, PrivateState, PublicView
from .config import Disclosure, Mechanism, MechanismConfig, min_next_bid
from .ties import cycle_order, resolve_tie

_EPS = 1e-9


@dataclass(frozen=True)
class _Standing:
    amount: int
    bidders: tuple  # sorted; more than one means an open tie
    round_index: int


class _Book:
    def __init__(self, scenario, agents: Mapping[str, Policy], config: MechanismConfig, seed: int):
        self.scenario = scenario
        self.config = config
        self.seed = seed
        self.licenses = {lic.id: lic for lic in scenario.licenses}
        self.bidders = {b.id: b for b in scenario.bidders}
        self.index = {b.id: i for i, b in enumerate(scenario.bidders)}
        self.profiles = scenario.valuations
        missing = set(self.bidders) - set(agents)
        if missing:
            raise ConfigurationError(f"no strategy assigned to bidder(s) {sorted(missing)}")
        self.agents = {bid: agents[bid] for bid in self.bidders}
        self.visible = config.disclosure is Disclosure.BIDS_AND_IDENTITIES

        self.standing: dict = {lid: None for lid in self.licenses}
        self.open = list(self.licenses)
        self.closed: dict = {}
        self.events: list = []
        self.public_events: list = []
        self.own_bids = defaultdict(list)
        self.last_counts = {lid: 0 for lid in self.licenses}
        total_weight = sum(lic.activity_weight for lic in self.licenses.values())
        self.eligibility = {
            b.id: total_weight if b.initial_eligibility is None else float(b.initial_eligibility)
            for b in scenario.bidders
        }
        self.sf = {lid: 0 for lid in self.licenses}
        self.tie_breaks: list = []
        self.closings: list = []
        self.history: list = []
        self.raise_rounds = 0

        for bid, policy in self.agents.items():
            policy.reset(self.private(bid), self.licenses)

    # -- views ---------------------------------------------------------

    def min_next(self, lid):
        st = self.standing[lid]
        return min_next_bid(self.licenses[lid], None if st is None else st.amount,
                            self.config.increment, self.last_counts[lid])

    def holdings(self, bidder_id) -> set:
        return {lid for lid in self.open if self.standing[lid] and bidder_id in self.standing[lid].bidders}

    def committed(self, bidder_id) -> int:
        bidder = self.bidders[bidder_id]
        total = sum(credit_adjusted_payment(self.standing[lid].amount, bidder) for lid in self.holdings(bidder_id))
        total += sum(credit_adjusted_payment(p, bidder) for lid, (w, p) in self.closed.items() if w == bidder_id)
        return total

    def private(self, bidder_id) -> PrivateState:
        sole, tied = set(), set()
        for lid in self.open:
            st = self.standing[lid]
            if st and bidder_id in st.bidders:
                (sole if len(st.bidders) == 1 else tied).add(lid)
        bidder = self.bidders[bidder_id]
        budget = None if bidder.budget is None else bidder.budget - self.committed(bidder_id)
        return PrivateState(
            bidder=bidder,
            index=self.index[bidder_id],
            profile=self.profiles[bidder_id],
            sole=frozenset(sole),
            tied=frozenset(tied),
            won={lid: p for lid, (w, p) in self.closed.items() if w == bidder_id},
            budget_remaining=budget,
            eligibility=self.eligibility[bidder_id],
            own_bids=tuple(self.own_bids[bidder_id]),
        )

    def view(self, round_index, cycle_index, biddable) -> PublicView:
        hamr = self.config.kind is Mechanism.HAMR
        lviews = {}
        for lid, lic in self.licenses.items():
            st = self.standing[lid]
            is_open = lid not in self.closed
            lviews[lid] = LicenseView(
                license_id=lid,
                is_open=is_open,
                reserve_price=lic.reserve_price,
                standing_high=None if st is None else st.amount,
                standing_bidders=st.bidders if (st and self.visible) else None,
                min_next_bid=self.min_next(lid) if is_open else None,
                last_new_bids=self.last_counts[lid],
                saturation_factor=self.sf[lid] if hamr else None,
                tsf=self.config.tsf_for(lid) if hamr else None,
            )
        closed = {
            lid: ClosedResult(lid, w is not None, p, w if self.visible else None)
            for lid, (w, p) in self.closed.items()
        }
        return PublicView(
            mechanism=self.config.kind.value,
            round_index=round_index,
            cycle_index=cycle_index,
            biddable=tuple(biddable),
            licenses=lviews,
            catalog=self.licenses,
            events=tuple(self.public_events),
            closed=closed,
            identities_visible=self.visible,
        )

    # -- bidding -------------------------------------------------------

    def solicit(self, round_index, cycle_index, biddable, eligibility=False, cycle_bids=None):
        """Collect and validate one simultaneous batch of bids."""
        view = self.view(round_index, cycle_index, biddable)
        accepted = defaultdict(list)
        rejected = []
        new_by_bidder = defaultdict(set)
        for bidder_id, policy in self.agents.items():
            private = self.private(bidder_id)
            intents = policy.decide(view, private) or {}
            bidder = self.bidders[bidder_id]
            spent = 0
            held = self.holdings(bidder_id)
            committed = self.committed(bidder_id)
            for lid, amount in intents.items():
                if lid not in self.licenses:
                    raise ConfigurationError(f"{policy!r} bid on unknown license {lid!r}")
                amount = int(amount)
                reason = None
                new = new_by_bidder[bidder_id]
                if lid in self.closed:
                    reason = "license closed"
                elif lid not in biddable:
                    reason = "license not open for bidding now"
                elif amount < self.min_next(lid):
                    reason = "below minimum increment"
                elif bidder.budget is not None and committed + spent + credit_adjusted_payment(amount, bidder) > bidder.budget:
                    reason = "exceeds budget"
                elif not self._cap_ok(bidder_id, held | new | {lid}):
                    reason = "exceeds bandwidth cap"
                elif eligibility:
                    active = held | new | {lid} | set(cycle_bids.get(bidder_id, ()) if cycle_bids else ())
                    active &= set(self.open)
                    if sum(self.licenses[x].activity_weight for x in active) > self.eligibility[bidder_id] + _EPS:
                        reason = "exceeds eligibility"
                if reason:
                    rejected.append(RejectedBid(bidder_id, lid, amount, reason))
                    continue
                new.add(lid)
                spent += credit_adjusted_payment(amount, bidder)
                accepted[lid].append((amount, bidder_id))
        return accepted, rejected, new_by_bidder

    def _cap_ok(self, bidder_id, lids) -> bool:
        cap = self.bidders[bidder_id].bandwidth_cap_mhz
        if cap is None:
            return True
        used = defaultdict(float)
        won = {lid for lid, (w, _) in self.closed.items() if w == bidder_id}
        for lid in set(lids) | won:
            used[self.licenses[lid].region_id] += self.licenses[lid].bandwidth_mhz
        return all(v <= cap + _EPS for v in used.values())

    def apply(self, accepted, round_index, biddable) -> bool:
        """Post accepted bids; returns True if some existing standing bid was raised."""
        raised = False
        for lid in biddable:
            self.last_counts[lid] = len(accepted.get(lid, ()))
        for lid, bids in accepted.items():
            for amount, bidder_id in sorted(bids, key=lambda t: (t[1], t[0])):
                self.events.append(BidEvent(round_index, lid, amount, bidder_id))
                self.public_events.append(BidEvent(round_index, lid, amount, bidder_id if self.visible else None))
                self.own_bids[bidder_id].append(BidEvent(round_index, lid, amount, bidder_id))
            top = max(a for a, _ in bids)
            tied = tuple(sorted(b for a, b in bids if a == top))
            if self.standing[lid] is not None:
                raised = True
            self.standing[lid] = _Standing(top, tied, round_index)
        if raised:
            self.raise_rounds += 1
        return raised

    def close(self, lid, cycle=0, position=0) -> ClosingEvent:
        st = self.standing[lid]
        if st is None:
            winner, price = None, None
        else:
            winner = resolve_tie(st.bidders, lid, st.round_index, self.seed)
            if len(st.bidders) > 1:
                self.tie_breaks.append(TieBreak(lid, st.round_index, st.bidders, winner))
            price = st.amount
        self.closed[lid] = (winner, price)
        self.open.remove(lid)
        event = ClosingEvent(lid, cycle, position, winner, price)
        self.closings.append(event)
        return event

    # -- records -------------------------------------------------------

    def license_states(self):
        hamr = self.config.kind is Mechanism.HAMR
        states = {}
        for lid in self.licenses:
            st = self.standing[lid]
            shown = None
            if st is not None and self.visible:
                shown = (self.closed[lid][0],) if lid in self.closed else st.bidders
            states[lid] = LicenseRoundState(
                standing_high=None if st is None else st.amount,
                standing_bidders=shown,
                new_bid_count=self.last_counts[lid],
                is_open=lid not in self.closed,
                saturation_factor=self.sf[lid] if hamr else None,
            )
        return states

    def update_eligibility(self, period, new_by_bidder, start_holdings, restrict_to_open=False):
        """Activity counts standing highs held when the period opened plus new bids."""
        frac = self.config.activity_fraction(period)
        satisfied = {}
        pool = set(self.open) if restrict_to_open else set(self.licenses)
        open_weight = sum(self.licenses[x].activity_weight for x in pool)
        for bidder_id in self.bidders:
            active = (start_holdings[bidder_id] | new_by_bidder.get(bidder_id, set())) & pool
            units = sum(self.licenses[x].activity_weight for x in active)
            elig = self.eligibility[bidder_id]
            base = min(elig, open_weight) if restrict_to_open else elig
            ok = units >= frac * base - _EPS
            satisfied[bidder_id] = ok
            if not ok:
                self.eligibility[bidder_id] = min(elig, units / frac)
        return satisfied

    def outcome(self, rounds_elapsed) -> AuctionOutcome:
        allocation, prices = {}, {}
        payments = {b: 0 for b in self.bidders}
        for lid in self.licenses:
            winner, price = self.closed[lid]
            allocation[lid] = winner
            prices[lid] = price
            if winner is not None:
                payments[winner] += credit_adjusted_payment(price, self.bidders[winner])
        return AuctionOutcome(
            mechanism=self.config.kind.value,
            seed=self.seed,
            allocation=allocation,
            gross_prices=prices,
            payments=payments,
            rounds_elapsed=rounds_elapsed,
            raise_rounds=self.raise_rounds,
            history=tuple(self.history),
            tie_breaks=tuple(self.tie_breaks),
            closings=tuple(self.closings),
        )


def _check_limit(count, config):
    if count > config.max_rounds:
        raise EngineError(f"round limit of {config.max_rounds} exceeded")


def _fixed_order(book: _Book) -> list:
    order = list(book.config.ordering.order) if book.config.ordering else []
    if not order:
        return list(book.licenses)
    if sorted(order) != sorted(book.licenses):
        raise ConfigurationError("FIXED ordering must be a permutation of all license ids")
    return order


def run_sequential_amr(scenario, agents, config: MechanismConfig, seed: Optional[int] = None) -> AuctionOutcome:
    """One ascending auction per license, in order; each ends after a quiet round.

    Agents see the results of every license already closed.  A RANDOM
    ordering draws a single seeded permutation up front.
    """
    config = config.with_(kind=Mechanism.SEQ_AMR)
    seed = _seed(scenario, config, seed)
    book = _Book(scenario, agents, config, seed)
    if config.ordering is not None and config.ordering.kind == "RANDOM_PER_CYCLE":
        order = cycle_order(list(book.licenses), 0, seed)
    else:
        order = _fixed_order(book)
    rnd = 0
    for lid in order:
        while True:
            rnd += 1
            _check_limit(rnd, config)
            accepted, rejected, _ = book.solicit(rnd, 0, (lid,))
            book.apply(accepted, rnd, (lid,))
            closings = ()
            if not accepted:
                closings = (book.close(lid, rnd, 0),)
            book.history.append(RoundRecord(rnd, book.license_states(), rejected=tuple(rejected),
                                            closings=closings, current_license=lid))
            if not accepted:
                break
    return book.outcome(rnd)


def run_samr(scenario, agents, config: MechanismConfig, seed: Optional[int] = None) -> AuctionOutcome:
    """All licenses open together; the auction ends after the first round with no new bid."""
    config = config.with_(kind=Mechanism.SAMR)
    if not config.activity_phases:
        raise ConfigurationError("SAMR needs at least one activity phase")
    seed = _seed(scenario, config, seed)
    book = _Book(scenario, agents, config, seed)
    rnd = 0
    while True:
        rnd += 1
        _check_limit(rnd, config)
        biddable = tuple(book.open)
        start = {b: book.holdings(b) for b in book.bidders}
        accepted, rejected, new_by_bidder = book.solicit(rnd, 0, biddable, eligibility=True)
        book.apply(accepted, rnd, biddable)
        satisfied = book.update_eligibility(rnd, new_by_bidder, start)
        closings = ()
        if not accepted:
            closings = tuple(book.close(lid, rnd, pos) for pos, lid in enumerate(list(book.open)))
        book.history.append(RoundRecord(rnd, book.license_states(), dict(book.eligibility), satisfied,
                                        tuple(rejected), closings))
        if not accepted:
            return book.outcome(rnd)


def run_hamr(scenario, agents, config: MechanismConfig, seed: Optional[int] = None) -> AuctionOutcome:
    """Hybrid auction: per-cycle sequential visits with saturation-factor closing.

    In each cycle the open licenses are visited one at a time.  At a visit
    every agent may bid on that license alone, seeing all bids placed
    earlier in the cycle.  A visit with no new bid raises the license's
    saturation factor by one (it never resets); the license closes as
    soon as the factor reaches its threshold.
    """
    config = config.with_(kind=Mechanism.HAMR)
    seed = _seed(scenario, config, seed)
    book = _Book(scenario, agents, config, seed)
    random_order = config.ordering is None or config.ordering.kind == "RANDOM_PER_CYCLE"
    fixed = None if random_order else _fixed_order(book)
    cycle = 0
    while book.open:
        cycle += 1
        _check_limit(cycle, config)
        if random_order:
            order = cycle_order(list(book.open), cycle, seed)
        else:
            order = [lid for lid in fixed if lid in book.open]
        cycle_bids = defaultdict(set)
        start = {b: book.holdings(b) for b in book.bidders}
        rejected_all, closings = [], []
        for pos, lid in enumerate(order):
            accepted, rejected, new_by_bidder = book.solicit(cycle, cycle, (lid,), eligibility=True,
                                                             cycle_bids=cycle_bids)
            rejected_all.extend(rejected)
            for b, lids in new_by_bidder.items():
                cycle_bids[b] |= lids
            book.apply(accepted, cycle, (lid,))
            if not accepted:
                book.sf[lid] += 1
                if book.sf[lid] >= config.tsf_for(lid):
                    closings.append(book.close(lid, cycle, pos))
        satisfied = book.update_eligibility(cycle, cycle_bids, start, restrict_to_open=True)
        book.history.append(RoundRecord(cycle, book.license_states(), dict(book.eligibility), satisfied,
                                        tuple(rejected_all), tuple(closings), tuple(order)))
    return book.outcome(cycle)


def _seed(scenario, config, seed):
    if seed is not None:
        return int(seed)
    if config.tie_break_seed is not None:
        return int(config.tie_break_seed)
    return int(getattr(scenario, "seed", 0) or 0)
