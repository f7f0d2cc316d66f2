"""Domain types: licenses, bidders, valuations, bids and outcomes.

Money is always an ``int`` count of minor units (paise, cents).  A
scenario's ``money_scale`` says how many minor units make one major unit
and is used only for display.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import ConfigurationError

Money = int


def round_half_up(x: Fraction | Decimal | float) -> int:
    """Round to the nearest integer, halves away from zero for x >= 0."""
    d = Decimal(x.numerator) / Decimal(x.denominator) if isinstance(x, Fraction) else Decimal(str(x))
    return int(d.quantize(Decimal(1), rounding=ROUND_HALF_UP))


def scale_money(amount: float, fraction: float) -> Money:
    """``amount * fraction`` rounded half-up to a whole minor unit."""
    return round_half_up(Fraction(amount) * Fraction(str(fraction)))


def format_money(amount: Optional[Money], scale: int = 1) -> str:
    """Render minor units as a major-unit string without trailing zeros."""
    if amount is None:
        return ""
    value = Decimal(amount) / Decimal(scale)
    text = format(value.normalize(), "f")
    return text


@dataclass(frozen=True)
class License:
    id: str
    bandwidth_mhz: float
    population: int = 0
    area: float = 0.0
    reserve_price: Money = 0
    activity_weight: float = 1.0
    region_id: str = "R0"

    def __post_init__(self):
        if not self.bandwidth_mhz > 0:
            raise ConfigurationError(f"license {self.id!r}: bandwidth_mhz must be > 0")
        if not self.activity_weight > 0:
            raise ConfigurationError(f"license {self.id!r}: activity_weight must be > 0")
        if self.reserve_price < 0:
            raise ConfigurationError(f"license {self.id!r}: reserve_price must be >= 0")
        if self.population < 0 or self.area < 0:
            raise ConfigurationError(f"license {self.id!r}: population and area must be >= 0")


@dataclass(frozen=True)
class Bidder:
    id: str
    budget: Optional[Money] = None  # None = unbounded
    designated: bool = False
    credit_fraction: float = 0.0
    bandwidth_cap_mhz: Optional[float] = None  # per region; None = unbounded
    initial_eligibility: Optional[float] = None  # None = total activity weight

    def __post_init__(self):
        if not 0.0 <= self.credit_fraction < 1.0:
            raise ConfigurationError(f"bidder {self.id!r}: credit_fraction must lie in [0, 1)")
        if self.credit_fraction and not self.designated:
            raise ConfigurationError(f"bidder {self.id!r}: credit_fraction requires designated=true")
        if self.budget is not None and self.budget < 0:
            raise ConfigurationError(f"bidder {self.id!r}: budget must be >= 0")
        if self.bandwidth_cap_mhz is not None and not self.bandwidth_cap_mhz > 0:
            raise ConfigurationError(f"bidder {self.id!r}: bandwidth_cap_mhz must be > 0")


@dataclass(frozen=True, eq=False)
class ValuationProfile:
    """Additive base values plus signed adjustments on license sets.

    ``value(S) = sum(base[l] for l in S) + sum(adj[T] for T subset of S)``.
    Positive adjustments express complements, negative ones substitutes.
    """

    bidder_id: str
    base_values: Mapping[str, Money] = field(default_factory=dict)
    bundle_adjustments: Mapping[frozenset, Money] = field(default_factory=dict)
    universe: frozenset = frozenset()  # scenario license ids; empty skips the check

    def __post_init__(self):
        adjustments = {frozenset(k): int(v) for k, v in self.bundle_adjustments.items()}
        for key in adjustments:
            if len(key) < 2:
                raise ConfigurationError(
                    f"valuation {self.bidder_id!r}: bundle adjustment needs >= 2 licenses, got {sorted(key)}"
                )
        for lid, v in self.base_values.items():
            if v < 0:
                raise ConfigurationError(f"valuation {self.bidder_id!r}: base value of {lid!r} is negative")
        object.__setattr__(self, "base_values", dict(self.base_values))
        object.__setattr__(self, "bundle_adjustments", adjustments)
        object.__setattr__(self, "universe", frozenset(self.universe))
        if self.universe:
            referenced = set(self.base_values).union(*adjustments) if adjustments else set(self.base_values)
            unknown = referenced - self.universe
            if unknown:
                raise ConfigurationError(
                    f"valuation {self.bidder_id!r}: unknown license id(s) {sorted(unknown)}"
                )
        object.__setattr__(self, "_cache", {})

    def value(self, bundle: Iterable[str]) -> Money:
        key = frozenset(bundle)
        cache = self._cache
        if key in cache:
            return cache[key]
        if self.universe and not key <= self.universe:
            raise ConfigurationError(f"unknown license id(s) {sorted(key - self.universe)}")
        total = sum(self.base_values.get(lid, 0) for lid in key)
        for subset, adj in self.bundle_adjustments.items():
            if subset <= key:
                total += adj
        cache[key] = total
        return total

    def marginal(self, license_id: str, holdings: Iterable[str]) -> Money:
        """Value added by ``license_id`` on top of ``holdings``."""
        held = frozenset(holdings) - {license_id}
        return self.value(held | {license_id}) - self.value(held)

    def __eq__(self, other):
        if not isinstance(other, ValuationProfile):
            return NotImplemented
        return (
            self.bidder_id == other.bidder_id
            and self.base_values == other.base_values
            and self.bundle_adjustments == other.bundle_adjustments
        )

    def __hash__(self):
        return hash((self.bidder_id, tuple(sorted(self.base_values.items()))))


def unit_demand_profile(bidder_id: str, license_ids: Iterable[str], value: Money, universe=frozenset()) -> ValuationProfile:
    """Profile worth ``value`` for any non-empty subset of ``license_ids``.

    Built by Moebius inversion: every subset T with |T| >= 2 gets the
    adjustment ``value * (-1) ** (|T| + 1)``.
    """
    from itertools import combinations

    ids = sorted(license_ids)
    adjustments = {}
    for size in range(2, len(ids) + 1):
        sign = 1 if size % 2 else -1
        for combo in combinations(ids, size):
            adjustments[frozenset(combo)] = sign * value
    return ValuationProfile(bidder_id, {lid: value for lid in ids}, adjustments, universe)


@dataclass(frozen=True)
class Bid:
    bidder_id: str
    license_id: str
    amount: Money
    round_index: int = 0
    cycle_index: int = 0


@dataclass(frozen=True)
class TieBreak:
    license_id: str
    round_index: int
    candidates: tuple
    winner: str


@dataclass(frozen=True)
class LicenseRoundState:
    standing_high: Optional[Money]
    standing_bidders: Optional[tuple]  # None when identities are hidden
    new_bid_count: int
    is_open: bool = True
    saturation_factor: Optional[int] = None
    second_bid: Optional[Money] = None  # sealed mechanisms only


@dataclass(frozen=True)
class RejectedBid:
    bidder_id: str
    license_id: str
    amount: Money
    reason: str


@dataclass(frozen=True)
class ClosingEvent:
    license_id: str
    cycle: int
    position: int
    winner: Optional[str]
    price: Optional[Money]


@dataclass(frozen=True)
class RoundRecord:
    round_index: int
    licenses: Mapping[str, LicenseRoundState]
    eligibility: Mapping[str, float] = field(default_factory=dict)
    activity_satisfied: Mapping[str, bool] = field(default_factory=dict)
    rejected: tuple = ()
    closings: tuple = ()
    visit_order: tuple = ()  # HAMR only
    current_license: Optional[str] = None  # sequential only


@dataclass(frozen=True)
class AuctionOutcome:
    mechanism: str
    seed: int
    allocation: Mapping[str, Optional[str]]
    gross_prices: Mapping[str, Optional[Money]]
    payments: Mapping[str, Money]
    rounds_elapsed: int
    raise_rounds: int = 0
    history: tuple = ()
    tie_breaks: tuple = ()
    closings: tuple = ()

    def won_by(self, bidder_id: str) -> frozenset:
        return frozenset(lid for lid, b in self.allocation.items() if b == bidder_id)


def license_size(license: License) -> float:
    """License size in MHz-pop (bandwidth times covered population)."""
    return license.bandwidth_mhz * license.population


def bundle_value(profile: ValuationProfile, bundle: Iterable[str]) -> Money:
    return profile.value(bundle)


def credit_adjusted_payment(gross: Money, bidder: Bidder) -> Money:
    """What a bidder actually pays for a gross price, after its bidder credit."""
    if gross < 0:
        raise ConfigurationError("gross price must be >= 0")
    if not bidder.credit_fraction:
        return gross
    return round_half_up(Fraction(gross) * (1 - Fraction(str(bidder.credit_fraction))))


def utility(outcome: AuctionOutcome, profile: ValuationProfile) -> Money:
    """Value of the bundle won minus the (credit-adjusted) payment."""
    bidder_id = profile.bidder_id
    return profile.value(outcome.won_by(bidder_id)) - outcome.payments.get(bidder_id, 0)
