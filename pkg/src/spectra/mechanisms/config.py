"""Mechanism configuration and the minimum-increment rule."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional

from ..errors import ConfigurationError
from ..model import License, Money

MAX_ROUNDS = 10**6
ACTIVITY_CLAMP = (1, 4)


class Mechanism(str, Enum):
    FPSB = "FPSB"
    VICKREY = "VICKREY"
    SEQ_AMR = "SEQ_AMR"
    SAMR = "SAMR"
    HAMR = "HAMR"

    @property
    def sealed(self) -> bool:
        return self in (Mechanism.FPSB, Mechanism.VICKREY)


class Disclosure(str, Enum):
    BIDS_ONLY = "BIDS_ONLY"
    BIDS_AND_IDENTITIES = "BIDS_AND_IDENTITIES"


@dataclass(frozen=True)
class IncrementSchedule:
    mode: str = "ABSOLUTE"  # ABSOLUTE | PERCENT | ACTIVITY_SCALED
    amount: Money = 1
    fraction: float = 0.0

    def __post_init__(self):
        if self.mode not in ("ABSOLUTE", "PERCENT", "ACTIVITY_SCALED"):
            raise ConfigurationError(f"unknown increment mode {self.mode!r}")
        if self.mode == "ABSOLUTE" and self.amount <= 0:
            raise ConfigurationError("absolute increment must be > 0")
        if self.mode != "ABSOLUTE" and not self.fraction > 0:
            raise ConfigurationError(f"{self.mode} increment needs a fraction > 0")

    @classmethod
    def absolute(cls, amount: Money) -> "IncrementSchedule":
        return cls("ABSOLUTE", amount=int(amount))

    @classmethod
    def percent(cls, fraction: float) -> "IncrementSchedule":
        return cls("PERCENT", fraction=fraction)

    @classmethod
    def activity_scaled(cls, base_fraction: float) -> "IncrementSchedule":
        return cls("ACTIVITY_SCALED", fraction=base_fraction)


@dataclass(frozen=True)
class Ordering:
    kind: str = "FIXED"  # FIXED | RANDOM_PER_CYCLE
    order: tuple = ()  # empty FIXED order means scenario license order

    def __post_init__(self):
        if self.kind not in ("FIXED", "RANDOM_PER_CYCLE"):
            raise ConfigurationError(f"unknown ordering policy {self.kind!r}")
        object.__setattr__(self, "order", tuple(self.order))


DEFAULT_PHASES = ((1, 0.33), (10, 0.67), (20, 1.0))


@dataclass(frozen=True)
class MechanismConfig:
    kind: Mechanism = Mechanism.SAMR
    increment: IncrementSchedule = field(default_factory=IncrementSchedule)
    activity_phases: tuple = DEFAULT_PHASES
    tsf: Mapping[str, int] = field(default_factory=dict)
    default_tsf: int = 2
    ordering: Optional[Ordering] = None  # None: RANDOM_PER_CYCLE for HAMR, FIXED otherwise
    disclosure: Disclosure = Disclosure.BIDS_ONLY
    tie_break_seed: Optional[int] = None
    max_rounds: int = MAX_ROUNDS

    def __post_init__(self):
        object.__setattr__(self, "kind", Mechanism(self.kind))
        object.__setattr__(self, "disclosure", Disclosure(self.disclosure))
        phases = tuple((int(r), float(f)) for r, f in self.activity_phases)
        object.__setattr__(self, "activity_phases", phases)
        object.__setattr__(self, "tsf", dict(self.tsf))
        for _, frac in phases:
            if not 0 < frac <= 1:
                raise ConfigurationError(f"activity fraction {frac} outside (0, 1]")
        fracs = [f for _, f in phases]
        if fracs != sorted(fracs):
            raise ConfigurationError("activity phase fractions must be non-decreasing")
        thresholds = [r for r, _ in phases]
        if thresholds != sorted(thresholds):
            raise ConfigurationError("activity phase round thresholds must be increasing")
        for lid, t in self.tsf.items():
            if int(t) < 1:
                raise ConfigurationError(f"tsf for {lid!r} must be >= 1")
        if self.default_tsf < 1:
            raise ConfigurationError("default_tsf must be >= 1")

    def with_(self, **changes) -> "MechanismConfig":
        return replace(self, **changes)

    def tsf_for(self, license_id: str) -> int:
        return int(self.tsf.get(license_id, self.default_tsf))

    def activity_fraction(self, round_index: int) -> float:
        """Required activity fraction in force at ``round_index`` (1-based)."""
        current = self.activity_phases[0][1] if self.activity_phases else 1.0
        for threshold, frac in self.activity_phases:
            if round_index >= threshold:
                current = frac
        return current


def required_activity(eligibility: float, fraction: float) -> float:
    """Units a bidder must be active on to keep its eligibility."""
    return eligibility * fraction


def compute_min_increment(
    license: License,
    standing_high: Optional[Money],
    schedule: IncrementSchedule,
    prev_new_bid_count: int = 0,
) -> Money:
    """Minimum raise over the standing high bid (reserve when none).

    Percentage modes round up to a whole minor unit and never fall below
    one minor unit.
    """
    if schedule.mode == "ABSOLUTE":
        return schedule.amount
    base = license.reserve_price if standing_high is None else standing_high
    frac = Fraction(str(schedule.fraction)) * base
    if schedule.mode == "ACTIVITY_SCALED":
        lo, hi = ACTIVITY_CLAMP
        frac *= min(max(prev_new_bid_count, lo), hi)
    return max(1, math.ceil(frac))


def min_next_bid(
    license: License,
    standing_high: Optional[Money],
    schedule: IncrementSchedule,
    prev_new_bid_count: int = 0,
) -> Money:
    """Lowest acceptable bid: the reserve to open, standing + increment after."""
    if standing_high is None:
        return license.reserve_price
    return standing_high + compute_min_increment(license, standing_high, schedule, prev_new_bid_count)
