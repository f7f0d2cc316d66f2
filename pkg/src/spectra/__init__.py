"""Deterministic simulation of spectrum-license auctions."""

from .errors import (
    ConfigurationError,
    EngineError,
    InputError,
    OracleBoundExceeded,
    ScenarioError,
    SpectraError,
)
from .model import (
    AuctionOutcome,
    Bid,
    Bidder,
    License,
    RoundRecord,
    ValuationProfile,
    bundle_value,
    credit_adjusted_payment,
    license_size,
    unit_demand_profile,
    utility,
)
from .oracle import optimal_allocation
from .simulate import run

__version__ = "0.1.0"
