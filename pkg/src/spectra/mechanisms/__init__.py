"""Auction engines: FPSB, Vickrey, sequential AMR, SAMR and HAMR."""

from .ascending import run_hamr, run_samr, run_sequential_amr
from .config import (
    Disclosure,
    IncrementSchedule,
    Mechanism,
    MechanismConfig,
    Ordering,
    compute_min_increment,
    min_next_bid,
    required_activity,
)
from .sealed import collect_sealed_bids, run_fpsb, run_vickrey
from .ties import cycle_order, resolve_tie

__all__ = [
    "Disclosure", "IncrementSchedule", "Mechanism", "MechanismConfig", "Ordering",
    "collect_sealed_bids", "compute_min_increment", "cycle_order", "min_next_bid",
    "required_activity", "resolve_tie", "run_fpsb", "run_hamr", "run_samr",
    "run_sequential_amr", "run_vickrey",
]
