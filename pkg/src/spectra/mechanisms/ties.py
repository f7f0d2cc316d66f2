"""Seeded, counter-based randomness for tie-breaks and visit orders.

Each draw builds a fresh Philox generator whose key is a hash of the
draw's context, so the result depends only on (seed, context) and not on
how many draws happened before it.
"""

from __future__ import annotations

import hashlib
from typing import Sequence

import numpy as np

from ..errors import EngineError


def _generator(*context) -> np.random.Generator:
    digest = hashlib.sha256(repr(context).encode()).digest()
    key = np.frombuffer(digest[:16], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def resolve_tie(candidates: Sequence[str], license_id: str, round_index: int, seed: int) -> str:
    """Uniform draw among tied bidders, keyed by (seed, license, round)."""
    if not candidates:
        raise EngineError("resolve_tie called with no candidates")
    ordered = sorted(candidates)
    if len(ordered) == 1:
        return ordered[0]
    rng = _generator("tie", int(seed), str(license_id), int(round_index))
    return ordered[int(rng.integers(len(ordered)))]


def cycle_order(license_ids: Sequence[str], cycle: int, seed: int) -> list:
    """Seeded random permutation of ``license_ids`` for one HAMR cycle."""
    ids = list(license_ids)
    rng = _generator("order", int(seed), int(cycle))
    return [ids[i] for i in rng.permutation(len(ids))]
