"""Exact welfare-maximizing allocation, used as ground truth for efficiency.

The search is exhaustive in effect: a dynamic program over bidders and
subsets of licenses visits every assignment of licenses to
(bidder | unsold).  Among maximizers the result is the lexicographic
maximum of the bidders' bundle-indicator vectors, taking bidders in id
order and licenses in id order, so earlier bidders take earlier
licenses whenever welfare permits.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import OracleBoundExceeded
from .model import License, Money, ValuationProfile

MAX_LICENSES = 12
MAX_BIDDERS = 8

_INFEASIBLE = np.iinfo(np.int64).min // 4


@dataclass(frozen=True)
class OracleResult:
    allocation: Mapping[str, Optional[str]]
    welfare: Money


def check_bounds(n_licenses: int, n_bidders: int) -> None:
    if n_licenses > MAX_LICENSES or n_bidders > MAX_BIDDERS:
        raise OracleBoundExceeded(
            f"oracle bound exceeded: {n_licenses} licenses / {n_bidders} bidders "
            f"(limit {MAX_LICENSES} / {MAX_BIDDERS})"
        )


def within_bounds(n_licenses: int, n_bidders: int) -> bool:
    return n_licenses <= MAX_LICENSES and n_bidders <= MAX_BIDDERS


def _bundle_table(profile: ValuationProfile, ids: Sequence[str], licenses: Mapping[str, License], cap) -> np.ndarray:
    # bit (L - 1 - i) <-> ids[i], so a larger mask is a lexicographically larger indicator vector
    n = len(ids)
    size = 1 << n
    table = np.empty(size, dtype=np.int64)
    for mask in range(size):
        bundle = [ids[i] for i in range(n) if mask >> (n - 1 - i) & 1]
        if cap is not None:
            used = defaultdict(float)
            for lid in bundle:
                used[licenses[lid].region_id] += licenses[lid].bandwidth_mhz
            if any(v > cap + 1e-9 for v in used.values()):
                table[mask] = _INFEASIBLE
                continue
        table[mask] = profile.value(bundle)
    return table


def optimal_allocation(
    licenses: Sequence[License],
    profiles: Mapping[str, ValuationProfile],
    caps: Optional[Mapping[str, Optional[float]]] = None,
) -> OracleResult:
    """Maximize total bundle value over all assignments of licenses.

    ``caps`` maps bidder id to a per-region bandwidth cap in MHz (or None).
    Unsold licenses contribute nothing.
    """
    check_bounds(len(licenses), len(profiles))
    caps = caps or {}
    by_id = {lic.id: lic for lic in licenses}
    ids = sorted(by_id)
    bidders = sorted(profiles)
    n = len(ids)
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)

    tables = [_bundle_table(profiles[b], ids, by_id, caps.get(b)) for b in bidders]
    # best[k][m]: max welfare from assigning licenses in m among bidders k..end
    best = [None] * (len(bidders) + 1)
    best[len(bidders)] = np.zeros(size, dtype=np.int64)
    for k in range(len(bidders) - 1, -1, -1):
        nxt = best[k + 1]
        cur = nxt.copy()  # bidder k takes nothing
        table = tables[k]
        for sub in range(1, size):
            if table[sub] == _INFEASIBLE:
                continue
            sel = masks[(masks & sub) == sub]
            cand = table[sub] + nxt[sel ^ sub]
            cur[sel] = np.maximum(cur[sel], cand)
        best[k] = cur

    allocation = {lid: None for lid in ids}
    mask = size - 1
    for k, bidder in enumerate(bidders):
        target = best[k][mask]
        subs = masks[(masks & mask) == masks]
        ok = subs[(tables[k][subs] != _INFEASIBLE) & (tables[k][subs] + best[k + 1][mask ^ subs] == target)]
        choice = int(ok.max())
        for i in range(n):
            if choice >> (n - 1 - i) & 1:
                allocation[ids[i]] = bidder
        mask ^= choice
    return OracleResult(allocation, int(best[0][size - 1]))
