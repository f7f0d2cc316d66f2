"""Independent reference computations used to check the package."""

from collections import defaultdict
from fractions import Fraction

from scipy import integrate


def brute_force_welfare(licenses, profiles, caps=None):
    """Recursive enumeration of every license -> (bidder | unsold) assignment.

    Ties go to the assignment whose bidder-by-bidder license indicator
    vectors (bidders and licenses in id order) are lexicographically largest.
    """
    caps = caps or {}
    ids = sorted(lic.id for lic in licenses)
    by_id = {lic.id: lic for lic in licenses}
    bidders = sorted(profiles)
    options = bidders + [None]
    best = {"w": None, "key": None, "alloc": None}

    def feasible(b, bundle):
        cap = caps.get(b)
        if cap is None:
            return True
        used = defaultdict(float)
        for lid in bundle:
            used[by_id[lid].region_id] += by_id[lid].bandwidth_mhz
        return all(v <= cap + 1e-9 for v in used.values())

    def recurse(i, partial):
        if i == len(ids):
            bundles = {b: [lid for lid, w in partial.items() if w == b] for b in bidders}
            if not all(feasible(b, bundles[b]) for b in bidders):
                return
            w = sum(profiles[b].value(bundles[b]) for b in bidders)
            key = tuple(tuple(int(partial[lid] == b) for lid in ids) for b in bidders)
            if best["w"] is None or w > best["w"] or (w == best["w"] and key > best["key"]):
                best.update(w=w, key=key, alloc=dict(partial))
            return
        for o in options:
            partial[ids[i]] = o
            recurse(i + 1, partial)
        del partial[ids[i]]

    recurse(0, {})
    return best["alloc"], best["w"]


def expected_second_highest_uniform(n):
    """E[second-highest of n iid U(0,1)] by numeric integration."""
    density = lambda x: n * (n - 1) * x ** (n - 2) * (1 - x) * x
    return integrate.quad(density, 0.0, 1.0)[0]


def expected_fpsb_revenue_uniform(n):
    """E[(n-1)/n * max of n iid U(0,1)] by numeric integration."""
    density = lambda x: n * x ** (n - 1) * x
    return (n - 1) / n * integrate.quad(density, 0.0, 1.0)[0]


def credit_payment_reference(gross_minor, credit):
    """Half-up rounding done with exact rationals."""
    exact = Fraction(gross_minor) * (1 - Fraction(str(credit)))
    floor = exact.numerator // exact.denominator
    return floor + (1 if exact - floor >= Fraction(1, 2) else 0)
