import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectra import License, OracleBoundExceeded, ValuationProfile, optimal_allocation, unit_demand_profile

from oracles import brute_force_welfare


def _profiles_two_slot(pair_bonus):
    return {
        "A": ValuationProfile("A", {"s1": 100, "s2": 100}, {frozenset({"s1", "s2"}): pair_bonus}),
        "B": unit_demand_profile("B", ["s1", "s2"], 150),
        "C": unit_demand_profile("C", ["s1", "s2"], 100 if pair_bonus == 0 else 150),
    }


SLOTS = [License("s1", 10.0), License("s2", 10.0)]


def test_pair_300_tie_goes_to_a():
    res = optimal_allocation(SLOTS, _profiles_two_slot(100))
    assert res.welfare == 300
    assert res.allocation == {"s1": "A", "s2": "A"}


def test_threshold_values_welfare_250():
    profiles = _profiles_two_slot(0)
    res = optimal_allocation(SLOTS, profiles)
    assert res.welfare == 250
    # B+C reaches the optimum; with A's singles at 100, A+B ties it and the tie rule picks A first
    assert profiles["B"].value({"s1"}) + profiles["C"].value({"s2"}) == res.welfare
    assert res.allocation == {"s1": "A", "s2": "B"}


def test_threshold_pure_package_gives_b_and_c():
    profiles = _profiles_two_slot(0)
    profiles["A"] = ValuationProfile("A", {}, {frozenset({"s1", "s2"}): 200})
    res = optimal_allocation(SLOTS, profiles)
    assert res.welfare == 250
    assert sorted(res.allocation.values()) == ["B", "C"]


def test_singleton():
    res = optimal_allocation([License("x", 1.0)], {"b": ValuationProfile("b", {"x": 7})})
    assert res.allocation == {"x": "b"} and res.welfare == 7


def test_bound_exceeded_is_explicit():
    lics = [License(f"l{i}", 1.0) for i in range(13)]
    with pytest.raises(OracleBoundExceeded, match="oracle bound exceeded"):
        optimal_allocation(lics, {"b": ValuationProfile("b")})
    with pytest.raises(OracleBoundExceeded):
        optimal_allocation(lics[:2], {f"b{i}": ValuationProfile(f"b{i}") for i in range(9)})


def test_caps_respected():
    lics = [License("a", 30.0), License("b", 30.0)]
    prof = {"X": ValuationProfile("X", {"a": 100, "b": 100}), "Y": ValuationProfile("Y", {"a": 1, "b": 1})}
    res = optimal_allocation(lics, prof, {"X": 45.0})
    assert res.welfare == 101
    assert sorted(res.allocation.values()) == ["X", "Y"]


def random_instance(rng, max_l=3, max_b=3):
    n_l = int(rng.integers(1, max_l + 1))
    n_b = int(rng.integers(1, max_b + 1))
    ids = [f"L{i}" for i in range(n_l)]
    lics = [License(lid, float(rng.choice([10.0, 20.0])), region_id=str(rng.choice(["R0", "R1"]))) for lid in ids]
    profiles, caps = {}, {}
    for j in range(n_b):
        base = {lid: int(rng.integers(0, 6)) * 10 for lid in ids}
        adj = {}
        if n_l >= 2 and rng.random() < 0.6:
            pair = frozenset(rng.choice(ids, size=2, replace=False).tolist())
            adj[pair] = int(rng.integers(-1, 4)) * 10
            if min(base[x] for x in pair) + adj[pair] < 0:
                adj[pair] = 0
        profiles[f"B{j}"] = ValuationProfile(f"B{j}", base, adj)
        caps[f"B{j}"] = None if rng.random() < 0.7 else 25.0
    return lics, profiles, caps


def test_two_oracle_agreement_random():
    rng = np.random.default_rng(2024)
    for _ in range(300):
        lics, profiles, caps = random_instance(rng)
        res = optimal_allocation(lics, profiles, caps)
        alloc, welfare = brute_force_welfare(lics, profiles, caps)
        assert res.welfare == welfare
        assert res.allocation == alloc


@given(st.lists(st.integers(0, 5), min_size=1, max_size=9))
def test_welfare_at_least_best_single_bidder(values):
    lics = [License("x", 1.0)]
    profiles = {f"b{i}": ValuationProfile(f"b{i}", {"x": v}) for i, v in enumerate(values[:8])}
    assert optimal_allocation(lics, profiles).welfare == max(values[:8])
