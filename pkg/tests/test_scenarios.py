import json
import warnings

import pytest

from spectra.errors import ScenarioError
from spectra.oracle import within_bounds
from spectra.scenarios import (
    CATALOG,
    OracleBoundWarning,
    build_scenario,
    catalog_names,
    dumps_scenario,
    load_scenario,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
)

MINIMAL = {
    "schema_version": 1,
    "name": "tiny",
    "licenses": [{"id": "L", "bandwidth_mhz": 5}],
    "bidders": [{"id": "b"}],
}


def test_catalog_entries_build_and_fit_oracle():
    assert set(catalog_names()) >= {
        "two_slot_complements", "threshold_problem", "increment_demo", "demand_reduction_pair",
        "vickrey_gap", "claim1_collusion", "five_license_entrant",
    }
    for name in catalog_names():
        s = build_scenario(name)
        assert within_bounds(len(s.licenses), len(s.bidders)), name


def test_catalog_numbers():
    inc = build_scenario("increment_demo")
    assert inc.licenses[0].reserve_price == 100 * inc.money_scale
    assert {b: p.value({"L"}) for b, p in inc.valuations.items()} == {"A": 15000, "B": 15900}
    assert len(build_scenario("two_slot_complements").bidders) == 3
    pair = build_scenario("two_slot_complements").valuations["A"]
    assert pair.value({"s1", "s2"}) == 30000 and pair.value({"s1"}) == 10000
    assert build_scenario("two_slot_complements", pair_value=200).valuations["A"].value({"s1", "s2"}) == 20000
    assert len(build_scenario("five_license_entrant", n_licenses=4).licenses) == 4
    for inc_ in (1, 10, 100):
        assert build_scenario("increment_demo", inc=inc_).mechanism.increment.amount == inc_ * 100


def test_unknown_scenario_lookup_error():
    with pytest.raises(LookupError, match="unknown scenario"):
        build_scenario("nope")


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_round_trip(name, tmp_path):
    s = build_scenario(name)
    path = tmp_path / f"{name}.json"
    save_scenario(s, path)
    assert load_scenario(path) == s
    assert load_scenario(dumps_scenario(s)) == s
    assert json.loads(path.read_text())["schema_version"] == 1


def test_minimal_document_loads():
    s = load_scenario(MINIMAL)
    assert s.license_ids == ("L",) and s.bidder_ids == ("b",)


def _doc(**changes):
    doc = json.loads(json.dumps(MINIMAL))
    doc.update(changes)
    return doc


@pytest.mark.parametrize(
    "changes, path, text",
    [
        (dict(licenses=[{"id": "L", "bandwidth_mhz": 5}, {"id": "L", "bandwidth_mhz": 5}]), "licenses[1].id", "'L'"),
        (dict(valuations={"b": {"bundle_adjustments": [{"licenses": ["L", "Q"], "adjustment": 5}]}}),
         "valuations.b", "Q"),
        (dict(licenses=[{"id": "L", "bandwidth_mhz": 5, "reserve_price": -1}]), "licenses[0]", "reserve"),
        (dict(licenses=[{"id": "L"}]), "licenses[0].bandwidth_mhz", "missing"),
        (dict(schema_version=7), "schema_version", "unsupported"),
        (dict(colour="red"), "colour", "unknown field"),
        (dict(mechanism={"kind": "DUTCH"}), "mechanism.kind", "DUTCH"),
        (dict(strategies={"b": {"policy": "Psychic"}}), "strategies", "Psychic"),
        (dict(valuations={"b": {"base_values": {"L": -4}}}), "valuations.b", "negative"),
        (dict(bidders=[{"id": "b", "budget": "lots"}]), "bidders[0].budget", "integer"),
    ],
)
def test_diagnostics_name_field_and_rule(changes, path, text):
    with pytest.raises(ScenarioError) as info:
        scenario_from_dict(_doc(**changes))
    assert info.value.path == path
    assert text in str(info.value)


def test_negative_bundle_value_rejected():
    doc = _doc(licenses=[{"id": "L", "bandwidth_mhz": 5}, {"id": "M", "bandwidth_mhz": 5}],
               valuations={"b": {"base_values": {"L": 1, "M": 1},
                                 "bundle_adjustments": [{"licenses": ["L", "M"], "adjustment": -5}]}})
    with pytest.raises(ScenarioError, match="negative value"):
        scenario_from_dict(doc)


def test_oracle_bound_is_only_a_warning():
    doc = _doc(licenses=[{"id": f"L{i}", "bandwidth_mhz": 1} for i in range(13)])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        s = scenario_from_dict(doc)
    assert not s.oracle_ok
    assert any(issubclass(w.category, OracleBoundWarning) for w in caught)


def test_bad_json_text():
    with pytest.raises(ScenarioError, match="invalid JSON"):
        load_scenario("{not json")


def test_to_dict_is_plain_json():
    json.dumps(scenario_to_dict(build_scenario("claim1_collusion")))
