"""JSON scenario documents: load with field-path diagnostics, save losslessly."""

from __future__ import annotations

import json
import os
import warnings
from pathlib import Path
from typing import Any, Mapping, Union

from ..errors import ConfigurationError, ScenarioError
from ..mechanisms.config import (
    DEFAULT_PHASES,
    MAX_ROUNDS,
    Disclosure,
    IncrementSchedule,
    Mechanism,
    MechanismConfig,
    Ordering,
)
from ..model import Bidder, License, ValuationProfile
from ..strategies.policies import CartelAgreement
from .scenario import Scenario, StrategySpec

SCHEMA_VERSION = 1


class OracleBoundWarning(UserWarning):
    """The scenario is too large for exact welfare; efficiency will be unavailable."""


# -- small typed accessors ------------------------------------------------


def _get(doc: Mapping, key: str, path: str, kind, required=False, default=None):
    if not isinstance(doc, Mapping):
        raise ScenarioError(path, "expected an object")
    if key not in doc or doc[key] is None:
        if required:
            raise ScenarioError(f"{path}.{key}" if path else key, "required field is missing")
        return default
    value = doc[key]
    where = f"{path}.{key}" if path else key
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ScenarioError(where, f"expected an integer, got {value!r}")
    if kind is float and (isinstance(value, bool) or not isinstance(value, (int, float))):
        raise ScenarioError(where, f"expected a number, got {value!r}")
    if kind is str and not isinstance(value, str):
        raise ScenarioError(where, f"expected a string, got {value!r}")
    if kind is bool and not isinstance(value, bool):
        raise ScenarioError(where, f"expected true/false, got {value!r}")
    if kind is list and not isinstance(value, list):
        raise ScenarioError(where, "expected an array")
    if kind is dict and not isinstance(value, Mapping):
        raise ScenarioError(where, "expected an object")
    return float(value) if kind is float else value


def _build(path: str, fn, *args, **kwargs):
    """Run a model constructor, re-raising its complaint at ``path``."""
    try:
        return fn(*args, **kwargs)
    except ScenarioError:
        raise
    except (ConfigurationError, ValueError, TypeError) as exc:
        raise ScenarioError(path, str(exc)) from None


def _unexpected(doc: Mapping, allowed, path: str):
    extra = sorted(set(doc) - set(allowed))
    if extra:
        raise ScenarioError(f"{path}.{extra[0]}" if path else extra[0], "unknown field")


# -- document -> objects --------------------------------------------------


def _license(doc, path) -> License:
    _unexpected(doc, ("id", "bandwidth_mhz", "population", "area", "reserve_price", "activity_weight", "region_id"),
                path)
    return _build(
        path, License,
        id=_get(doc, "id", path, str, required=True),
        bandwidth_mhz=_get(doc, "bandwidth_mhz", path, float, required=True),
        population=_get(doc, "population", path, int, default=0),
        area=_get(doc, "area", path, float, default=0.0),
        reserve_price=_get(doc, "reserve_price", path, int, default=0),
        activity_weight=_get(doc, "activity_weight", path, float, default=1.0),
        region_id=_get(doc, "region_id", path, str, default="R0"),
    )


def _bidder(doc, path) -> Bidder:
    _unexpected(doc, ("id", "budget", "designated", "credit_fraction", "bandwidth_cap_mhz", "initial_eligibility"),
                path)
    return _build(
        path, Bidder,
        id=_get(doc, "id", path, str, required=True),
        budget=_get(doc, "budget", path, int),
        designated=_get(doc, "designated", path, bool, default=False),
        credit_fraction=_get(doc, "credit_fraction", path, float, default=0.0),
        bandwidth_cap_mhz=_get(doc, "bandwidth_cap_mhz", path, float),
        initial_eligibility=_get(doc, "initial_eligibility", path, float),
    )


def _valuation(bidder_id, doc, path) -> ValuationProfile:
    _unexpected(doc, ("base_values", "bundle_adjustments"), path)
    base = _get(doc, "base_values", path, dict, default={})
    for lid, v in base.items():
        _get(base, lid, f"{path}.base_values", int)
    adjustments = {}
    for i, adj in enumerate(_get(doc, "bundle_adjustments", path, list, default=[])):
        where = f"{path}.bundle_adjustments[{i}]"
        _unexpected(adj, ("licenses", "adjustment"), where)
        lids = _get(adj, "licenses", where, list, required=True)
        key = frozenset(lids)
        if key in adjustments:
            raise ScenarioError(where, f"duplicate bundle {sorted(key)}")
        adjustments[key] = _get(adj, "adjustment", where, int, required=True)
    return _build(path, ValuationProfile, bidder_id, base, adjustments)


def _mechanism(doc, path) -> MechanismConfig:
    _unexpected(doc, ("kind", "increment", "activity_phases", "tsf", "default_tsf", "ordering", "disclosure",
                      "tie_break_seed", "max_rounds"), path)
    kind = _get(doc, "kind", path, str, required=True)
    if kind not in Mechanism.__members__:
        raise ScenarioError(f"{path}.kind", f"expected one of {sorted(Mechanism.__members__)}, got {kind!r}")
    inc_doc = _get(doc, "increment", path, dict, default={})
    ipath = f"{path}.increment"
    _unexpected(inc_doc, ("mode", "amount", "fraction"), ipath)
    increment = _build(
        ipath, IncrementSchedule,
        mode=_get(inc_doc, "mode", ipath, str, default="ABSOLUTE"),
        amount=_get(inc_doc, "amount", ipath, int, default=1),
        fraction=_get(inc_doc, "fraction", ipath, float, default=0.0),
    )
    phases = []
    for i, ph in enumerate(_get(doc, "activity_phases", path, list, default=[list(p) for p in DEFAULT_PHASES])):
        if not isinstance(ph, list) or len(ph) != 2:
            raise ScenarioError(f"{path}.activity_phases[{i}]", "expected [round_threshold, fraction]")
        phases.append(tuple(ph))
    tsf = _get(doc, "tsf", path, dict, default={})
    for lid in tsf:
        _get(tsf, lid, f"{path}.tsf", int)
    ordering = None
    ord_doc = _get(doc, "ordering", path, dict)
    if ord_doc is not None:
        opath = f"{path}.ordering"
        _unexpected(ord_doc, ("kind", "order"), opath)
        ordering = _build(opath, Ordering, _get(ord_doc, "kind", opath, str, required=True),
                          tuple(_get(ord_doc, "order", opath, list, default=[])))
    disclosure = _get(doc, "disclosure", path, str, default=Disclosure.BIDS_ONLY.value)
    if disclosure not in Disclosure.__members__:
        raise ScenarioError(f"{path}.disclosure", f"expected one of {sorted(Disclosure.__members__)}")
    return _build(
        path, MechanismConfig,
        kind=Mechanism(kind),
        increment=increment,
        activity_phases=tuple(phases),
        tsf=tsf,
        default_tsf=_get(doc, "default_tsf", path, int, default=2),
        ordering=ordering,
        disclosure=Disclosure(disclosure),
        tie_break_seed=_get(doc, "tie_break_seed", path, int),
        max_rounds=_get(doc, "max_rounds", path, int, default=MAX_ROUNDS),
    )


def _cartel(doc, path) -> CartelAgreement:
    _unexpected(doc, ("members", "designated_winner", "punishment", "markup_fraction"), path)
    return _build(
        path, CartelAgreement,
        members=frozenset(_get(doc, "members", path, list, required=True)),
        designated_winner=_get(doc, "designated_winner", path, dict, required=True),
        punishment=_get(doc, "punishment", path, str, default="NONE"),
        markup_fraction=_get(doc, "markup_fraction", path, float, default=0.0),
    )


_TOP = ("schema_version", "name", "description", "seed", "money_scale", "licenses", "bidders", "valuations",
        "mechanism", "strategies", "cartel")


def scenario_from_dict(doc: Mapping[str, Any]) -> Scenario:
    """Validate a parsed document and build the Scenario it describes.

    Raises :class:`ScenarioError` whose ``path`` points at the offending
    field.  Exceeding the oracle bounds is only a warning.
    """
    if not isinstance(doc, Mapping):
        raise ScenarioError("$", "a scenario document must be a JSON object")
    _unexpected(doc, _TOP, "")
    version = _get(doc, "schema_version", "", int, required=True)
    if version != SCHEMA_VERSION:
        raise ScenarioError("schema_version", f"unsupported version {version}; expected {SCHEMA_VERSION}")
    licenses = [_license(d, f"licenses[{i}]") for i, d in enumerate(_get(doc, "licenses", "", list, required=True))]
    bidders = [_bidder(d, f"bidders[{i}]") for i, d in enumerate(_get(doc, "bidders", "", list, required=True))]
    if not licenses:
        raise ScenarioError("licenses", "at least one license is required")
    if not bidders:
        raise ScenarioError("bidders", "at least one bidder is required")
    val_doc = _get(doc, "valuations", "", dict, default={})
    valuations = {b: _valuation(b, d, f"valuations.{b}") for b, d in val_doc.items()}
    mech_doc = _get(doc, "mechanism", "", dict)
    mechanism = _mechanism(mech_doc, "mechanism") if mech_doc is not None else MechanismConfig()
    strategies = {}
    for b, d in _get(doc, "strategies", "", dict, default={}).items():
        path = f"strategies.{b}"
        _unexpected(d, ("policy", "params"), path)
        strategies[b] = StrategySpec(_get(d, "policy", path, str, required=True),
                                     _get(d, "params", path, dict, default={}))
    cartel_doc = _get(doc, "cartel", "", dict)
    cartel = _cartel(cartel_doc, "cartel") if cartel_doc is not None else None
    scenario = _build(
        "$", Scenario,
        name=_get(doc, "name", "", str, required=True),
        licenses=licenses,
        bidders=bidders,
        valuations=valuations,
        mechanism=mechanism,
        strategy_assignments=strategies,
        seed=_get(doc, "seed", "", int, default=0),
        money_scale=_get(doc, "money_scale", "", int, default=1),
        cartel=cartel,
        description=_get(doc, "description", "", str, default=""),
    )
    # surface bad policy names or parameters at load time
    try:
        scenario.agents()
    except ConfigurationError as exc:
        raise ScenarioError("strategies", str(exc)) from None
    if not scenario.oracle_ok:
        warnings.warn(f"scenario {scenario.name!r} exceeds oracle bounds; efficiency will be unavailable",
                      OracleBoundWarning, stacklevel=2)
    return scenario


# -- objects -> document --------------------------------------------------


def scenario_to_dict(s: Scenario) -> dict:
    m = s.mechanism
    doc = {
        "schema_version": SCHEMA_VERSION,
        "name": s.name,
        "description": s.description,
        "seed": s.seed,
        "money_scale": s.money_scale,
        "licenses": [
            {"id": lic.id, "bandwidth_mhz": lic.bandwidth_mhz, "population": lic.population, "area": lic.area,
             "reserve_price": lic.reserve_price, "activity_weight": lic.activity_weight, "region_id": lic.region_id}
            for lic in s.licenses
        ],
        "bidders": [
            {"id": b.id, "budget": b.budget, "designated": b.designated, "credit_fraction": b.credit_fraction,
             "bandwidth_cap_mhz": b.bandwidth_cap_mhz, "initial_eligibility": b.initial_eligibility}
            for b in s.bidders
        ],
        "valuations": {
            b: {
                "base_values": dict(p.base_values),
                "bundle_adjustments": [
                    {"licenses": sorted(k), "adjustment": v}
                    for k, v in sorted(p.bundle_adjustments.items(), key=lambda kv: sorted(kv[0]))
                ],
            }
            for b, p in s.valuations.items()
        },
        "mechanism": {
            "kind": m.kind.value,
            "increment": {"mode": m.increment.mode, "amount": m.increment.amount, "fraction": m.increment.fraction},
            "activity_phases": [list(p) for p in m.activity_phases],
            "tsf": dict(m.tsf),
            "default_tsf": m.default_tsf,
            "ordering": None if m.ordering is None else {"kind": m.ordering.kind, "order": list(m.ordering.order)},
            "disclosure": m.disclosure.value,
            "tie_break_seed": m.tie_break_seed,
            "max_rounds": m.max_rounds,
        },
        "strategies": {b: {"policy": sp.policy, "params": dict(sp.params)} for b, sp in s.strategy_assignments.items()},
        "cartel": None,
    }
    if s.cartel is not None:
        c = s.cartel
        doc["cartel"] = {
            "members": sorted(c.members),
            "designated_winner": dict(c.designated_winner),
            "punishment": c.punishment,
            "markup_fraction": c.markup_fraction,
        }
    return doc


def dumps_scenario(s: Scenario) -> str:
    return json.dumps(scenario_to_dict(s), indent=2) + "\n"


def load_scenario(source: Union[str, os.PathLike, Mapping]) -> Scenario:
    """Load from a parsed mapping, a JSON string or a file path."""
    if isinstance(source, Mapping):
        return scenario_from_dict(source)
    text = str(source)
    if isinstance(source, os.PathLike) or not text.lstrip().startswith("{"):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ScenarioError("$", f"cannot read scenario file: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError("$", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return scenario_from_dict(doc)


def save_scenario(s: Scenario, path: Union[str, os.PathLike]) -> None:
    Path(path).write_text(dumps_scenario(s), encoding="utf-8")
