"""Scenario type, built-in catalog and JSON loader."""

from .scenario import Scenario, StrategySpec
from .catalog import CATALOG, build_scenario, catalog_names, fixture_outcome
from .io import SCHEMA_VERSION, OracleBoundWarning, dumps_scenario, load_scenario, save_scenario, scenario_from_dict, scenario_to_dict
