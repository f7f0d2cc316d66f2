"""One entry point that runs any mechanism on a scenario."""

from __future__ import annotations

from typing import Mapping, Optional

from .mechanisms.ascending import run_hamr, run_samr, run_sequential_amr
from .mechanisms.config import Mechanism, MechanismConfig
from .mechanisms.sealed import collect_sealed_bids, run_fpsb, run_vickrey
from .model import AuctionOutcome
from .strategies.base import Policy


def run(
    scenario,
    mechanism: Optional[Mechanism | str] = None,
    config: Optional[MechanismConfig] = None,
    agents: Optional[Mapping[str, Policy]] = None,
    seed: Optional[int] = None,
) -> AuctionOutcome:
    """Run ``scenario`` under its own mechanism config, or an override.

    ``agents`` defaults to fresh policies from the scenario's strategy
    assignments; missing bidders are filled in the same way.
    """
    config = config or scenario.mechanism
    if mechanism is not None:
        config = config.with_(kind=Mechanism(mechanism))
    if seed is None:
        seed = scenario.seed if config.tie_break_seed is None else config.tie_break_seed
    agents = scenario.agents(agents)
    kind = config.kind
    if kind.sealed:
        bids = collect_sealed_bids(scenario, agents)
        engine = run_fpsb if kind is Mechanism.FPSB else run_vickrey
        return engine(scenario, bids, seed=seed, disclosure=config.disclosure)
    engine = {Mechanism.SEQ_AMR: run_sequential_amr, Mechanism.SAMR: run_samr, Mechanism.HAMR: run_hamr}[kind]
    return engine(scenario, agents, config, seed=seed)
