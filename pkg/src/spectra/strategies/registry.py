"""Build policies from their names and parameters (scenario files, CLI)."""

from __future__ import annotations

from ..errors import ConfigurationError
from .base import Policy
from .policies import (
    CartelAgreement,
    CartelDefector,
    CartelMember,
    DemandReducer,
    ExposureChaser,
    ScaledSealed,
    ShadedSealed,
    StraightforwardAscending,
    TruthfulSealed,
)


def _needs_cartel(cls):
    def build(agreement, **params):
        if agreement is None:
            raise ConfigurationError(f"{cls.__name__} needs a cartel agreement in the scenario")
        return cls(agreement, **params)
    return build


POLICIES = {
    "TruthfulSealed": lambda agreement, **p: TruthfulSealed(**p),
    "ShadedSealed": lambda agreement, **p: ShadedSealed(**p),
    "ScaledSealed": lambda agreement, **p: ScaledSealed(**p),
    "StraightforwardAscending": lambda agreement, **p: StraightforwardAscending(**p),
    "ExposureChaser": lambda agreement, **p: ExposureChaser(**p),
    "DemandReducer": lambda agreement, **p: DemandReducer(**p),
    "CartelMember": _needs_cartel(CartelMember),
    "CartelDefector": _needs_cartel(CartelDefector),
}


def make_policy(spec, agreement: CartelAgreement = None) -> Policy:
    """``spec`` is a StrategySpec-like object or a bare policy name."""
    name = spec if isinstance(spec, str) else spec.policy
    params = {} if isinstance(spec, str) else dict(spec.params)
    try:
        factory = POLICIES[name]
    except KeyError:
        raise ConfigurationError(f"unknown policy {name!r}; known: {sorted(POLICIES)}") from None
    try:
        return factory(agreement, **params)
    except TypeError as exc:
        raise ConfigurationError(f"bad parameters for {name}: {exc}") from None
