"""Revenue, efficiency, duration, winner's-curse gap and collusion verdicts."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .mechanisms.config import Mechanism, MechanismConfig
from .mechanisms.sealed import run_fpsb, run_vickrey
from .model import AuctionOutcome, Bidder, License, Money, ValuationProfile
from .oracle import optimal_allocation
from .strategies.deviation import DeviationReport, deviation_search
from .strategies.policies import CartelAgreement, CartelDefector, CartelMember, StraightforwardAscending

SUSTAINABLE = "SUSTAINABLE"
BREAKS = "BREAKS"


@dataclass(frozen=True)
class MetricsReport:
    revenue: Money
    welfare_achieved: Money
    welfare_optimal: Optional[Money]  # None when the oracle bound is exceeded
    efficiency: Optional[float]
    rounds: int
    raise_rounds: int
    winners_curse_gap: Mapping[str, Money]
    unsold_count: int

    def to_dict(self) -> dict:
        return asdict(self)


def efficiency_ratio(achieved: Money, optimal: Money) -> float:
    if optimal == 0:
        return 1.0 if achieved == 0 else 0.0
    return achieved / optimal


def score(outcome: AuctionOutcome, scenario) -> MetricsReport:
    """Measure an outcome against the scenario's valuations.

    The winner's-curse gap (sealed formats only) is the top bid minus the
    second bid, or minus the reserve when only one bid was made.
    """
    welfare = sum(scenario.valuations[b].value(outcome.won_by(b)) for b in scenario.bidder_ids)
    optimal = efficiency = None
    if scenario.oracle_ok:
        caps = {b.id: b.bandwidth_cap_mhz for b in scenario.bidders}
        optimal = optimal_allocation(scenario.licenses, scenario.valuations, caps).welfare
        efficiency = efficiency_ratio(welfare, optimal)

    gaps = {}
    if outcome.mechanism in (Mechanism.FPSB.value, Mechanism.VICKREY.value) and outcome.history:
        for lid, st in outcome.history[0].licenses.items():
            if st.standing_high is None:
                continue
            floor = st.second_bid if st.second_bid is not None else scenario.license(lid).reserve_price
            gaps[lid] = st.standing_high - floor

    return MetricsReport(
        revenue=sum(outcome.payments.values()),
        welfare_achieved=welfare,
        welfare_optimal=optimal,
        efficiency=efficiency,
        rounds=outcome.rounds_elapsed,
        raise_rounds=outcome.raise_rounds,
        winners_curse_gap=gaps,
        unsold_count=sum(1 for w in outcome.allocation.values() if w is None),
    )


# -- collusion -----------------------------------------------------------


@dataclass(frozen=True)
class ViabilityReport:
    verdict: str
    mechanism: str
    gains: Mapping[str, Money]
    witness: Optional[DeviationReport] = None  # best deviation of the member that gained most
    alternatives: tuple = ()

    def trace(self, scale: int = 1) -> str:
        """Human-readable account of the witnessing deviation."""
        from .model import format_money

        lines = [f"mechanism {self.mechanism}: {self.verdict}"]
        for member, gain in sorted(self.gains.items()):
            lines.append(f"  best deviation gain for {member}: {format_money(gain, scale)}")
        w = self.witness
        if w is None:
            return "\n".join(lines)
        best = w.best
        lines.append(f"  witness: {w.bidder_id} switches {w.baseline_policy} -> {best.policy}")
        lines.append(f"    baseline utility {format_money(w.baseline_utility, scale)}, "
                     f"deviation utility {format_money(best.utility, scale)}")
        for label, out in (("baseline", w.baseline_outcome), ("deviation", best.outcome)):
            alloc = ", ".join(
                f"{lid}->{b or '-'}@{format_money(out.gross_prices[lid], scale) or '-'}"
                for lid, b in out.allocation.items()
            )
            lines.append(f"    {label}: {alloc}")
            for ev in out.closings:
                lines.append(f"      closed {ev.license_id} at cycle {ev.cycle} position {ev.position}")
        return "\n".join(lines)


def default_alternatives(cartel: CartelAgreement) -> list:
    """The declared deviation set used for collusion verdicts."""
    return [
        lambda: CartelDefector(cartel, "own_closed"),
        lambda: CartelDefector(cartel, "round", 1),
        lambda: CartelDefector(cartel, "round", 2),
        lambda: StraightforwardAscending(),
    ]


def collusion_viability(
    scenario,
    cartel: CartelAgreement,
    mechanism_config: Optional[MechanismConfig] = None,
    alternatives=None,
    seed: Optional[int] = None,
) -> ViabilityReport:
    """BREAKS iff some member gains by a unilateral deviation from the cartel."""
    config = mechanism_config or scenario.mechanism
    if len(cartel.members) < 2:
        return ViabilityReport(SUSTAINABLE, config.kind.value, {m: 0 for m in cartel.members})
    alts = list(alternatives) if alternatives is not None else default_alternatives(cartel)
    profile = {}
    for m in cartel.members:
        profile[m] = lambda: CartelMember(cartel)
    gains, reports = {}, {}
    for m in sorted(cartel.members):
        report = deviation_search(scenario.replace(cartel=cartel), m, alts, profile, config=config, seed=seed)
        gains[m] = report.gain
        reports[m] = report
    top = max(sorted(gains), key=lambda m: gains[m])
    verdict = BREAKS if gains[top] > 0 else SUSTAINABLE
    names = tuple(r.policy for r in reports[top].results)
    return ViabilityReport(verdict, config.kind.value, gains, reports[top], names)


# -- revenue equivalence -------------------------------------------------


@dataclass(frozen=True)
class Uniform:
    low: float = 0.0
    high: float = 1.0

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        return rng.uniform(self.low, self.high, size)

    def equilibrium_shading(self, n: int) -> float:
        # symmetric first-price equilibrium for uniform values on [0, h]
        if self.low != 0:
            raise ValueError("closed-form shading only holds for Uniform[0, h]")
        return (n - 1) / n


@dataclass(frozen=True)
class Degenerate:
    value: float

    def sample(self, rng, size) -> np.ndarray:
        return np.full(size, float(self.value))

    def equilibrium_shading(self, n: int) -> float:
        return 1.0


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    stderr: float
    n_draws: int
    revenues: tuple = field(default=(), repr=False)


def monte_carlo_revenue(
    mechanism: MechanismConfig | Mechanism | str,
    value_distribution,
    n_bidders: int,
    n_draws: int = 10_000,
    seed: int = 0,
    money_scale: int = 10**6,
) -> MonteCarloResult:
    """Mean and standard error of single-license revenue over IID value draws.

    FPSB agents shade to the distribution's symmetric-equilibrium factor;
    Vickrey agents bid truthfully.  Each draw is a separate engine run
    with its own tie-break seed.  Revenue is reported in value units.
    """
    mechanism = Mechanism(mechanism.kind if isinstance(mechanism, MechanismConfig) else mechanism)
    if not mechanism.sealed:
        raise ValueError("monte_carlo_revenue covers the sealed-bid mechanisms")
    if n_draws < 1000:
        raise ValueError("n_draws must be >= 1000")
    from .scenarios.scenario import Scenario

    bidders = [Bidder(f"b{i}") for i in range(n_bidders)]
    scenario = Scenario(
        name="monte_carlo",
        licenses=[License("L", 1.0)],
        bidders=bidders,
        valuations={b.id: ValuationProfile(b.id) for b in bidders},
        seed=seed,
        money_scale=money_scale,
    )
    rng = np.random.default_rng(seed)
    values = value_distribution.sample(rng, (n_draws, n_bidders))
    factor = 1.0 if mechanism is Mechanism.VICKREY else value_distribution.equilibrium_shading(n_bidders)
    bids = np.rint(values * factor * money_scale).astype(np.int64)
    engine = run_vickrey if mechanism is Mechanism.VICKREY else run_fpsb

    revenues = []
    for i in range(n_draws):
        sealed = {b.id: {"L": int(bids[i, j])} for j, b in enumerate(bidders)}
        out = engine(scenario, sealed, seed=seed * 1_000_003 + i)
        revenues.append(sum(out.payments.values()) / money_scale)
    mean = math.fsum(revenues) / n_draws
    var = math.fsum((r - mean) ** 2 for r in revenues) / (n_draws - 1)
    return MonteCarloResult(mean, math.sqrt(var / n_draws), n_draws, tuple(revenues))


# -- export --------------------------------------------------------------


def report_json(report: MetricsReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True)


def comparison_csv(rows: Sequence[Mapping]) -> str:
    """CSV table, one row per mechanism x scenario."""
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()
