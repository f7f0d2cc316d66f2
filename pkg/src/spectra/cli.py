"""Command-line entry point: run, compare and sweep auctions reproducibly.

Exit codes: 0 ok, 2 usage error, 3 scenario load error, 4 engine error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

from .errors import ScenarioError, SpectraError
from .mechanisms.config import IncrementSchedule, Mechanism
from .metrics import collusion_viability, comparison_csv, score
from .model import format_money, scale_money
from .report import metrics_json, outcome_json, summary_csv, trace_text
from .scenarios import build_scenario, catalog_names, load_scenario
from .scenarios.catalog import CATALOG
from .simulate import run

log = logging.getLogger("spectra")

EXIT_OK, EXIT_USAGE, EXIT_LOAD, EXIT_ENGINE = 0, 2, 3, 4
AXES = ("increment", "tsf", "activity_fraction", "credit_fraction")


class UsageError(Exception):
    pass


class LoadError(Exception):
    pass


@dataclass(frozen=True)
class RunRequest:
    scenario: str
    mechanism: Optional[str] = None
    seed: Optional[int] = None
    out: Optional[str] = None
    formats: tuple = ("json", "csv")
    verbosity: int = 0
    inc: Optional[float] = None
    tsf: Optional[int] = None
    activity: Optional[float] = None
    credit: Optional[float] = None


# -- helpers ---------------------------------------------------------------


def load(source: str):
    """Catalog name or path to a JSON scenario file."""
    if source in CATALOG:
        return build_scenario(source)
    if Path(source).suffix == ".json" or os.sep in source or Path(source).exists():
        try:
            return load_scenario(Path(source))
        except ScenarioError as exc:
            raise LoadError(f"scenario file {source}: {exc}") from None
    raise LoadError(f"unknown scenario {source!r}; known: {', '.join(catalog_names())}")


def apply_overrides(scenario, inc=None, tsf=None, activity=None, credit=None):
    """Return a scenario with CLI parameter overrides applied.

    ``inc`` is in major money units; ``credit`` sets the credit fraction
    of every designated bidder.
    """
    cfg = scenario.mechanism
    if inc is not None:
        if inc <= 0:
            raise UsageError("--inc must be > 0")
        cfg = cfg.with_(increment=IncrementSchedule.absolute(scale_money(scenario.money_scale, inc)))
    if tsf is not None:
        if tsf < 1:
            raise UsageError("--tsf must be >= 1")
        cfg = cfg.with_(tsf={lid: tsf for lid in scenario.license_ids}, default_tsf=tsf)
    if activity is not None:
        if not 0 < activity <= 1:
            raise UsageError("--activity must lie in (0, 1]")
        cfg = cfg.with_(activity_phases=((1, activity),))
    changes = {"mechanism": cfg}
    if credit is not None:
        if not 0 <= credit < 1:
            raise UsageError("--credit must lie in [0, 1)")
        designated = [b for b in scenario.bidders if b.designated]
        if not designated:
            raise UsageError(f"--credit given but scenario {scenario.name!r} has no designated bidder")
        changes["bidders"] = [replace(b, credit_fraction=credit) if b.designated else b for b in scenario.bidders]
    return scenario.replace(**changes)


def resolve_seed(seed: Optional[int], scenario) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("SPECTRA_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"SPECTRA_SEED must be an integer, got {env!r}") from None
    return scenario.seed


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _mechanisms(values: Sequence[str]) -> list:
    names = [m.strip().upper() for v in values for m in v.split(",") if m.strip()]
    if not names:
        raise UsageError("at least one mechanism is required")
    bad = [m for m in names if m not in Mechanism.__members__]
    if bad:
        raise UsageError(f"unknown mechanism(s) {bad}; choose from {list(Mechanism.__members__)}")
    return [Mechanism(m) for m in names]


def _grid(text: str, axis: str) -> list:
    """Parse ``1,2,4`` or ``a:b`` (inclusive, integer step 1) or ``a:b:step``."""
    text = (text or "").strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise UsageError(f"bad range {text!r}")
        try:
            nums = [float(p) for p in parts]
        except ValueError:
            raise UsageError(f"bad range {text!r}") from None
        lo, hi = nums[0], nums[1]
        step = nums[2] if len(nums) == 3 else 1.0
        if step <= 0:
            raise UsageError("range step must be > 0")
        values, k = [], 0
        while lo + k * step <= hi + 1e-9:
            values.append(round(lo + k * step, 10))
            k += 1
    else:
        try:
            values = [float(v) for v in text.split(",") if v.strip()]
        except ValueError:
            raise UsageError(f"bad value list {text!r}") from None
    if not values:
        raise UsageError(f"empty range for axis {axis}")
    if axis == "tsf":
        if any(v != int(v) for v in values):
            raise UsageError("tsf values must be integers")
        values = [int(v) for v in values]
    return [int(v) if isinstance(v, float) and v.is_integer() and axis in ("increment", "tsf") else v
            for v in values]


def _fmt_eff(eff) -> str:
    return "" if eff is None else f"{eff:.6f}"


def _verdict(scenario, config, seed) -> str:
    if scenario.cartel is None:
        return ""
    return collusion_viability(scenario, scenario.cartel, config, seed=seed).verdict


# -- commands --------------------------------------------------------------


def cmd_run(req: RunRequest) -> int:
    scenario = apply_overrides(load(req.scenario), req.inc, req.tsf, req.activity, req.credit)
    seed = resolve_seed(req.seed, scenario)
    config = scenario.mechanism
    if req.mechanism:
        config = config.with_(kind=_mechanisms([req.mechanism])[0])
    outcome = run(scenario, config=config, seed=seed)
    report = score(outcome, scenario)
    out = Path(req.out or "spectra-out")
    if "json" in req.formats:
        _write_atomic(out / "outcome.json", outcome_json(outcome, scenario.name))
        _write_atomic(out / "metrics.json", metrics_json(report, scenario, seed))
    if "csv" in req.formats:
        _write_atomic(out / "summary.csv", summary_csv(outcome, scenario, report))
    trace = trace_text(outcome, scenario, config)
    _write_atomic(out / "trace.txt", trace)
    sys.stdout.write(summary_csv(outcome, scenario, report))
    if req.verbosity:
        sys.stdout.write(trace)
    log.info("artifacts written to %s", out)
    return EXIT_OK


def cmd_compare(source: str, mechanisms: Sequence[str], seed=None, out=None, **overrides) -> int:
    kinds = _mechanisms(mechanisms)
    scenario = apply_overrides(load(source), **overrides)
    seed = resolve_seed(seed, scenario)
    scale = scenario.money_scale
    rows = []
    for kind in kinds:
        config = scenario.mechanism.with_(kind=kind)
        outcome = run(scenario, config=config, seed=seed)
        report = score(outcome, scenario)
        row = {
            "scenario": scenario.name,
            "mechanism": kind.value,
            "seed": seed,
            "revenue": format_money(report.revenue, scale),
            "efficiency": _fmt_eff(report.efficiency),
            "rounds": report.rounds,
            "raise_rounds": report.raise_rounds,
            "winners": " ".join(f"{lid}:{w or '-'}@{format_money(outcome.gross_prices[lid], scale) or '-'}"
                                for lid, w in outcome.allocation.items()),
        }
        if scenario.cartel is not None:
            row["verdict"] = _verdict(scenario, config, seed)
        rows.append(row)
    table = comparison_csv(rows)
    sys.stdout.write(table)
    if out:
        _write_atomic(Path(out) / "comparison.csv", table)
    return EXIT_OK


def cmd_sweep(source: str, axis: str, values: str, seed=None, mechanism=None, out=None) -> int:
    if axis not in AXES:
        raise UsageError(f"axis must be one of {AXES}")
    grid = _grid(values, axis)
    base = load(source)
    seed = resolve_seed(seed, base)
    scale = base.money_scale
    key = {"increment": "inc", "tsf": "tsf", "activity_fraction": "activity", "credit_fraction": "credit"}[axis]
    rows = []
    for value in grid:
        scenario = apply_overrides(base, **{key: value})
        config = scenario.mechanism
        if mechanism:
            config = config.with_(kind=_mechanisms([mechanism])[0])
        outcome = run(scenario, config=config, seed=seed)
        report = score(outcome, scenario)
        row = {
            "parameter": axis,
            "value": value,
            "revenue": format_money(report.revenue, scale),
            "rounds": report.rounds,
            "raise_rounds": report.raise_rounds,
            "efficiency": _fmt_eff(report.efficiency),
        }
        if scenario.cartel is not None:
            row["verdict"] = _verdict(scenario, config, seed)
        rows.append(row)
    table = comparison_csv(rows)
    sys.stdout.write(table)
    if out:
        _write_atomic(Path(out) / f"sweep_{axis}.csv", table)
    return EXIT_OK


def cmd_list() -> int:
    for name in catalog_names():
        entry = CATALOG[name]
        sys.stdout.write(f"{name:24s} {entry.summary}\n")
    return EXIT_OK


# -- argument parsing --------------------------------------------------------


def _seed_arg(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spectra", description="Deterministic spectrum-auction simulator.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, many=False):
        sp.add_argument("--scenario", required=True, help="catalog name or path to a scenario JSON file")
        if many:
            sp.add_argument("--mechanism", action="append", required=True,
                            help="comma list of mechanisms; may be repeated")
        else:
            sp.add_argument("--mechanism", help="mechanism override (FPSB, VICKREY, SEQ_AMR, SAMR, HAMR)")
        sp.add_argument("--seed", type=_seed_arg, help="tie-break seed (default: $SPECTRA_SEED, then the scenario's)")
        sp.add_argument("--out", help="output directory")

    def overrides(sp):
        sp.add_argument("--inc", type=float, help="absolute increment in major money units")
        sp.add_argument("--tsf", type=int, help="threshold saturation factor for every license (HAMR)")
        sp.add_argument("--activity", type=float, help="single activity-rule fraction in (0, 1]")
        sp.add_argument("--credit", type=float, help="credit fraction for designated bidders")

    r = sub.add_parser("run", help="run one auction and write artifacts")
    common(r)
    overrides(r)
    r.add_argument("--format", default="json,csv", help="comma list of artifact formats: json, csv")
    r.add_argument("-v", "--verbose", action="count", default=0, dest="sub_verbose")

    c = sub.add_parser("compare", help="run several mechanisms on one scenario")
    common(c, many=True)
    overrides(c)

    s = sub.add_parser("sweep", help="vary one parameter and tabulate the metrics")
    common(s)
    s.add_argument("--axis", required=True, choices=AXES)
    s.add_argument("--values", required=True, help="comma list (1,2,4,8) or inclusive range (1:5[:step])")

    sub.add_parser("list", help="list catalog scenarios")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    verbosity = args.verbose + getattr(args, "sub_verbose", 0)
    logging.basicConfig(level=logging.DEBUG if verbosity > 1 else logging.INFO if verbosity else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        if args.command == "list":
            return cmd_list()
        if args.command == "run":
            formats = tuple(f.strip() for f in args.format.split(",") if f.strip())
            bad = set(formats) - {"json", "csv"}
            if bad or not formats:
                raise UsageError(f"--format must be a comma list of json, csv; got {args.format!r}")
            return cmd_run(RunRequest(args.scenario, args.mechanism, args.seed, args.out, formats, verbosity,
                                      args.inc, args.tsf, args.activity, args.credit))
        if args.command == "compare":
            return cmd_compare(args.scenario, args.mechanism, args.seed, args.out,
                               inc=args.inc, tsf=args.tsf, activity=args.activity, credit=args.credit)
        if args.command == "sweep":
            return cmd_sweep(args.scenario, args.axis, args.values, args.seed, args.mechanism, args.out)
    except UsageError as exc:
        sys.stderr.write(f"spectra: usage error: {exc}\n")
        return EXIT_USAGE
    except LoadError as exc:
        sys.stderr.write(f"spectra: {exc}\n")
        return EXIT_LOAD
    except (SpectraError, ValueError) as exc:
        sys.stderr.write(f"spectra: engine error: {exc}\n")
        return EXIT_ENGINE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
