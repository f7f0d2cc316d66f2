"""Serialize outcomes and metrics to the artifacts the CLI writes."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict

from .metrics import MetricsReport
from .model import AuctionOutcome, credit_adjusted_payment, format_money


def outcome_to_dict(outcome: AuctionOutcome) -> dict:
    """Plain-JSON form of an outcome, including the full round history."""
    return asdict(outcome)


def dumps(doc) -> str:
    # sort_keys + fixed separators keep artifacts byte-stable across runs
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def outcome_json(outcome: AuctionOutcome, scenario_name: str) -> str:
    return dumps({"scenario": scenario_name, "outcome": outcome_to_dict(outcome)})


def metrics_json(report: MetricsReport, scenario, seed: int) -> str:
    doc = report.to_dict()
    doc.update(scenario=scenario.name, seed=seed, money_scale=scenario.money_scale)
    return dumps(doc)


def summary_csv(outcome: AuctionOutcome, scenario, report: MetricsReport) -> str:
    """One row per license, money in major units."""
    scale = scenario.money_scale
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["scenario", "mechanism", "seed", "license", "winner", "price", "payment",
                "rounds", "raise_rounds", "revenue", "efficiency"])
    paid = dict(outcome.payments)
    for lid, winner in outcome.allocation.items():
        price = outcome.gross_prices.get(lid)
        payment = ""
        if winner is not None and price is not None:
            payment = format_money(credit_adjusted_payment(price, scenario.bidder(winner)), scale)
        w.writerow([scenario.name, outcome.mechanism, outcome.seed, lid, winner or "", format_money(price, scale),
                    payment, outcome.rounds_elapsed, outcome.raise_rounds,
                    format_money(sum(paid.values()), scale),
                    "" if report.efficiency is None else f"{report.efficiency:.6f}"])
    return buf.getvalue()


def trace_text(outcome: AuctionOutcome, scenario, config=None) -> str:
    """Round-by-round log; HAMR cycles also show SF/TSF per license."""
    scale = scenario.money_scale
    cfg = config or scenario.mechanism
    lines = [f"scenario {scenario.name}  mechanism {outcome.mechanism}  seed {outcome.seed}"]
    hamr = outcome.mechanism == "HAMR"
    for rec in outcome.history:
        label = "cycle" if hamr else "round"
        head = f"{label} {rec.round_index}"
        if rec.current_license:
            head += f"  license {rec.current_license}"
        if rec.visit_order:
            head += f"  order {' '.join(rec.visit_order)}"
        lines.append(head)
        for lid, st in rec.licenses.items():
            who = "" if st.standing_bidders is None else "/".join(st.standing_bidders)
            part = f"  {lid}: high {format_money(st.standing_high, scale) or '-'}"
            part += f" by {who or '?'}" if st.standing_high is not None else ""
            part += f"  new bids {st.new_bid_count}"
            if st.second_bid is not None:
                part += f"  second {format_money(st.second_bid, scale)}"
            if st.saturation_factor is not None:
                part += f"  SF {st.saturation_factor}/{cfg.tsf_for(lid)}"
            if not st.is_open:
                part += "  closed"
            lines.append(part)
        if rec.eligibility:
            elig = ", ".join(f"{b}={e:g}" for b, e in rec.eligibility.items())
            lines.append(f"  eligibility {elig}")
        for rj in rec.rejected:
            lines.append(f"  rejected {rj.bidder_id} on {rj.license_id} at {format_money(rj.amount, scale)}: {rj.reason}")
        for ev in rec.closings:
            lines.append(f"  close {ev.license_id} at position {ev.position}: "
                         f"{ev.winner or 'unsold'} {format_money(ev.price, scale)}".rstrip())
    for tb in outcome.tie_breaks:
        lines.append(f"tie on {tb.license_id} (round {tb.round_index}) among {'/'.join(tb.candidates)}: {tb.winner}")
    lines.append("result")
    for lid, winner in outcome.allocation.items():
        lines.append(f"  {lid}: {winner or 'unsold'} {format_money(outcome.gross_prices.get(lid), scale)}".rstrip())
    return "\n".join(lines) + "\n"
