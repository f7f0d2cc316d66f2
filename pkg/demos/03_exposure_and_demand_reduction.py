# %% [markdown]
# Two slots sold one after another.  A wants the pair; B and C want one each.

# %%
from spectra import run, utility
from spectra.scenarios import build_scenario
from spectra.strategies import DemandReducer, StraightforwardAscending
from spectra.report import trace_text

for pair in (300, 200):
    s = build_scenario("two_slot_complements", pair_value=pair)
    out = run(s)
    prices = {k: v / s.money_scale for k, v in out.gross_prices.items()}
    print(f"pair value {pair}: {out.allocation} at {prices}, "
          f"A utility {utility(out, s.valuations['A']) / s.money_scale:g}")

# %% [markdown]
# Two identical slots, two bidders who each want one.  Bidding on just one
# license keeps both prices at the reserve.

# %%
s = build_scenario("demand_reduction_pair")
for label, pol in (("DemandReducer(1)", lambda: DemandReducer(1)), ("straightforward", StraightforwardAscending)):
    out = run(s, agents={b: pol() for b in s.bidder_ids})
    print(label, out.allocation, {k: v / s.money_scale for k, v in out.gross_prices.items()},
          "rounds", out.rounds_elapsed)

# %%
print(trace_text(run(s), s))
