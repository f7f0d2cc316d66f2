# %% [markdown]
# Four incumbents and one entrant (synthetic values: 100 for incumbents,
# 80 for the entrant).  Compare four licenses with five.

# %%
from dataclasses import replace

from spectra import run
from spectra.metrics import score
from spectra.scenarios import build_scenario

for n in (4, 5):
    s = build_scenario("five_license_entrant", n_licenses=n)
    out = run(s)
    rep = score(out, s)
    print(f"{n} licenses: entrant wins {sorted(out.won_by('E')) or 'nothing'}, "
          f"revenue {rep.revenue / s.money_scale:g}, rounds {rep.rounds}")

# %% [markdown]
# A bidder credit lowers what the designated entrant pays for the same win.

# %%
s = build_scenario("five_license_entrant", n_licenses=5)
for credit in (0.0, 0.1, 0.25):
    bidders = [replace(b, credit_fraction=credit) if b.designated else b for b in s.bidders]
    out = run(s.replace(bidders=bidders))
    print(f"credit {credit:.2f}: entrant pays {out.payments['E'] / s.money_scale:g}")
