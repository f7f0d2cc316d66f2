# %% [markdown]
# Sealed-bid formats: first price vs second price on the same bids.

# %%
import numpy as np

from spectra import run
from spectra.metrics import Uniform, monte_carlo_revenue, score
from spectra.scenarios import build_scenario

s = build_scenario("vickrey_gap")
for kind in ("FPSB", "VICKREY"):
    out = run(s, mechanism=kind)
    rep = score(out, s)
    print(kind, out.allocation, "price", out.gross_prices["L"] / s.money_scale,
          "gap", {k: v / s.money_scale for k, v in rep.winners_curse_gap.items()})

# %% [markdown]
# One high bid over a reserve: the second-price winner pays the reserve.

# %%
nz = build_scenario("vickrey_gap", variant="new_zealand")
for kind in ("FPSB", "VICKREY"):
    out = run(nz, mechanism=kind)
    print(kind, "pays", out.gross_prices["L"] / nz.money_scale)

# %% [markdown]
# Expected revenue with uniform private values.  First-price bidders shade
# to (n-1)/n of value; second-price bidders bid truthfully.

# %%
rows = []
for n in (2, 3, 4):
    fp = monte_carlo_revenue("FPSB", Uniform(), n, n_draws=5000, seed=n)
    sp = monte_carlo_revenue("VICKREY", Uniform(), n, n_draws=5000, seed=n)
    rows.append((n, fp.mean, sp.mean, (n - 1) / (n + 1)))
print(np.array(rows).round(4))  # n, FPSB mean, Vickrey mean, closed form
