# %% [markdown]
# A two-member cartel (X keeps A, Y keeps C).  Under the simultaneous format
# members can retaliate; under the hybrid format A closes before C, so X
# can grab C once A is safe.

# %%
from spectra.mechanisms import Mechanism
from spectra.metrics import collusion_viability
from spectra.scenarios import build_scenario

s = build_scenario("claim1_collusion")
for kind in (Mechanism.SAMR, Mechanism.HAMR):
    report = collusion_viability(s, s.cartel, s.mechanism.with_(kind=kind))
    print(report.trace(s.money_scale))
    print()

# %% [markdown]
# The verdict does not depend on the threshold saturation factor.

# %%
for tsf in range(1, 6):
    st = build_scenario("claim1_collusion", tsf=tsf)
    print(tsf, collusion_viability(st, st.cartel).verdict)
