# %% [markdown]
# Defects far apart: delayed entanglement
#
# With the defects on opposite sites -l and +l, entanglement needs a finite
# time to appear. That onset time, and the oscillation period, grow roughly
# exponentially with l.

# %%
import numpy as np

from isingbath.experiments import ExperimentConfig, run_scenario

res = run_scenario(ExperimentConfig.for_scenario("fig3", threads=4))
for l, t0, p in zip(res.extras["l_values"], res.extras["onset_times"], res.extras["periods"]):
    print(f"l={l}: t0={t0:10.2f}  period={p:10.1f}")
fit = res.extras["exponential_fit"]
print(f"log t0 = {fit['intercept']:.3f} + {fit['slope']:.3f} l   (R^2 = {fit['r_squared']:.3f})")
print("period ratios:", np.round(np.diff(np.log(res.extras["periods"])), 3))
