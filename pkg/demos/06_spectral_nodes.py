# %% [markdown]
# Zeros of the antisymmetric spectral density
#
# For distant defects the antisymmetric density I_A has l-1 interior zeros.
# A Zeeman splitting tuned onto one of them would decouple a transition from
# the bath, but every zero lies inside the band, around 1 in units of the
# transverse field, which is far outside the weak-field regime where the
# bosonized model holds.

# %%
from isingbath.experiments import ExperimentConfig, run_scenario

res = run_scenario(ExperimentConfig.for_scenario("fig4"))
for l, d in res.extras["spectra"].items():
    print(f"l={l}: nodes {d['A'].nodes.round(4).tolist()}  minima {[round(x, 4) for x in d['matched_minima']]}")

# %%
for l, d in res.extras["spectra"].items():
    print(d["feasibility"].summary())
