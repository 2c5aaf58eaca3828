# %% [markdown]
# Attenuation and phase functions, checked against a brute-force bath
#
# A two-mode-per-sector bath truncated at four quanta per mode is small enough
# to propagate exactly. The reduced defect state from that run is compared
# with the closed-form map for both thermal factors, 2n+1 and 2n-1.

# %%
import numpy as np

from isingbath.bath import ChainSpec, build_bath_modes
from isingbath.defects import evolve_series, product_state, series_to_standard
from isingbath.dephasing import dephasing_coefficients
from isingbath.oracles import FockBathConfig, exact_boson_evolution

spec = ChainSpec(J=0.1, gamma=0.05, T=0.0, N=2, l=1)
t = np.linspace(0.0, 50.0, 501)
s0 = product_state(0.0, 0.0)

exact = exact_boson_evolution(FockBathConfig(N_small=2, n_max=4, t_grid=t), spec, s0)
print("Fock dimension:", exact.diagnostics["dim"], " unitarity error:", exact.diagnostics["unitarity_error"])

# %%
modes = build_bath_modes(spec)
for occ in ("plus", "minus"):
    c = dephasing_coefficients(modes, t, occ)
    rho = series_to_standard(evolve_series(s0, c), spec.placement)
    print(f"{occ:5s}: max |rho_analytic - rho_exact| = {np.abs(rho - exact.rhos).max():.3e}")

# %% [markdown]
# With 2n-1 the attenuation turns negative at zero temperature and the
# coherences grow instead of decaying. The 2n+1 form agrees with the exact
# run to rounding level.

# %%
c = dephasing_coefficients(build_bath_modes(ChainSpec(J=0.2, gamma=0.04, N=1000, l=10)),
                           np.linspace(0, 2000, 9))
for row in zip(c.times, c.f_S, c.f_A, c.phi_S, c.phi_A):
    print("t=%7.1f  f_S=%.5f  f_A=%.5f  phi_S=%9.4f  phi_A=%9.4f" % row)
