# %% [markdown]
# Normal modes of the bosonized ring
#
# The chain of 2N oscillators splits into a symmetric and an antisymmetric
# block. Each block is tridiagonal and its spectrum is known in closed form,
# which makes a good first sanity check.

# %%
import numpy as np

from isingbath.bath import (ChainSpec, build_bath_modes, build_potential_matrix, closed_form_frequencies,
                            parity_split)

spec = ChainSpec(J=0.2, gamma=0.04, N=6, l=2)
V_b = build_potential_matrix(spec)
V_S, V_A = parity_split(V_b)
np.set_printoptions(precision=3, suppress=True, linewidth=120)
print("V_S =\n", V_S)
print("V_A =\n", V_A)

# %%
modes = build_bath_modes(spec.replace(N=500))
cS, cA = closed_form_frequencies(0.2, 500)
print("max deviation from closed form:", np.abs(modes.omega_S - cS).max(), np.abs(modes.omega_A - cA).max())
print("band:", modes.spec.band, "observed:", modes.omega_S.min(), modes.omega_A.max())

# %% [markdown]
# The coupling vector has one nonzero entry. Its squared norm survives the
# orthogonal change to normal modes, for either prefactor convention.

# %%
for norm in ("paper", "derived"):
    m = build_bath_modes(spec.replace(N=500, coupling_norm=norm))
    print(f"{norm:8s} sum g_S^2 = {np.sum(m.gamma_S**2):.6f}  sum g_A^2 = {np.sum(m.gamma_A**2):.6f}")
