# %% [markdown]
# Pointer states and the protected subspace
#
# The defects couple to the bath only through collective sigma^x operators,
# so their eigenstates never move. For a shared coupling site the
# antisymmetric pair |phi^A>, |psi^A> is invisible to the bath and any
# coherence between them survives forever.

# %%
import numpy as np

from isingbath.bath import ChainSpec, build_bath_modes
from isingbath.defects import PHI_A, PSI_A, Basis, evolve_series, pointer_basis, pure_state, series_to_standard, \
    to_basis
from isingbath.dephasing import dephasing_coefficients

for placement in ("distant", "same_site"):
    pb = pointer_basis(placement)
    print(placement, "eigenvalue pairs (S, A):", pb.eigenvalues.tolist())

# %%
spec = ChainSpec(J=0.2, gamma=0.04, N=1000, l=10, placement="same_site")
c = dephasing_coefficients(build_bath_modes(spec), np.linspace(0, 3000, 7))
s0 = pure_state(PHI_A + PSI_A)
rhos = series_to_standard(evolve_series(s0, c), "same_site")
coh = np.einsum("i,tij,j->t", PSI_A.conj(), rhos, PHI_A)
print("|<psi_A|rho|phi_A>| over time:", np.round(np.abs(coh), 15))

# %%
up_up = pure_state([1, 0, 0, 0])
print("|up up> pointer populations (distant):",
      np.round(np.diag(to_basis(up_up, Basis.POINTER, "distant").rho).real, 3))
