from .fock import (FockBathConfig, OracleError, OracleResult, cutoff_convergence,
                   exact_boson_evolution)
from .spin_chain import SpinChainConfig, exact_spin_chain_evolution

__all__ = [
    "FockBathConfig", "OracleError", "OracleResult", "cutoff_convergence",
    "exact_boson_evolution", "SpinChainConfig", "exact_spin_chain_evolution",
]
