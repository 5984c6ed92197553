"""Growth of monodromy matrices of Hamburger Hamiltonians and Jacobi matrices.

Exact transfer-matrix products, det Omega machinery, the Jacobi bridge,
lower/upper bound curves and order-fitting experiments.
"""
from .hamiltonian import (HamburgerHamiltonian, HamiltonianError, b_s_sequence, det_omega_nodes,
                          det_omega_real, greedy_partition_count, omega_nodes, sigma_partition)
from .jacobi import (JacobiParameters, hamiltonian_to_jacobi, indeterminacy_diagnostic,
                     jacobi_to_hamiltonian, poly_at_zero)
from .monodromy import log_abs_w22, monodromy, nevanlinna_logB

__version__ = "0.1.0"

__all__ = [
    "HamburgerHamiltonian", "HamiltonianError", "b_s_sequence", "det_omega_nodes", "det_omega_real",
    "greedy_partition_count", "omega_nodes", "sigma_partition", "JacobiParameters",
    "hamiltonian_to_jacobi", "indeterminacy_diagnostic", "jacobi_to_hamiltonian", "poly_at_zero",
    "log_abs_w22", "monodromy", "nevanlinna_logB",
]
