"""Entanglement entropy of holomorphic sections on CP1 x CP1.

States are complex numpy arrays of shape (k+1, k+1) holding the coefficients
c_ij of sum c_ij e_i(z) e_j(w).
"""

from ._core import (
    MCEstimate,
    OptResult,
    PreconditionError,
    diagonal_kernel_basis,
    entanglement_entropy,
    fit_tail,
    kernel_basis,
    kernel_projector,
    max_entropy_vector,
    maximize,
    mc_mean_entropy,
    page_mean,
    reduced_density,
    restrict,
    schmidt_coefficients,
    schmidt_rank,
    toeplitz_matches_projector_exactly,
    toeplitz_matrix,
    vector_b,
    vector_b_entropy_formula,
    vector_c,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
