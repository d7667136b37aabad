"""Pauli matrices and fixed two-qubit operator constants."""

from __future__ import annotations

import numpy as np

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULI = (SIGMA0, SIGMA1, SIGMA2, SIGMA3)

# sum_k sigma_k (x) sigma_k, spectrum {1, 1, 1, -3}
SIGMA_DOT_SIGMA = sum(np.kron(PAULI[k], PAULI[k]) for k in (1, 2, 3))

SWAP = 0.5 * (np.eye(4, dtype=complex) + SIGMA_DOT_SIGMA)

IDENTITY4 = np.eye(4, dtype=complex)


def antisym(mu: int, nu: int) -> np.ndarray:
    """Antisymmetrized tensor sigma_mu (x) sigma_nu - sigma_nu (x) sigma_mu."""
    return np.kron(PAULI[mu], PAULI[nu]) - np.kron(PAULI[nu], PAULI[mu])


# the two antisymmetric combinations generated by conjugating the
# spin-exchange term with x-axis single-spin rotations
SIGMA_32 = antisym(3, 2)
SIGMA_10 = antisym(1, 0)


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.abs(m - m.conj().T).max())
