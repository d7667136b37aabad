"""Two-qubit state constructors, Wootters concurrence, analytic references.

The Werner family is implemented as

    rho_W(p) = (1/4) (I - p sum_k sigma_k (x) sigma_k),

the singlet-weighted sign convention, which is PSD exactly on
p in [-1/3, 1] and reproduces C = max(0, (3p - 1)/2).  (With the opposite
sign the p > 1/3 members would not be states.)

q_factor and the two concurrence formulas are leading-order analytic
references used for comparison against the full numeric evolution.  Their
internal frequency convention (resonances at w_L = 4g) predates the
exchange normalization H_I = (g/4) sigma.sigma used by the evolution
module; the comparison tolerances absorb the difference.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, InvalidStateError
from .evolution import validate_density_matrix
from .pauli import IDENTITY4, PAULI, SIGMA_DOT_SIGMA

_SPIN_FLIP = np.kron(PAULI[2], PAULI[2])
_CLAMP_TOL = 1e-10


def werner_state(p: float) -> np.ndarray:
    """Werner state with Bell-overlap parameter p.

    Eigenvalues (1 - p)/4 (x3) and (1 + 3p)/4; separable iff p <= 1/3;
    p = 1 is the pure singlet projector.
    """
    if not (-1.0 / 3.0 <= p <= 1.0):
        raise DomainError(f"Werner parameter must lie in [-1/3, 1], got {p}")
    return 0.25 * (IDENTITY4 - p * SIGMA_DOT_SIGMA)


def product_state(alpha: float, beta: float) -> np.ndarray:
    """Uncorrelated two-spin state, diagonal in the computational basis.

    rho0 = (1/4)(I + alpha (s03 + s30)/2 + beta (s03 - s30)/2); the
    partial traces carry z-polarizations (alpha + beta)/2 and
    (alpha - beta)/2, and positivity requires |alpha| + |beta| <= 1.
    """
    if abs(alpha) + abs(beta) > 1.0 + 1e-15:
        raise DomainError(
            f"|alpha| + |beta| must be <= 1 for a positive state, "
            f"got {abs(alpha) + abs(beta):.6g}"
        )
    c_p = 0.5 * (alpha + beta)
    c_n = 0.5 * (alpha - beta)
    return 0.25 * (IDENTITY4 + c_p * np.kron(PAULI[0], PAULI[3])
                   + c_n * np.kron(PAULI[3], PAULI[0]))


def wootters_concurrence(rho: np.ndarray) -> float:
    """Concurrence of an arbitrary two-qubit density matrix.

    C = max(0, l1 - l2 - l3 - l4) with l_i the decreasing square roots
    of the eigenvalues of rho (sy x sy) rho* (sy x sy).  Invariant under
    local unitaries; 0 for separable states, 1 for Bell states.
    """
    rho = validate_density_matrix(rho)
    rho_tilde = _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    ev = np.linalg.eigvals(rho @ rho_tilde).real
    if ev.min() < -_CLAMP_TOL:
        raise InvalidStateError(
            f"spin-flip spectrum has eigenvalue {ev.min():.3e} < -1e-10"
        )
    lam = np.sqrt(np.clip(np.sort(ev)[::-1], 0.0, None))
    return min(1.0, max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3])))


def _sin2_over(delta: float, t: float, scale: float) -> float:
    """sin^2(delta t / 2) / delta with the removable delta -> 0 limit.

    Within |delta| < 1e-8 * scale the three-term Taylor expansion in
    delta is used.
    """
    if abs(delta) < 1e-8 * scale:
        t2 = t * t
        return (delta * t2 / 4.0 - delta**3 * t2 * t2 / 48.0
                + delta**5 * t2 * t2 * t2 / 1440.0)
    s = math.sin(0.5 * delta * t)
    return s * s / delta


def q_factor(t: float, omega_L: float, g: float) -> float:
    """Resonance kernel Q(t) of the product-state concurrence formula.

    Q = sin^2((w/2 + 2g) t)/(w + 4g) + sin^2((w/2 - 2g) t)/(w - 4g),
    finite at the removable resonance w = 4g.
    """
    if t < 0.0:
        raise DomainError(f"q_factor requires t >= 0, got {t}")
    return (_sin2_over(omega_L + 4.0 * g, t, omega_L)
            + _sin2_over(omega_L - 4.0 * g, t, omega_L))


def concurrence_werner_analytic(p: float) -> float:
    """Leading-order concurrence of an evolved Werner state: max(0, (3p-1)/2)."""
    if not (-1.0 / 3.0 <= p <= 1.0):
        raise DomainError(f"Werner parameter must lie in [-1/3, 1], got {p}")
    return max(0.0, (3.0 * p - 1.0) / 2.0)


def concurrence_product_analytic(t: float, alpha: float, beta: float,
                                 eta: float, g: float, delta_gtilde: float,
                                 omega_L: float = 1.0) -> float:
    """Leading-order concurrence of the evolved uncorrelated state.

    C = max(0, 4 eta |beta g Delta Q(t)| - sqrt(1 - alpha^2)); zero at
    t = 0 and identically zero when beta, Delta or g vanishes.
    """
    if abs(alpha) + abs(beta) > 1.0 + 1e-15:
        raise DomainError("|alpha| + |beta| must be <= 1")
    grow = 4.0 * eta * abs(beta * g * delta_gtilde * q_factor(t, omega_L, g))
    return max(0.0, grow - math.sqrt(max(1.0 - alpha * alpha, 0.0)))
