"""Density-matrix propagation and the analytic propagator factorization.

Numeric path
------------
The propagator U(t) (not rho) is integrated with a commutator-free
midpoint exponential stepper (second-order Magnus) under Richardson-style
step control: each trial step is compared against two half steps and the
finer result is accepted.  Every factor is the exponential of a Hermitian
matrix, so U stays unitary to roundoff by construction and
rho(t) = U rho(0) U^+ keeps Hermiticity, trace and positivity
structurally; only the step-control tolerance limits accuracy.

Analytic path (linear polarization only)
----------------------------------------
For eps = 0 the single-spin precessions factor out exactly:

    U(t) = W(t) X(t),          W = U^(n) (x) U^(p),
    U^(i)(t) = exp(i theta^(i)(t) sigma_1 / 2),

with the precession angle the exact integral of the effective field,

    2 theta^(i) = eta (gtilde^(i) + 1) sn(u, mu)
                  - (eta gamma_z / mu) arcsin(mu sn(u, mu)).

The residual factor obeys dX/dt = -i H'_I X with
H'_I = W^+ H_I W, and splits further as X = exp(-i (g/4) psi(t) S) Y(t),
S = sum_k sigma_k (x) sigma_k and psi(t) = int_0^t cos(theta_minus).
Y is the time-ordered exponential of the rotating-frame coupling

    V(t) = (g/4) [ (1 - cos th_-) s1(x)s1
                   + sin th_- (cos(g psi) (s3(x)s2 - s2(x)s3)
                               - sin(g psi) (s1(x)1 - 1(x)s1)) ],

which vanishes identically when the two rescaled gyromagnetic ratios are
equal.  All of this is verified against the direct integration in the
test suite; the closed forms must agree with brute force to 1e-6 or
better over a full period.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .elliptic import jacobi
from .errors import DomainError, IntegratorError, InvalidStateError
from .pauli import (IDENTITY4, PAULI, SIGMA0, SIGMA1, SIGMA_10, SIGMA_32,
                    SIGMA_DOT_SIGMA, hermiticity_defect)
from .spinfield import BoundStateParams, interaction_hamiltonian
from .trajectory import KinematicParams, LaserParams, _asinc

HamiltonianSource = Callable[[float], np.ndarray]

_S11 = np.kron(PAULI[1], PAULI[1])
_S22 = np.kron(PAULI[2], PAULI[2])
_S33 = np.kron(PAULI[3], PAULI[3])

_TRACE_TOL = 1e-12
_HERM_TOL = 1e-12
_PSD_TOL = -1e-10


def validate_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Check the two-qubit state invariants, returning rho as complex ndarray.

    Raises InvalidStateError unless rho is 4x4, Hermitian to 1e-12,
    unit-trace to 1e-12 and PSD to -1e-10.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidStateError(f"density matrix must be 4x4, got {rho.shape}")
    if hermiticity_defect(rho) > _HERM_TOL:
        raise InvalidStateError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > _TRACE_TOL or abs(np.trace(rho).imag) > _TRACE_TOL:
        raise InvalidStateError("density matrix trace differs from 1")
    if np.linalg.eigvalsh(rho).min() < _PSD_TOL:
        raise InvalidStateError("density matrix has a negative eigenvalue")
    return rho


def expm_hermitian(H: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """exp(-1j * scale * H) for Hermitian H, via eigendecomposition."""
    w, V = np.linalg.eigh(H)
    return (V * np.exp(-1j * scale * w)) @ V.conj().T


def _check_tol(tol: float) -> float:
    if not (1e-14 < tol < 1e-4):
        raise DomainError(f"tolerance must lie in (1e-14, 1e-4), got {tol}")
    return float(tol)


def _propagate_grid(H_of_t: HamiltonianSource, t_grid: Sequence[float],
                    tol: float) -> list[np.ndarray]:
    """Propagators U(t_k) for every grid time, t_grid[0] == 0."""
    t_grid = [float(t) for t in t_grid]
    if not t_grid or t_grid[0] != 0.0:
        raise DomainError("time grid must start at 0")
    if any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise DomainError("time grid must be strictly increasing")

    span = t_grid[-1] - t_grid[0]
    U = IDENTITY4.copy()
    out = [U.copy()]
    if span == 0.0:
        return out

    h = span / 50.0
    h_min = span * 1e-13
    rejections = 0
    accepted = 0
    t = 0.0
    for t_stop in t_grid[1:]:
        while t < t_stop:
            h_try = min(h, t_stop - t)
            full = expm_hermitian(H_of_t(t + 0.5 * h_try), h_try)
            half1 = expm_hermitian(H_of_t(t + 0.25 * h_try), 0.5 * h_try)
            half2 = expm_hermitian(H_of_t(t + 0.75 * h_try), 0.5 * h_try)
            fine = half2 @ half1
            err = float(np.abs(full - fine).max())
            # per-unit-time budgeting, floored at the per-step roundoff scale
            budget = max(tol * h_try / span, 4e-15)
            if err <= budget:
                U = fine @ U
                t += h_try
                rejections = 0
                accepted += 1
                if accepted % 128 == 0:
                    # one Newton step of the polar projection keeps the
                    # accumulated matmul roundoff from degrading unitarity
                    U = 0.5 * U @ (3.0 * IDENTITY4 - U.conj().T @ U)
                grow = 5.0 if err == 0.0 else min(5.0, 0.9 * (budget / err) ** (1.0 / 3.0))
                h = h_try * max(grow, 1.0)
            else:
                rejections += 1
                h = h_try * max(0.2, 0.9 * (budget / err) ** (1.0 / 3.0))
                if h < h_min or rejections > 60:
                    raise IntegratorError(
                        f"step size underflow at t = {t:.6g} (h = {h:.3e})"
                    )
        U = 0.5 * U @ (3.0 * IDENTITY4 - U.conj().T @ U)
        out.append(U.copy())
    return out


def propagator_numeric(H_of_t: HamiltonianSource, t: float,
                       tol: float = 1e-9, t0: float = 0.0) -> np.ndarray:
    """Unitary propagator over [t0, t] by direct integration."""
    tol = _check_tol(tol)
    if t < t0:
        raise DomainError("propagation requires t >= t0")
    if t == t0:
        return IDENTITY4.copy()
    shifted = lambda s: H_of_t(s + t0)
    return _propagate_grid(shifted, [0.0, t - t0], tol)[-1]


def evolve_von_neumann(rho0: np.ndarray, H_of_t: HamiltonianSource,
                       t_grid: Sequence[float], tol: float = 1e-9) -> list[np.ndarray]:
    """Solve d rho/dt = -i [H(t), rho] on the given time grid.

    Returns one density matrix per grid time (the first grid time must be
    0 and yields the validated initial state).  States are produced by
    conjugating rho0 with the integrated propagator, so trace and
    spectrum are preserved structurally.
    """
    tol = _check_tol(tol)
    rho0 = validate_density_matrix(rho0)
    Us = _propagate_grid(H_of_t, t_grid, tol)
    return [U @ rho0 @ U.conj().T for U in Us]


# ---------------------------------------------------------------------------
# analytic factorization, linear polarization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrecessionAngles:
    """Single-spin angles, their difference and the accumulated psi."""

    theta_n: float
    theta_p: float
    theta_minus: float
    psi: float


def _require_linear(laser: LaserParams) -> None:
    if laser.epsilon != 0.0:
        raise DomainError(
            "the analytic factorization is only available for linear "
            f"polarization (epsilon = 0), got epsilon = {laser.epsilon}"
        )


def precession_angle(t: float, which: str, laser: LaserParams,
                     kin: KinematicParams, bound: BoundStateParams) -> float:
    """Exact accumulated precession angle theta^(i)(t), eps = 0 only.

    This is the running integral of the x-component of the effective
    field; at gamma_z = 1 it reduces to
    2 theta = eta (gtilde + 1) sn - arcsin(mu sn).
    """
    _require_linear(laser)
    gt = bound.gtilde(which)
    eta, gz, mu = laser.eta, kin.gamma_z, kin.mu
    sn = jacobi(kin.omega_L_prime * t, mu).sn
    return 0.5 * eta * ((gt + 1.0) * sn - gz * _asinc(mu, sn))


def theta_minus(t: float, laser: LaserParams, kin: KinematicParams,
                bound: BoundStateParams) -> float:
    """Angle difference theta^(n) - theta^(p) = (eta Delta / 2) sn(u, mu)."""
    _require_linear(laser)
    sn = jacobi(kin.omega_L_prime * t, kin.mu).sn
    return 0.5 * laser.eta * bound.Delta * sn


def _adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                      tol: float) -> float:
    """Recursive adaptive Simpson quadrature with absolute tolerance."""
    def simpson(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def recurse(x0, x2, f0, f1, f2, whole, eps, depth):
        xm = 0.5 * (x0 + x2)
        lm, rm = 0.5 * (x0 + xm), 0.5 * (xm + x2)
        flm, frm = f(lm), f(rm)
        left = simpson(x0, xm, f0, flm, f1)
        right = simpson(xm, x2, f1, frm, f2)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return (recurse(x0, xm, f0, flm, f1, left, eps / 2.0, depth - 1)
                + recurse(xm, x2, f1, frm, f2, right, eps / 2.0, depth - 1))

    if a == b:
        return 0.0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = simpson(a, b, fa, fm, fb)
    return recurse(a, b, fa, fm, fb, whole, tol, 48)


def psi_integral(t: float, laser: LaserParams, kin: KinematicParams,
                 bound: BoundStateParams, tol: float = 1e-10) -> float:
    """psi(t) = int_0^t cos(theta_minus(s)) ds, by adaptive Simpson."""
    _require_linear(laser)
    return _adaptive_simpson(
        lambda s: math.cos(theta_minus(s, laser, kin, bound)), 0.0, t, tol)


def precession_angles(t: float, laser: LaserParams, kin: KinematicParams,
                      bound: BoundStateParams) -> PrecessionAngles:
    """Bundle (theta_n, theta_p, theta_minus, psi) at time t."""
    tn = precession_angle(t, "n", laser, kin, bound)
    tp = precession_angle(t, "p", laser, kin, bound)
    return PrecessionAngles(theta_n=tn, theta_p=tp, theta_minus=tn - tp,
                            psi=psi_integral(t, laser, kin, bound))


def single_spin_propagator(t: float, which: str, laser: LaserParams,
                           kin: KinematicParams,
                           bound: BoundStateParams) -> np.ndarray:
    """U^(i)(t) = exp(i theta^(i) sigma_1 / 2), eps = 0 only."""
    th = precession_angle(t, which, laser, kin, bound)
    return math.cos(0.5 * th) * SIGMA0 + 1j * math.sin(0.5 * th) * SIGMA1


def local_propagator(t: float, laser: LaserParams, kin: KinematicParams,
                     bound: BoundStateParams) -> np.ndarray:
    """W(t) = U^(n)(t) (x) U^(p)(t)."""
    return np.kron(single_spin_propagator(t, "n", laser, kin, bound),
                   single_spin_propagator(t, "p", laser, kin, bound))


def interaction_picture_hamiltonian(t: float, laser: LaserParams,
                                    kin: KinematicParams,
                                    bound: BoundStateParams) -> np.ndarray:
    """H'_I(t) = W^+(t) H_I W(t), in closed form.

    Rotating both spins about x by their respective angles leaves the
    s1(x)s1 part alone and mixes the rest through theta_minus:

        H'_I = (g/4) [ s1(x)s1 + cos th_- (s2(x)s2 + s3(x)s3)
                       + sin th_- (s3(x)s2 - s2(x)s3) ].
    """
    g = bound.g_coupling
    thm = theta_minus(t, laser, kin, bound)
    return (g / 4.0) * (_S11 + math.cos(thm) * (_S22 + _S33)
                        + math.sin(thm) * SIGMA_32)


def euler_representation(psi: float) -> np.ndarray:
    """Closed form of exp(i psi sum_k sigma_k (x) sigma_k).

    exp(i psi S) = (1/2) e^{i psi} + (1/2) e^{-i psi} [cos 2psi
    + i S sin 2psi]; eigenvalues e^{i psi} (x3) and e^{-3 i psi}.
    """
    if math.isnan(psi) or math.isinf(psi):
        raise DomainError(f"psi must be finite, got {psi}")
    return (0.5 * np.exp(1j * psi) * IDENTITY4
            + 0.5 * np.exp(-1j * psi)
            * (math.cos(2.0 * psi) * IDENTITY4
               + 1j * math.sin(2.0 * psi) * SIGMA_DOT_SIGMA))


def interaction_term(t: float, laser: LaserParams, kin: KinematicParams,
                     bound: BoundStateParams, psi: float | None = None) -> np.ndarray:
    """Rotating-frame coupling V(t) whose ordered exponential is Y(t).

    Identically zero when Delta = 0.  psi may be passed in when already
    accumulated by the caller; otherwise it is integrated afresh.
    """
    g = bound.g_coupling
    thm = theta_minus(t, laser, kin, bound)
    if psi is None:
        psi = psi_integral(t, laser, kin, bound)
    return (g / 4.0) * ((1.0 - math.cos(thm)) * _S11
                        + math.sin(thm) * (math.cos(g * psi) * SIGMA_32
                                           - math.sin(g * psi) * SIGMA_10))


def _default_x_step(laser: LaserParams, bound: BoundStateParams) -> float:
    g = abs(bound.g_coupling)
    h = 0.01 / laser.omega_L
    if g > 0.0:
        h = min(h, 0.01 / g)
    return h


def _ordered_product_x(t: float, laser: LaserParams, kin: KinematicParams,
                       bound: BoundStateParams, n_steps: int) -> np.ndarray:
    """X(t) = exp(-i (g/4) psi(t) S) * T-ordered product of exp(-i V h)."""
    g = bound.g_coupling
    h = t / n_steps
    Y = IDENTITY4.copy()
    psi = 0.0
    cos_thm = lambda s: math.cos(theta_minus(s, laser, kin, bound))
    for k in range(n_steps):
        a = k * h
        f0, fq, fm, f3, f1 = (cos_thm(a), cos_thm(a + 0.25 * h),
                              cos_thm(a + 0.5 * h), cos_thm(a + 0.75 * h),
                              cos_thm(a + h))
        psi_mid = psi + (h / 12.0) * (f0 + 4.0 * fq + fm)
        V = interaction_term(a + 0.5 * h, laser, kin, bound, psi=psi_mid)
        Y = expm_hermitian(V, h) @ Y
        psi += (h / 12.0) * (f0 + 4.0 * fq + 2.0 * fm + 4.0 * f3 + f1)
    E = euler_representation(-0.25 * g * psi)
    return E @ Y


def time_ordered_X(t: float, laser: LaserParams, kin: KinematicParams,
                   bound: BoundStateParams, step: float | None = None,
                   return_error: bool = False):
    """Interaction-picture factor X(t), eps = 0 only.

    Built as exp(-i (g/4) psi S) times the ordered product of midpoint
    exponentials of V with step h = min(0.01/w_L, 0.01/|g|); the result
    of the doubled (half-step) product is returned together with the
    doubling error estimate when requested.
    """
    _require_linear(laser)
    if t < 0.0:
        raise DomainError("time_ordered_X requires t >= 0")
    if t == 0.0:
        X = IDENTITY4.copy()
        return (X, 0.0) if return_error else X
    h = step if step is not None else _default_x_step(laser, bound)
    n = max(1, math.ceil(t / h))
    if t / n < 1e-12 * max(t, 1.0):
        raise IntegratorError("ordered-product step underflow")
    coarse = _ordered_product_x(t, laser, kin, bound, n)
    fine = _ordered_product_x(t, laser, kin, bound, 2 * n)
    err = float(np.abs(coarse - fine).max())
    return (fine, err) if return_error else fine


def factorized_propagator(t: float, laser: LaserParams, kin: KinematicParams,
                          bound: BoundStateParams,
                          step: float | None = None) -> np.ndarray:
    """Analytic propagator U(t) = W(t) X(t), eps = 0 only."""
    return local_propagator(t, laser, kin, bound) @ time_ordered_X(
        t, laser, kin, bound, step=step)


def perturbative_delta_rho_werner(t: float, p: float, laser: LaserParams,
                                  bound: BoundStateParams) -> np.ndarray:
    """Leading-order state change of a Werner state under the laser.

    Equals i [V(t), rho_W] with the leading-order inputs
    theta_minus = (eta Delta / 2) sin(w_L t) and psi = t:

        delta rho = -(p g / 4) sin(th_-) [cos(g t) (s1(x)1 - 1(x)s1)
                                          + sin(g t) (s3(x)s2 - s2(x)s3)].

    Traceless and Hermitian; vanishes at t = 0 and for p = 0.
    """
    if abs(p) > 1.0:
        raise DomainError(f"|p| must be <= 1, got {p}")
    g = bound.g_coupling
    thm = 0.5 * laser.eta * bound.Delta * math.sin(laser.omega_L * t)
    return (-(p * g / 4.0) * math.sin(thm)
            * (math.cos(g * t) * SIGMA_10 + math.sin(g * t) * SIGMA_32))
