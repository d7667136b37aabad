"""Built-in oracle runs behind `laserspin validate`.

Each oracle re-derives its expected values through an independent route
(quadrature, brute-force products, direct commutators) and reports the
measured deviation against a frozen tolerance.  A deliberate modulus
perturbation can be injected to prove the Lorentz oracle actually bites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .elliptic import jacobi
from .entanglement import (concurrence_product_analytic,
                           concurrence_werner_analytic, product_state,
                           werner_state, wootters_concurrence)
from .errors import ConfigError
from .evolution import (_propagate_grid, euler_representation,
                        factorized_propagator,
                        perturbative_delta_rho_werner)
from .pauli import SIGMA_10, SIGMA_32, SIGMA_DOT_SIGMA
from .spinfield import BoundStateParams, spin_hamiltonian
from .trajectory import (KinematicParams, LaserParams, lorentz_residual,
                         modulus_from_params, motion_period,
                         plane_wave_invariant)


@dataclass(frozen=True)
class OracleResult:
    name: str
    passed: bool
    max_dev: float
    tol: float
    detail: str = ""


def _fixture_bound(g_coupling: float = 0.1) -> BoundStateParams:
    return BoundStateParams.from_gtildes(4.0, 1.0, g_coupling=g_coupling)


# --- elliptic inversion oracle ---------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def incomplete_first_kind(phi: float, mu: float) -> float:
    """F(phi, mu) = int_0^phi dtheta / sqrt(1 - mu^2 sin^2 theta).

    Composite 24-node Gauss-Legendre on panels of width <= pi/8; fully
    independent of the AGM evaluation path.
    """
    n_panels = max(1, math.ceil(abs(phi) / (math.pi / 8.0)))
    edges = np.linspace(0.0, phi, n_panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        theta = 0.5 * (a + b) + half * _GL_NODES
        total += half * float(np.sum(
            _GL_WEIGHTS / np.sqrt(1.0 - (mu * np.sin(theta)) ** 2)))
    return total


def oracle_elliptic() -> OracleResult:
    """Pythagorean identities and quadrature inversion on a 50 x 20 grid."""
    worst = 0.0
    phis = np.linspace(0.0, 3.0 * math.pi, 50)
    for mu in np.linspace(0.0, 0.95, 20):
        for phi in phis:
            u = incomplete_first_kind(float(phi), float(mu))
            sn, cn, dn = jacobi(u, float(mu))
            worst = max(worst,
                        abs(sn - math.sin(phi)),
                        abs(sn * sn + cn * cn - 1.0),
                        abs(dn * dn + (mu * sn) ** 2 - 1.0))
    return OracleResult("elliptic", worst < 1e-12, worst, 1e-12,
                        "inversion of the first-kind integral + identities")


# --- Lorentz-force residual oracle ------------------------------------------

def oracle_lorentz(mu_error: float = 0.0) -> OracleResult:
    """Equation-of-motion residual and light-front invariant on the grid."""
    bound = _fixture_bound()
    worst_res = 0.0
    worst_inv = 0.0
    for eta in (0.1, 0.5, 0.9):
        for eps in (0.0, 0.3, 0.6):
            laser = LaserParams(eta=eta, epsilon=eps)
            kin = modulus_from_params(laser, 1.0)
            if mu_error:
                kin = KinematicParams(
                    gamma_z=kin.gamma_z,
                    mu=min(kin.mu * (1.0 + mu_error), 0.999),
                    omega_L_prime=kin.omega_L_prime)
            times = np.linspace(0.0, motion_period(kin), 1000)
            inv0 = plane_wave_invariant(0.0, laser, kin)
            for t in times:
                worst_res = max(worst_res,
                                lorentz_residual(float(t), laser, kin, bound))
                worst_inv = max(worst_inv,
                                abs(plane_wave_invariant(float(t), laser, kin)
                                    - inv0))
    passed = worst_res < 1e-6 and worst_inv < 1e-8
    return OracleResult(
        "lorentz", passed, worst_res, 1e-6,
        f"residual {worst_res:.3e}, invariant drift {worst_inv:.3e}")


# --- factorization oracle ----------------------------------------------------

def oracle_factorization(tol_numeric: float = 1e-8) -> OracleResult:
    """|| U - W X ||_max over one period on the small-parameter grid."""
    worst = 0.0
    for eta in (0.1, 0.2):
        for delta in (0.5, 1.5):
            for g in (0.02, 0.08):
                laser = LaserParams(eta=eta, epsilon=0.0)
                kin = modulus_from_params(laser, 1.0)
                bound = BoundStateParams.from_gtildes(
                    2.0, 2.0 - delta, g_coupling=g)
                times = np.linspace(0.0, 2.0 * math.pi, 9)
                H = lambda t: spin_hamiltonian(t, laser, kin, bound)
                Us = _propagate_grid(H, list(times), tol_numeric)
                for t, U in zip(times[1:], Us[1:]):
                    WX = factorized_propagator(float(t), laser, kin, bound)
                    worst = max(worst, float(np.abs(U - WX).max()))
    return OracleResult("factorization", worst < 1e-6, worst, 1e-6,
                        "analytic W*X vs direct integration")


# --- Eulerian representation oracle ------------------------------------------

def oracle_euler(n: int = 100) -> OracleResult:
    rng = np.random.default_rng(20240817)
    worst = 0.0
    for psi in rng.uniform(-2.0 * math.pi, 2.0 * math.pi, n):
        closed = euler_representation(float(psi))
        brute = expm(1j * float(psi) * SIGMA_DOT_SIGMA)
        worst = max(worst, float(np.abs(closed - brute).max()))
    return OracleResult("euler", worst < 1e-12, worst, 1e-12,
                        f"{n} random angles vs Pade exponential")


# --- perturbative commutator oracle ------------------------------------------

def oracle_commutator() -> OracleResult:
    """delta rho_W against the direct commutator with leading-order inputs."""
    worst = 0.0
    for eta, delta, g, p, t in [
        (0.1, 2.0, 0.03, 0.8, 5.0),
        (0.05, 3.0, 0.1, 0.5, 1.3),
        (0.3, 1.0, 0.25, -0.2, 7.7),
    ]:
        laser = LaserParams(eta=eta, epsilon=0.0)
        bound = BoundStateParams.from_gtildes(1.0 + delta, 1.0, g_coupling=g)
        rho_w = werner_state(p)
        thm = 0.5 * eta * delta * math.sin(t)
        v_lead = (g / 4.0) * math.sin(thm) * (
            math.cos(g * t) * SIGMA_32 - math.sin(g * t) * SIGMA_10)
        brute = 1j * (v_lead @ rho_w - rho_w @ v_lead)
        closed = perturbative_delta_rho_werner(t, p, laser, bound)
        worst = max(worst, float(np.abs(brute - closed).max()))
    return OracleResult("commutator", worst < 1e-12, worst, 1e-12,
                        "closed form vs i[V, rho_W]")


# --- full-evolution concurrence oracle ----------------------------------------

def oracle_concurrence() -> OracleResult:
    details = []
    passed = True
    worst = 0.0

    # Werner stability at eta = 0.05, p = 0.8 over one period
    eta, p = 0.05, 0.8
    laser = LaserParams(eta=eta, epsilon=0.0)
    kin = modulus_from_params(laser, 1.0)
    bound = _fixture_bound()
    times = np.linspace(0.0, 2.0 * math.pi, 40)
    H = lambda t: spin_hamiltonian(t, laser, kin, bound)
    Us = _propagate_grid(H, list(times), 1e-8)
    rho_w = werner_state(p)
    dev_w = max(abs(wootters_concurrence(U @ rho_w @ U.conj().T)
                    - concurrence_werner_analytic(p)) for U in Us)
    passed &= dev_w < 10.0 * eta * eta
    worst = max(worst, dev_w)
    details.append(f"werner dev {dev_w:.3e}")

    # product-state tracking and the Delta = 0 null over two periods
    alpha, beta, g, eta = 0.999, 0.001, 0.1, 0.3
    laser = LaserParams(eta=eta, epsilon=0.0)
    kin = modulus_from_params(laser, 1.0)
    times = np.linspace(0.0, 4.0 * math.pi, 80)
    rho0 = product_state(alpha, beta)
    for delta, label in ((3.0, "tracking"), (0.0, "null")):
        bound = BoundStateParams.from_gtildes(4.0, 4.0 - delta, g_coupling=g)
        H = lambda t: spin_hamiltonian(t, laser, kin, bound)
        Us = _propagate_grid(H, list(times), 1e-8)
        cs = [wootters_concurrence(U @ rho0 @ U.conj().T) for U in Us]
        if label == "tracking":
            dev = max(abs(c - concurrence_product_analytic(
                float(t), alpha, beta, eta, g, delta))
                for c, t in zip(cs, times))
            passed &= dev < 10.0 * eta * eta
            details.append(f"tracking dev {dev:.3e}")
        else:
            dev = max(cs)
            passed &= dev < 1e-10
            details.append(f"null max C {dev:.3e}")
        worst = max(worst, dev)

    return OracleResult("concurrence", bool(passed), worst, 10.0 * 0.3 * 0.3,
                        "; ".join(details))


ORACLES = {
    "elliptic": oracle_elliptic,
    "lorentz": oracle_lorentz,
    "factorization": oracle_factorization,
    "euler": oracle_euler,
    "commutator": oracle_commutator,
    "concurrence": oracle_concurrence,
}


def run_validate(name_filter: str | None = None,
                 mu_error: float = 0.0) -> tuple[list[OracleResult], int]:
    """Run the oracle suite; returns results and the process exit code."""
    names = list(ORACLES)
    if name_filter is not None:
        if name_filter not in ORACLES:
            raise ConfigError(
                f"unknown oracle '{name_filter}'; choose from {', '.join(names)}")
        names = [name_filter]
    results = []
    for name in names:
        if name == "lorentz":
            results.append(oracle_lorentz(mu_error=mu_error))
        else:
            results.append(ORACLES[name]())
    code = 0 if all(r.passed for r in results) else 1
    return results, code
