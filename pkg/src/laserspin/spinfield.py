"""Effective two-spin Hamiltonian along the bound-state trajectory.

The spin of each constituent precesses in the closed-form field B^(i)(t)
built from the shared (u, mu) of the center-of-mass motion, with the
rescaled gyromagnetic ratio

    gtilde^(i) = (e^(i) / m^(i)) (M_B / q_B) g^(i).

The full Hamiltonian (hbar = 1, S = sigma / 2) is

    H_S(t) = -B^(n) . S (x) I  -  I (x) S . B^(p)  +  H_I,
    H_I = (g / 4) sum_k sigma_k (x) sigma_k,

so the spin-spin constant g carries angular-frequency units and H_I has
eigenvalues {g/4 (x3), -3g/4}.

omega_first_principles evaluates the precession vector directly from the
Larmor term in the instantaneous rest frame plus the Thomas correction,

    Omega = (e g / 2m) (B - v x E) + (1/2) (v x a),

using the lab fields and kinematics along the trajectory.  It reproduces
the closed-form components identically (the Thomas term completes them
exactly), which the tests use as the cross-check oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .elliptic import jacobi
from .errors import DomainError
from .pauli import PAULI, SIGMA_DOT_SIGMA, SIGMA0
from .trajectory import (KinematicParams, LaserParams, com_acceleration,
                         com_position, com_velocity, field_amplitude,
                         wave_fields)


@dataclass(frozen=True)
class BoundStateParams:
    """Masses, charges and gyromagnetic ratios of the two constituents.

    q_B is minus the net constituent charge and must be nonzero; the
    spin-spin constant g_coupling is the frozen contact value of the
    spin-spin potential, in angular-frequency units.
    """

    mass_n: float
    mass_p: float
    charge_n: float
    charge_p: float
    g_n: float
    g_p: float
    g_coupling: float = 0.0

    def __post_init__(self):
        if self.mass_n <= 0.0 or self.mass_p <= 0.0:
            raise DomainError("constituent masses must be positive")
        if self.charge_n + self.charge_p == 0.0:
            raise DomainError("bound state must carry net charge (q_B != 0)")

    @property
    def M_B(self) -> float:
        return self.mass_n + self.mass_p

    @property
    def q_B(self) -> float:
        return -(self.charge_n + self.charge_p)

    def gtilde(self, which: str) -> float:
        if which == "n":
            e, m, g = self.charge_n, self.mass_n, self.g_n
        elif which == "p":
            e, m, g = self.charge_p, self.mass_p, self.g_p
        else:
            raise DomainError(f"constituent tag must be 'n' or 'p', got {which!r}")
        return (e / m) * (self.M_B / self.q_B) * g

    @property
    def Delta(self) -> float:
        return self.gtilde("n") - self.gtilde("p")

    def swapped(self) -> "BoundStateParams":
        """Same system with the two constituent labels exchanged."""
        return BoundStateParams(self.mass_p, self.mass_n,
                                self.charge_p, self.charge_n,
                                self.g_p, self.g_n, self.g_coupling)

    @classmethod
    def from_gtildes(cls, gtilde_n: float, gtilde_p: float,
                     g_coupling: float = 0.0) -> "BoundStateParams":
        """Canonical equal-mass system realizing the given rescaled ratios."""
        mass, charge = 1.0, -0.5   # q_B = 1, M_B = 2
        factor = (mass / charge) * (1.0 / 2.0)   # q_B / M_B = 1/2
        return cls(mass_n=mass, mass_p=mass, charge_n=charge, charge_p=charge,
                   g_n=gtilde_n * factor, g_p=gtilde_p * factor,
                   g_coupling=g_coupling)


@dataclass(frozen=True)
class EffectiveField:
    """Precession vector components, in angular-frequency units."""

    Bx: float
    By: float
    Bz: float

    def as_array(self) -> np.ndarray:
        return np.array([self.Bx, self.By, self.Bz])


def _field_components(gt: float, sn: float, cn: float, dn: float,
                      laser: LaserParams, kin: KinematicParams) -> tuple:
    eta, eps = laser.eta, laser.epsilon
    gz, mu, wp = kin.gamma_z, kin.mu, kin.omega_L_prime
    root = math.sqrt(1.0 - eps * eps)
    return (
        eta * (wp / 2.0) * root * ((gt + 1.0) * dn - gz) * cn,
        eta * (wp / 2.0) * eps * ((gt + 1.0) * dn - gz * (1.0 - mu * mu)) * sn,
        -eta * eta * (laser.omega_L / 2.0) * eps * root * (gt - gz * dn),
    )


def effective_field(t: float, which: str, laser: LaserParams,
                    kin: KinematicParams, bound: BoundStateParams) -> EffectiveField:
    """Closed-form precession field B^(i)(t) for constituent which in {n, p}."""
    sn, cn, dn = jacobi(kin.omega_L_prime * t, kin.mu)
    bx, by, bz = _field_components(bound.gtilde(which), sn, cn, dn, laser, kin)
    return EffectiveField(Bx=bx, By=by, Bz=bz)


def omega_first_principles(t: float, which: str, laser: LaserParams,
                           kin: KinematicParams,
                           bound: BoundStateParams) -> np.ndarray:
    """Precession vector from the boosted Larmor term plus Thomas rotation.

    Evaluated with the bare constituent charge, mass and gyromagnetic
    ratio on the common center-of-mass trajectory (frozen relative
    motion); independent of the closed-form field components, so it acts
    as their oracle.
    """
    if which == "n":
        e, m, g = bound.charge_n, bound.mass_n, bound.g_n
    elif which == "p":
        e, m, g = bound.charge_p, bound.mass_p, bound.g_p
    else:
        raise DomainError(f"constituent tag must be 'n' or 'p', got {which!r}")
    amp = field_amplitude(laser, bound.M_B, bound.q_B)
    pos = com_position(t, laser, kin)
    v = com_velocity(t, laser, kin)
    acc = com_acceleration(t, laser, kin)
    E, B = wave_fields(t, pos, laser, amp)
    larmor = (e * g / (2.0 * m)) * (B - np.cross(v, E))
    thomas = 0.5 * np.cross(v, acc)
    return larmor + thomas


def interaction_hamiltonian(bound: BoundStateParams) -> np.ndarray:
    """Spin-spin contact term H_I = (g/4) sum_k sigma_k (x) sigma_k."""
    return (bound.g_coupling / 4.0) * SIGMA_DOT_SIGMA


# fixed single-spin operator basis: (s_k x 1) for k=1..3, then (1 x s_k)
_SINGLE_SPIN_BASIS = np.stack(
    [np.kron(PAULI[k], SIGMA0) for k in (1, 2, 3)]
    + [np.kron(SIGMA0, PAULI[k]) for k in (1, 2, 3)])


def spin_hamiltonian(t: float, laser: LaserParams, kin: KinematicParams,
                     bound: BoundStateParams) -> np.ndarray:
    """Full 4x4 Hermitian two-spin Hamiltonian H_S(t)."""
    sn, cn, dn = jacobi(kin.omega_L_prime * t, kin.mu)
    bn = _field_components(bound.gtilde("n"), sn, cn, dn, laser, kin)
    bp = _field_components(bound.gtilde("p"), sn, cn, dn, laser, kin)
    coeffs = -0.5 * np.array(bn + bp)
    H = np.tensordot(coeffs, _SINGLE_SPIN_BASIS, axes=1)
    if bound.g_coupling != 0.0:
        H += (bound.g_coupling / 4.0) * SIGMA_DOT_SIGMA
    return H
