"""Jacobi elliptic functions sn, cn, dn, the amplitude am, and complete K.

Everything is computed from scratch with the descending Landen / AGM
recursion (absolute tolerance 1e-14, hard cap of 32 iterations), for a
real argument u and a modulus mu in the fundamental domain 0 <= mu < 1.
No special-function library is involved, so these routines can be checked
against independent quadrature oracles.

Conventions: the modulus mu (not the parameter m = mu**2) is passed
everywhere.  am(u) is returned unwrapped: am(u + 2K) = am(u) + pi with no
branch jumps, which the trajectory code relies on for the longitudinal
drift.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

from .errors import DomainError

_AGM_TOL = 1e-14
_AGM_MAX_ITER = 32


class JacobiTriple(NamedTuple):
    sn: float
    cn: float
    dn: float


def _check_mu(mu: float) -> float:
    mu = float(mu)
    if math.isnan(mu) or not (0.0 <= mu < 1.0):
        raise DomainError(f"modulus must satisfy 0 <= mu < 1, got {mu}")
    return mu


@lru_cache(maxsize=256)
def _agm_table(mu: float) -> tuple[tuple[float, ...], tuple[float, ...], float]:
    """AGM scales (a_n, c_n) for the descending Landen recursion, plus K."""
    a = 1.0
    b = math.sqrt((1.0 - mu) * (1.0 + mu))
    c = mu
    a_seq = [a]
    c_seq = [c]
    for _ in range(_AGM_MAX_ITER):
        if abs(c) <= _AGM_TOL:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        a_seq.append(a)
        c_seq.append(c)
    K = math.pi / (2.0 * a_seq[-1])
    return tuple(a_seq), tuple(c_seq), K


def complete_K(mu: float) -> float:
    """Complete elliptic integral of the first kind, K(mu).

    Quarter period of sn and cn in u; monotone increasing in mu, with
    K(0) = pi/2 and a logarithmic divergence as mu -> 1.
    """
    mu = _check_mu(mu)
    return _agm_table(mu)[2]


def _am_core(u: float, mu: float) -> float:
    """Amplitude for 0 <= u < 2K by descending Landen transformation."""
    a_seq, c_seq, _ = _agm_table(mu)
    n = len(a_seq) - 1
    phi = (2.0 ** n) * a_seq[n] * u
    for k in range(n, 0, -1):
        s = c_seq[k] / a_seq[k] * math.sin(phi)
        # roundoff can push |s| infinitesimally past 1
        s = max(-1.0, min(1.0, s))
        phi = 0.5 * (phi + math.asin(s))
    return phi


def _reduce(u: float, mu: float) -> tuple[int, float, float]:
    """Split u = 2nK + u_r with u_r in [0, 2K); returns (n, u_r, K)."""
    K = _agm_table(mu)[2]
    n = math.floor(u / (2.0 * K))
    u_r = u - 2.0 * n * K
    return n, u_r, K


def jacobi_am(u: float, mu: float) -> float:
    """Unwrapped Jacobi amplitude am(u, mu).

    Continuous and monotone increasing in u, am(0) = 0, and
    am(u + 2K) = am(u) + pi.  The half-period count is accumulated from
    floor(u / 2K) so no arcsin branch wrapping ever occurs.
    """
    mu = _check_mu(mu)
    u = float(u)
    if math.isnan(u) or math.isinf(u):
        raise DomainError(f"argument u must be finite, got {u}")
    if mu == 0.0:
        return u
    n, u_r, _ = _reduce(u, mu)
    return n * math.pi + _am_core(u_r, mu)


def jacobi(u: float, mu: float) -> JacobiTriple:
    """Jacobi elliptic triple (sn, cn, dn) at argument u, modulus mu.

    Satisfies sn**2 + cn**2 = 1 and dn**2 + mu**2 sn**2 = 1; sn is odd
    and cn, dn even in u; sn, cn have period 4K and dn period 2K.
    """
    mu = _check_mu(mu)
    u = float(u)
    if math.isnan(u) or math.isinf(u):
        raise DomainError(f"argument u must be finite, got {u}")
    if mu == 0.0:
        return JacobiTriple(math.sin(u), math.cos(u), 1.0)
    n, u_r, _ = _reduce(u, mu)
    phi = _am_core(u_r, mu)
    sign = -1.0 if n % 2 else 1.0
    s, c = math.sin(phi), math.cos(phi)
    dn = math.sqrt(1.0 - (mu * s) * (mu * s))
    return JacobiTriple(sign * s, sign * c, dn)
