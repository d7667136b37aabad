import hypothesis
import numpy as np
import pytest

from laserspin import BoundStateParams, LaserParams, modulus_from_params

hypothesis.settings.register_profile(
    "numeric", deadline=None, max_examples=60,
    suppress_health_check=[hypothesis.HealthCheck.too_slow])
hypothesis.settings.load_profile("numeric")


@pytest.fixture
def bound():
    """Equal-mass fixture system: gtilde = (4, 1), Delta = 3, g = 0.1."""
    return BoundStateParams.from_gtildes(4.0, 1.0, g_coupling=0.1)


@pytest.fixture
def linear_scenario(bound):
    """eta = 0.2 linearly polarized drive at gamma_z = 1."""
    laser = LaserParams(eta=0.2, epsilon=0.0)
    return laser, modulus_from_params(laser, 1.0), bound


def random_density_matrix(rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_unitary2(rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))
