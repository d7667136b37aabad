import math

import numpy as np
import pytest
from scipy.linalg import expm

from laserspin import (BoundStateParams, DomainError, IntegratorError,
                       InvalidStateError, KinematicParams, LaserParams,
                       euler_representation, evolve_von_neumann,
                       factorized_propagator, interaction_hamiltonian,
                       interaction_picture_hamiltonian, interaction_term,
                       local_propagator, modulus_from_params,
                       perturbative_delta_rho_werner, precession_angle,
                       precession_angles, propagator_numeric, psi_integral,
                       single_spin_propagator, spin_hamiltonian, theta_minus,
                       time_ordered_X, validate_density_matrix, werner_state)
from laserspin.pauli import (IDENTITY4, SIGMA0, SIGMA1, SIGMA_10, SIGMA_32,
                             SIGMA_DOT_SIGMA, hermiticity_defect)

from conftest import random_density_matrix


def linear(eta, gtilde_n, gtilde_p, g):
    laser = LaserParams(eta=eta, epsilon=0.0)
    kin = modulus_from_params(laser, 1.0)
    bound = BoundStateParams.from_gtildes(gtilde_n, gtilde_p, g_coupling=g)
    return laser, kin, bound


class TestStateValidation:
    def test_accepts_valid_state(self):
        rho = validate_density_matrix(np.eye(4) / 4.0)
        assert rho.dtype == complex

    def test_rejects_non_hermitian(self):
        rho = np.eye(4, dtype=complex) / 4.0
        rho[0, 1] = 0.1
        with pytest.raises(InvalidStateError):
            validate_density_matrix(rho)

    def test_rejects_wrong_trace(self):
        with pytest.raises(InvalidStateError):
            validate_density_matrix(np.eye(4) / 3.9)

    def test_rejects_negative_eigenvalue(self):
        rho = np.diag([0.6, 0.5, -0.05, -0.05]).astype(complex)
        with pytest.raises(InvalidStateError):
            validate_density_matrix(rho)


class TestVonNeumann:
    def test_free_hamiltonian_freezes_state(self):
        rho0 = werner_state(0.6)
        out = evolve_von_neumann(rho0, lambda t: np.zeros((4, 4)),
                                 [0.0, 1.0, 5.0], tol=1e-9)
        for rho in out:
            assert np.abs(rho - rho0).max() < 1e-12

    def test_maximally_mixed_fixed_point(self, linear_scenario):
        laser, kin, bound = linear_scenario
        H = lambda t: spin_hamiltonian(t, laser, kin, bound)
        out = evolve_von_neumann(np.eye(4) / 4.0, H, [0.0, 2.0, 6.28], tol=1e-9)
        for rho in out:
            assert np.abs(rho - np.eye(4) / 4.0).max() < 1e-12

    def test_brute_force_product_oracle(self):
        # 1e5 uniform midpoint steps with an independent matrix exponential
        laser, kin, bound = linear(0.3, 4.0, 1.0, 0.1)
        H = lambda t: spin_hamiltonian(t, laser, kin, bound)
        T = 2.0 * math.pi
        n = 100_000
        h = T / n
        U = np.eye(4, dtype=complex)
        for k in range(n):
            U = expm(-1j * h * H((k + 0.5) * h)) @ U
        rho0 = werner_state(0.8)
        brute = U @ rho0 @ U.conj().T
        evolved = evolve_von_neumann(rho0, H, [0.0, T], tol=1e-9)[-1]
        assert np.abs(evolved - brute).max() < 1e-7

    def test_state_hygiene_and_spectrum(self, linear_scenario):
        laser, kin, bound = linear_scenario
        H = lambda t: spin_hamiltonian(t, laser, kin, bound)
        rho0 = werner_state(0.8)
        ref = np.sort(np.linalg.eigvalsh(rho0))
        grid = list(np.linspace(0.0, 4.0 * math.pi, 9))
        for rho in evolve_von_neumann(rho0, H, grid, tol=1e-9):
            assert hermiticity_defect(rho) < 1e-12
            assert abs(np.trace(rho).real - 1.0) < 1e-12
            assert np.linalg.eigvalsh(rho).min() > -1e-10
            assert np.abs(np.sort(np.linalg.eigvalsh(rho)) - ref).max() < 1e-8
            assert abs(np.trace(rho @ rho).real
                       - np.trace(rho0 @ rho0).real) < 1e-8

    def test_rejects_bad_grid(self, linear_scenario):
        laser, kin, bound = linear_scenario
        H = lambda t: spin_hamiltonian(t, laser, kin, bound)
        with pytest.raises(DomainError):
            evolve_von_neumann(werner_state(0.5), H, [0.5, 1.0], tol=1e-9)
        with pytest.raises(DomainError):
            evolve_von_neumann(werner_state(0.5), H, [0.0, 1.0, 1.0], tol=1e-9)

    def test_rejects_bad_tolerance(self, linear_scenario):
        laser, kin, bound = linear_scenario
        H = lambda t: spin_hamiltonian(t, laser, kin, bound)
        with pytest.raises(DomainError):
            evolve_von_neumann(werner_state(0.5), H, [0.0, 1.0], tol=1e-3)

    def test_rejects_invalid_initial_state(self, linear_scenario):
        laser, kin, bound = linear_scenario
        H = lambda t: spin_hamiltonian(t, laser, kin, bound)
        with pytest.raises(InvalidStateError):
            evolve_von_neumann(np.eye(4), H, [0.0, 1.0], tol=1e-9)

    def test_step_underflow(self):
        # noise-like gigantic Hamiltonian defeats any step size
        H = lambda t: 1e8 * math.sin(1e25 * t + 0.5) * np.kron(SIGMA1, SIGMA0)
        with pytest.raises(IntegratorError):
            propagator_numeric(H, 1.0, tol=1e-9)


class TestPropagator:
    def test_identity_at_zero(self, linear_scenario):
        laser, kin, bound = linear_scenario
        H = lambda t: spin_hamiltonian(t, laser, kin, bound)
        assert np.abs(propagator_numeric(H, 0.0, tol=1e-9) - IDENTITY4).max() == 0.0

    def test_constant_hamiltonian_spectral_oracle(self, bound):
        Hc = interaction_hamiltonian(bound) + 0.3 * np.kron(SIGMA1, SIGMA0)
        t = 2.7
        w, V = np.linalg.eigh(Hc)
        exact = (V * np.exp(-1j * t * w)) @ V.conj().T
        U = propagator_numeric(lambda s: Hc, t, tol=1e-10)
        assert np.abs(U - exact).max() < 1e-10

    def test_unitarity(self, linear_scenario):
        laser, kin, bound = linear_scenario
        H = lambda t: spin_hamiltonian(t, laser, kin, bound)
        U = propagator_numeric(H, 5.0, tol=1e-9)
        assert np.abs(U @ U.conj().T - IDENTITY4).max() < 1e-10

    def test_composition(self, linear_scenario):
        laser, kin, bound = linear_scenario
        H = lambda t: spin_hamiltonian(t, laser, kin, bound)
        t1, t2 = 1.7, 4.1
        U_full = propagator_numeric(H, t2, tol=1e-10)
        U_a = propagator_numeric(H, t1, tol=1e-10)
        U_b = propagator_numeric(H, t2, tol=1e-10, t0=t1)
        assert np.abs(U_b @ U_a - U_full).max() < 1e-9


class TestPrecessionAngles:
    def test_zero_at_origin(self, linear_scenario):
        laser, kin, bound = linear_scenario
        assert precession_angle(0.0, "n", laser, kin, bound) == 0.0

    def test_requires_linear_polarization(self, bound):
        laser = LaserParams(eta=0.2, epsilon=0.1)
        kin = modulus_from_params(laser, 1.0)
        with pytest.raises(DomainError):
            precession_angle(1.0, "n", laser, kin, bound)

    def test_pinned_zero_modulus_form(self):
        # with mu pinned to 0 the field integral gives
        # 2 theta = eta (gtilde + 1 - gamma_z) sin(u)
        eta, gt = 0.01, 3.0
        laser = LaserParams(eta=eta, epsilon=0.0)
        kin = KinematicParams(gamma_z=1.0, mu=0.0, omega_L_prime=1.0)
        bound = BoundStateParams.from_gtildes(gt, gt)
        for t in (0.4, 1.9):
            assert 2.0 * precession_angle(t, "n", laser, kin, bound) \
                == pytest.approx(eta * gt * math.sin(t), abs=1e-12)

    def test_derivative_is_effective_field(self, linear_scenario):
        from laserspin import effective_field
        laser, kin, bound = linear_scenario
        h = 1e-6
        for t in (0.0, 0.8, 3.3):
            fd = (precession_angle(t + h, "n", laser, kin, bound)
                  - precession_angle(t - h, "n", laser, kin, bound)) / (2 * h)
            assert fd == pytest.approx(
                effective_field(t, "n", laser, kin, bound).Bx, abs=1e-6)

    def test_derivative_at_origin_closed_form(self):
        laser, kin, bound = linear(0.5, 2.0, 2.0, 0.0)
        h = 1e-6
        fd = (precession_angle(h, "n", laser, kin, bound)
              - precession_angle(-h, "n", laser, kin, bound)) / (2 * h)
        # at u = 0: theta' = (eta w/2)[(gt+1) - gamma_z]
        assert fd == pytest.approx(0.5 * 0.5 * (3.0 - 1.0), abs=1e-6)

    def test_periodicity(self, linear_scenario):
        from laserspin import motion_period
        laser, kin, bound = linear_scenario
        T = motion_period(kin)
        for t in (0.3, 1.1):
            assert precession_angle(t + T, "n", laser, kin, bound) \
                == pytest.approx(precession_angle(t, "n", laser, kin, bound),
                                 abs=1e-12)

    @pytest.mark.parametrize("eta", [0.01, 0.03])
    def test_nonrelativistic_limit(self, eta):
        # the +1 and the arcsin term cancel at leading order, leaving
        # 2 theta = eta gtilde sin(w t) + O(eta^3)
        laser, kin, bound = linear(eta, 4.0, 1.0, 0.0)
        worst = max(
            abs(2.0 * precession_angle(t, "n", laser, kin, bound)
                - eta * 4.0 * math.sin(t))
            for t in np.linspace(0.0, 2.0 * math.pi, 50))
        assert worst < 10.0 * eta**3

    def test_theta_minus_closed_form(self, linear_scenario):
        from laserspin.elliptic import jacobi
        laser, kin, bound = linear_scenario
        for t in (0.5, 2.7):
            sn = jacobi(kin.omega_L_prime * t, kin.mu).sn
            expected = 0.5 * laser.eta * bound.Delta * sn
            assert theta_minus(t, laser, kin, bound) == pytest.approx(expected)
            angles = precession_angles(t, laser, kin, bound)
            assert angles.theta_minus == pytest.approx(
                angles.theta_n - angles.theta_p, abs=1e-15)

    def test_psi_accumulation(self, linear_scenario):
        laser, kin, bound = linear_scenario
        assert psi_integral(0.0, laser, kin, bound) == 0.0
        h = 1e-5
        for t in (0.7, 2.4):
            fd = (psi_integral(t + h, laser, kin, bound)
                  - psi_integral(t - h, laser, kin, bound)) / (2 * h)
            assert fd == pytest.approx(
                math.cos(theta_minus(t, laser, kin, bound)), abs=1e-8)
        # non-decreasing while |theta_minus| < pi/2 (always true here)
        psis = [psi_integral(float(t), laser, kin, bound)
                for t in np.linspace(0.0, 6.0, 25)]
        assert all(b >= a for a, b in zip(psis, psis[1:]))


class TestSingleSpinPropagator:
    def test_identity_at_zero(self, linear_scenario):
        laser, kin, bound = linear_scenario
        U = single_spin_propagator(0.0, "n", laser, kin, bound)
        assert np.abs(U - SIGMA0).max() == 0.0

    def test_flip_form_at_pi(self):
        # the closed form at theta = pi is the x flip i sigma_1
        U = math.cos(math.pi / 2) * SIGMA0 + 1j * math.sin(math.pi / 2) * SIGMA1
        assert np.abs(U - 1j * SIGMA1).max() < 1e-15

    def test_matches_matrix_exponential(self, linear_scenario):
        laser, kin, bound = linear_scenario
        for t in (0.6, 2.9):
            th = precession_angle(t, "p", laser, kin, bound)
            brute = expm(0.5j * th * SIGMA1)
            U = single_spin_propagator(t, "p", laser, kin, bound)
            assert np.abs(U - brute).max() < 1e-14

    def test_conjugation_reproduces_interaction_picture(self):
        laser, kin, bound = linear(0.4, 3.5, 2.0, 0.07)
        for t in (0.0, 0.7, 3.1):
            W = local_propagator(t, laser, kin, bound)
            direct = W.conj().T @ interaction_hamiltonian(bound) @ W
            closed = interaction_picture_hamiltonian(t, laser, kin, bound)
            assert np.abs(direct - closed).max() < 1e-12


class TestInteractionPicture:
    def test_equal_ratios_leave_interaction_invariant(self):
        laser, kin, bound = linear(0.4, 2.0, 2.0, 0.1)
        for t in (0.9, 4.4):
            assert np.abs(interaction_picture_hamiltonian(t, laser, kin, bound)
                          - interaction_hamiltonian(bound)).max() < 1e-15

    def test_initial_time(self, linear_scenario):
        laser, kin, bound = linear_scenario
        assert np.abs(interaction_picture_hamiltonian(0.0, laser, kin, bound)
                      - interaction_hamiltonian(bound)).max() < 1e-15

    def test_hermitian(self, linear_scenario):
        laser, kin, bound = linear_scenario
        for t in (0.4, 1.8):
            assert hermiticity_defect(
                interaction_picture_hamiltonian(t, laser, kin, bound)) < 1e-15


class TestEulerRepresentation:
    def test_identity_at_zero(self):
        assert np.abs(euler_representation(0.0) - IDENTITY4).max() == 0.0

    def test_spectrum(self):
        psi = 0.7
        ev = np.linalg.eigvals(euler_representation(psi))
        expected = sorted([np.exp(1j * psi)] * 3 + [np.exp(-3j * psi)],
                          key=lambda z: (z.real, z.imag))
        got = sorted(ev, key=lambda z: (z.real, z.imag))
        assert np.abs(np.array(got) - np.array(expected)).max() < 1e-12

    def test_against_matrix_exponential(self):
        rng = np.random.default_rng(7)
        for psi in rng.uniform(-2 * math.pi, 2 * math.pi, 25):
            brute = expm(1j * psi * SIGMA_DOT_SIGMA)
            assert np.abs(euler_representation(float(psi)) - brute).max() < 1e-12

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            euler_representation(float("nan"))


class TestTimeOrderedX:
    def test_identity_at_zero(self, linear_scenario):
        laser, kin, bound = linear_scenario
        assert np.abs(time_ordered_X(0.0, laser, kin, bound) - IDENTITY4).max() \
            == 0.0

    def test_equal_ratios_close_analytically(self):
        # Delta = 0: V vanishes, psi = t, X = exp(-i (g/4) t Sigma)
        g = 0.08
        laser, kin, bound = linear(0.4, 2.0, 2.0, g)
        for t in (0.9, 5.3):
            X = time_ordered_X(t, laser, kin, bound)
            assert np.abs(X - euler_representation(-0.25 * g * t)).max() < 1e-10

    def test_unitary_with_small_doubling_error(self):
        laser, kin, bound = linear(0.2, 3.0, 2.0, 0.05)
        X, err = time_ordered_X(4.0, laser, kin, bound, return_error=True)
        assert np.abs(X @ X.conj().T - IDENTITY4).max() < 1e-10
        assert err < 1e-8

    def test_factorization_against_direct_integration(self):
        laser, kin, bound = linear(0.2, 3.0, 2.0, 0.05)
        H = lambda t: spin_hamiltonian(t, laser, kin, bound)
        for t in (1.5, 2.0 * math.pi):
            U = propagator_numeric(H, t, tol=1e-9)
            WX = factorized_propagator(t, laser, kin, bound)
            assert np.abs(U - WX).max() < 1e-6

    def test_rejects_negative_time(self, linear_scenario):
        laser, kin, bound = linear_scenario
        with pytest.raises(DomainError):
            time_ordered_X(-1.0, laser, kin, bound)


class TestPerturbativeWernerChange:
    def test_zero_at_origin(self, linear_scenario):
        laser, _, bound = linear_scenario
        assert np.abs(perturbative_delta_rho_werner(0.0, 0.8, laser,
                                                    bound)).max() == 0.0

    def test_maximally_mixed_is_inert(self, linear_scenario):
        laser, _, bound = linear_scenario
        assert np.abs(perturbative_delta_rho_werner(3.0, 0.0, laser,
                                                    bound)).max() == 0.0

    def test_traceless_hermitian(self, linear_scenario):
        laser, _, bound = linear_scenario
        d = perturbative_delta_rho_werner(2.2, 0.7, laser, bound)
        assert abs(np.trace(d)) < 1e-15
        assert hermiticity_defect(d) < 1e-15

    def test_commutator_oracle(self):
        eta, p, delta, g, t = 0.1, 0.8, 2.0, 0.03, 5.0
        laser = LaserParams(eta=eta, epsilon=0.0)
        bound = BoundStateParams.from_gtildes(3.0, 3.0 - delta, g_coupling=g)
        thm = 0.5 * eta * delta * math.sin(t)
        v_lead = (g / 4.0) * math.sin(thm) * (
            math.cos(g * t) * SIGMA_32 - math.sin(g * t) * SIGMA_10)
        rho_w = werner_state(p)
        brute = 1j * (v_lead @ rho_w - rho_w @ v_lead)
        closed = perturbative_delta_rho_werner(t, p, laser, bound)
        assert np.abs(brute - closed).max() < 1e-12

    def test_rejects_bad_p(self, linear_scenario):
        laser, _, bound = linear_scenario
        with pytest.raises(DomainError):
            perturbative_delta_rho_werner(1.0, 1.5, laser, bound)

    def test_interaction_term_first_order_consistency(self):
        # the leading-order commutator input matches interaction_term's
        # exact form to O(theta_minus^2)
        laser, kin, bound = linear(0.05, 4.0, 1.0, 0.1)
        for t in (1.0, 4.0):
            exact = interaction_term(t, laser, kin, bound)
            thm = theta_minus(t, laser, kin, bound)
            psi = psi_integral(t, laser, kin, bound)
            lead = (bound.g_coupling / 4.0) * math.sin(thm) * (
                math.cos(bound.g_coupling * psi) * SIGMA_32
                - math.sin(bound.g_coupling * psi) * SIGMA_10)
            assert np.abs(exact - lead).max() < 0.1 * abs(thm) ** 2 + 1e-15
