import numpy as np
import pytest

from ionotto.lindblad import (
    DegenerateSteadyStateError,
    EquilibrationError,
    LindbladModel,
    equilibrate,
    evolve,
    expectation,
    liouvillian_matrix,
    steady_state,
    trace_norm,
)
from ionotto.operators import (
    SpaceLayout,
    destroy,
    hermitian_propagator,
    ketbra,
    kron,
    number_op,
    sigma_minus,
    sigma_plus,
    sigma_z,
    thermal_state,
    vacuum_state,
)

H2_ZERO = np.zeros((2, 2), dtype=complex)


def thermal_two_level_model(gamma, n):
    """Bath contact channels with the rate-balance fixed point
    p_e = n / (1 + 2 n)."""
    return LindbladModel(
        H2_ZERO,
        ((gamma * (1 + n), sigma_minus()), (gamma * n, sigma_plus())),
        SpaceLayout((2,)),
        slow_rate=gamma * (1 + 2 * n) / 2,
    )


class TestModelValidation:
    def test_rejects_non_hermitian_hamiltonian(self):
        with pytest.raises(ValueError):
            LindbladModel(np.array([[0, 1], [0, 0]], dtype=complex), ())

    def test_rejects_negative_rate(self):
        with pytest.raises(ValueError):
            LindbladModel(H2_ZERO, ((-1.0, sigma_minus()),))

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValueError):
            LindbladModel(H2_ZERO, ((1.0, destroy(3)),))


class TestEvolve:
    def test_unitary_limit_phase(self):
        # equal superposition under H = sigma_z / 2 for t = pi: the
        # coherence picks up e^{i pi} = -1, populations stay put
        model = LindbladModel(sigma_z() / 2, ())
        plus = 0.5 * np.ones((2, 2), dtype=complex)
        report = evolve(model, plus, np.pi)
        final = report.final_state
        assert abs(final[0, 0] - 0.5) < 1e-9
        assert abs(final[1, 1] - 0.5) < 1e-9
        assert abs(final[0, 1] + 0.5) < 1e-8
        assert report.max_trace_drift < 1e-10

    def test_pure_decay(self):
        gamma = 0.8
        model = LindbladModel(H2_ZERO, ((gamma, sigma_minus()),))
        report = evolve(model, ketbra(2, 1, 1), 2.0)
        assert abs(report.final_state[1, 1].real - np.exp(-gamma * 2.0)) < 1e-8

    def test_rate_equation_fixed_point(self):
        # two-level balance gamma (1+n) p_e = gamma n p_g
        model = thermal_two_level_model(1.0, 0.6)
        report = evolve(model, ketbra(2, 1, 1), 20.0)
        assert abs(report.final_state[1, 1].real - 0.6 / 2.2) < 1e-6

    def test_matches_exact_unitary(self):
        rng = np.random.default_rng(11)
        m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        h = m + m.conj().T
        model = LindbladModel(h, ())
        psi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        psi /= np.linalg.norm(psi)
        rho0 = np.outer(psi, psi.conj())
        t = 1.3
        u = hermitian_propagator(h, t)
        exact = u @ rho0 @ u.conj().T
        report = evolve(model, rho0, t)
        assert np.abs(report.final_state - exact).max() < 1e-8

    def test_positivity_and_trace_invariants(self):
        model = thermal_two_level_model(0.5, 1.1)
        plus = 0.5 * np.ones((2, 2), dtype=complex)
        report = evolve(model, plus, 7.0)
        assert report.max_trace_drift <= 1e-8
        assert report.min_eigenvalue >= -1e-9

    def test_precondition_checks(self):
        model = thermal_two_level_model(1.0, 0.5)
        good = np.eye(2, dtype=complex) / 2
        with pytest.raises(ValueError):
            evolve(model, 2 * good, 1.0)  # trace 2
        with pytest.raises(ValueError):
            evolve(model, np.array([[1, 0.1], [0, 0]], dtype=complex), 1.0)
        with pytest.raises(ValueError):
            evolve(model, good, 1.0, tol=1e-3)  # above the allowed band
        with pytest.raises(ValueError):
            evolve(model, good, -1.0)

    def test_zero_time_is_identity(self):
        model = thermal_two_level_model(1.0, 0.5)
        rho = np.diag([0.25, 0.75]).astype(complex)
        report = evolve(model, rho, 0.0)
        assert np.array_equal(report.final_state, rho)
        assert report.steps_taken == 0


class TestExpectation:
    def test_identity(self):
        rho = np.diag([0.3, 0.7]).astype(complex)
        assert abs(expectation(np.eye(2, dtype=complex), rho) - 1.0) < 1e-15

    def test_sigma_z_ground(self):
        assert expectation(sigma_z(), ketbra(2, 0, 0)) == -1.0

    def test_thermal_mean_occupation(self):
        nbar, n_max = 1.0, 14  # n_max >= nbar + 6 sqrt(nbar)
        rho = thermal_state(n_max, nbar)
        q = nbar / (1 + nbar)
        weights = q ** np.arange(n_max)
        oracle = (np.arange(n_max) * weights).sum() / weights.sum()
        assert abs(expectation(number_op(n_max), rho) - oracle) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            expectation(np.eye(2, dtype=complex), np.eye(3, dtype=complex) / 3)

    def test_non_hermitian_returns_complex(self):
        value = expectation(sigma_plus(), 0.5 * np.ones((2, 2), dtype=complex))
        assert isinstance(value, complex)


class TestSteadyState:
    def test_zero_temperature_decay(self):
        model = LindbladModel(sigma_z() * 0.7, ((1.0, sigma_minus()),))
        assert np.abs(steady_state(model) - ketbra(2, 0, 0)).max() < 1e-10

    def test_thermal_rate_balance(self):
        model = thermal_two_level_model(1.0, 0.6)
        rho = steady_state(model)
        assert abs(rho[1, 1].real - 0.6 / 2.2) < 1e-10

    def test_population_inversion(self):
        gamma, n = 1.0, 0.8
        model = LindbladModel(
            H2_ZERO,
            ((gamma * (1 - n), sigma_minus()), (gamma * n, sigma_plus())),
        )
        rho = steady_state(model)
        assert abs(rho[1, 1].real - 0.8) < 1e-10

    def test_agrees_with_long_time_evolution(self):
        model = thermal_two_level_model(0.9, 1.3)
        direct = steady_state(model)
        evolved = evolve(model, ketbra(2, 0, 0), 60.0).final_state
        assert np.abs(direct - evolved).max() < 1e-6

    def test_requires_a_channel(self):
        with pytest.raises(ValueError):
            steady_state(LindbladModel(sigma_z(), ()))

    def test_degenerate_null_space_reported(self):
        zero_op = np.zeros((3, 3), dtype=complex)
        model = LindbladModel(np.zeros((3, 3), dtype=complex), ((1.0, zero_op),))
        with pytest.raises(DegenerateSteadyStateError):
            steady_state(model)


def small_joint_model(kappa=2 * np.pi, gamma=2 * np.pi * 5e-3, n=0.8, n_max=3):
    """Electron and two lossy modes, sized so explicit stepping stays cheap."""
    lamb = 0.01
    layout = SpaceLayout((2, n_max, n_max))
    a = destroy(n_max)
    g_down = np.sqrt(kappa * gamma * (1 + n))
    g_up = np.sqrt(kappa * gamma * n)
    s_x = 0.5 * g_down * sigma_minus()
    s_y = 0.5 * g_up * sigma_plus()
    ident = np.eye(n_max, dtype=complex)
    h = kron(s_x, a.conj().T, ident) + kron(s_y, ident, a.conj().T)
    h = h + h.conj().T
    return LindbladModel(
        h,
        ((kappa, layout.embed(a, 1)), (kappa, layout.embed(a, 2))),
        layout,
        slow_rate=gamma * (1 + 2 * n) / 2,
    ), layout


class TestEquilibrate:
    def test_two_level_window_convergence(self):
        model = thermal_two_level_model(1.0, 0.6)
        report = equilibrate(model, ketbra(2, 1, 1))
        assert report.method == "rk"
        assert report.last_change < 1e-8
        assert abs(report.final_state[1, 1].real - 0.6 / 2.2) < 1e-9
        assert report.max_trace_drift <= 1e-8
        assert report.min_eigenvalue >= -1e-9

    def test_implicit_matches_rk_on_joint_model(self):
        model, layout = small_joint_model()
        rho0 = kron(ketbra(2, 1, 1), vacuum_state(3), vacuum_state(3))
        rk = equilibrate(model, rho0, method="rk", max_windows=12)
        implicit = equilibrate(model, rho0, method="implicit")
        assert rk.method == "rk" and implicit.method == "implicit"
        assert np.abs(rk.final_state - implicit.final_state).max() < 1e-7
        assert implicit.rhs_residual < 1e-10

    def test_auto_picks_implicit_for_joint_models(self):
        model, _ = small_joint_model(n_max=4)  # dim 32 crosses the threshold
        rho0 = kron(ketbra(2, 0, 0), vacuum_state(4), vacuum_state(4))
        report = equilibrate(model, rho0)
        assert report.method == "implicit"

    def test_budget_exhaustion_raises(self):
        model = thermal_two_level_model(1.0, 0.6)
        with pytest.raises(EquilibrationError):
            equilibrate(model, ketbra(2, 1, 1), window=0.01, max_windows=2)

    def test_needs_window_or_slow_rate(self):
        model = LindbladModel(H2_ZERO, ((1.0, sigma_minus()),))
        with pytest.raises(ValueError):
            equilibrate(model, ketbra(2, 1, 1))


class TestLiouvillianMatrix:
    def test_sparse_matches_dense(self):
        model = thermal_two_level_model(0.7, 0.4)
        dense = liouvillian_matrix(model)
        sparse = liouvillian_matrix(model, sparse=True).toarray()
        assert np.abs(dense - sparse).max() < 1e-15

    def test_generator_annihilates_steady_state(self):
        model = thermal_two_level_model(1.0, 0.6)
        rho = steady_state(model)
        assert np.abs(liouvillian_matrix(model) @ rho.reshape(-1)).max() < 1e-12

    def test_trace_norm(self):
        assert abs(trace_norm(np.diag([0.5, -0.5])) - 1.0) < 1e-14
