import numpy as np
import pytest
import scipy.linalg

import zeropi


def _junction_free() -> zeropi.CircuitParams:
    return zeropi.CircuitParams.from_energies(e_j=0, e_l=1, e_c_sigma=0.5, e_cj=1)


def _small_device(phi_ext: float = 0.0) -> zeropi.CircuitParams:
    return zeropi.CircuitParams.from_ratios(
        omega_p_over_e_l=50,
        omega_p_over_e_c_sigma=50,
        omega_p_over_e_j=4,
        phi_ext=phi_ext,
    )


def test_junction_free_spectrum_matches_harmonic_rotor():
    p = _junction_free()
    g = zeropi.Grid2D(phi_max=8, n_phi=161, n_theta=40)
    solution = zeropi.lowest_eigenpairs(zeropi.assemble(p, zeropi.DisorderParams(), g), 6)
    exact = zeropi.harmonic_rotor_spectrum(p, 6)
    np.testing.assert_allclose(
        exact, [2**0.5, 2**0.5 + 1, 2**0.5 + 1, 1.5 * 8**0.5, 1.5 * 8**0.5 + 1, 1.5 * 8**0.5 + 1]
    )
    np.testing.assert_allclose(solution.energies, exact, rtol=2e-3)
    # Rotor doublets are exactly degenerate and must both be found.
    assert solution.energies[2] - solution.energies[1] < 1e-9
    assert solution.energies[5] - solution.energies[4] < 1e-9


def test_toy_potential_matches_separable_solves():
    p = _small_device()
    g = zeropi.Grid2D(phi_max=14, n_phi=141, n_theta=40)
    h = zeropi.assemble(p, zeropi.DisorderParams(), g, toy=True)
    solution = zeropi.lowest_eigenpairs(h, 8, method="sparse")
    np.testing.assert_allclose(
        solution.energies, zeropi.separable_toy_spectrum(p, g, 8), rtol=1e-6
    )


def test_tiny_grid_matches_dense_diagonalization():
    p = _small_device()
    g = zeropi.Grid2D(phi_max=1, n_phi=3, n_theta=3)
    h = zeropi.assemble(p, zeropi.DisorderParams(), g)
    sparse = zeropi.lowest_eigenpairs(h, 1, method="sparse")
    dense = scipy.linalg.eigvalsh(h.matrix.toarray())
    assert sparse.energies[0] == pytest.approx(dense[0], abs=1e-10)


def test_sparse_and_dense_agree():
    p = _small_device(phi_ext=0.4)
    d = zeropi.DisorderParams(delta_e_j=0.01, delta_c_j_rel=0.2)
    g = zeropi.Grid2D(phi_max=6, n_phi=31, n_theta=12)
    h = zeropi.assemble(p, d, g)
    assert h.dimension <= zeropi.DENSE_DIMENSION_LIMIT
    sparse = zeropi.lowest_eigenpairs(h, 5, method="sparse")
    auto = zeropi.lowest_eigenpairs(h, 5)
    np.testing.assert_allclose(sparse.energies, auto.energies, rtol=0, atol=1e-9)


def test_solution_invariants():
    p = _small_device()
    g = zeropi.Grid2D(phi_max=14, n_phi=141, n_theta=32)
    tol = 1e-10
    h = zeropi.assemble(p, zeropi.DisorderParams(delta_e_j=0.01), g)
    solution = zeropi.lowest_eigenpairs(h, 6, tol)

    assert solution.k == 6
    assert np.all(np.diff(solution.energies) >= 0)
    assert np.all(solution.energies >= 0)
    assert np.all(solution.residual_norms <= tol)
    assert solution.disc_error is None
    assert solution.splitting_error(0, 1) is None

    gram = np.array(
        [
            [zeropi.inner_product(a, b, g) for b in solution.wavefunctions]
            for a in solution.wavefunctions
        ]
    )
    np.testing.assert_allclose(gram, np.eye(6), atol=10 * tol)

    for psi in solution.wavefunctions:
        assert psi[np.argmax(np.abs(psi))] > 0
    assert solution.wavefunction(2).shape == g.shape
    with pytest.raises(IndexError):
        solution.wavefunction(6)

    # Variational bound against a trial state.
    phi, theta = g.mesh()
    trial = (np.exp(-np.square(phi) / 8) * (1 + np.cos(theta))).ravel()
    quotient = trial @ (h.matrix @ trial) / (trial @ trial)
    assert solution.energies[0] <= quotient


def test_parity_under_theta_reflection():
    p = _small_device()
    g = zeropi.Grid2D(phi_max=14, n_phi=141, n_theta=32)
    solution = zeropi.lowest_eigenpairs(zeropi.assemble(p, zeropi.DisorderParams(), g), 6)
    perm = zeropi.theta_reflection(g)
    for psi in solution.wavefunctions:
        overlap = zeropi.inner_product(psi, psi[perm], g)
        assert abs(abs(overlap) - 1) < 1e-6


def test_seeded_runs_are_reproducible():
    p = _small_device(phi_ext=1.0)
    g = zeropi.Grid2D(phi_max=14, n_phi=141, n_theta=32)
    h = zeropi.assemble(p, zeropi.DisorderParams(), g)
    a = zeropi.lowest_eigenpairs(h, 4, seed=3)
    b = zeropi.lowest_eigenpairs(h, 4, seed=3)
    np.testing.assert_array_equal(a.energies, b.energies)
    np.testing.assert_array_equal(a.wavefunctions, b.wavefunctions)


def test_unreachable_tolerance_raises():
    p = _small_device()
    g = zeropi.Grid2D(phi_max=6, n_phi=11, n_theta=6)
    h = zeropi.assemble(p, zeropi.DisorderParams(), g)
    with pytest.raises(zeropi.EigensolverConvergenceError) as info:
        zeropi.lowest_eigenpairs(h, 2, 1e-300, method="dense")
    assert len(info.value.energies) == 2
    assert np.all(info.value.residual_norms > 1e-300)
    assert isinstance(info.value, RuntimeError)


def test_argument_validation():
    p = _small_device()
    g = zeropi.Grid2D(phi_max=6, n_phi=11, n_theta=6)
    h = zeropi.assemble(p, zeropi.DisorderParams(), g)
    with pytest.raises(ValueError):
        zeropi.lowest_eigenpairs(h, 0)
    with pytest.raises(ValueError):
        zeropi.lowest_eigenpairs(h, g.dimension)
    with pytest.raises(ValueError):
        zeropi.lowest_eigenpairs(h, 2, tol=0)
    with pytest.raises(NotImplementedError):
        zeropi.lowest_eigenpairs(h, 2, method="magic")
