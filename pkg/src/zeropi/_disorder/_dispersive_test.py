import numpy as np
import pytest

import zeropi


def _device() -> zeropi.CircuitParams:
    return zeropi.CircuitParams.from_ratios(
        omega_p_over_e_l=20,
        omega_p_over_e_c_sigma=20,
        omega_p_over_e_j=4,
    )


_GRID = zeropi.Grid2D(phi_max=10, n_phi=51, n_theta=16)


def _solution() -> zeropi.EigenSolution:
    return zeropi.solve_on_grid(_device(), zeropi.DisorderParams(), 4, _GRID)


def test_two_level_example():
    energies = [0.0, 1.0]
    g_squared = [[0.0, 0.01], [0.01, 0.0]]

    result = zeropi.dispersive_shifts(energies, g_squared, 0.5, resonance_factor=1)
    np.testing.assert_allclose(result.detunings, [[-0.5, -1.5], [0.5, -0.5]], atol=1e-15)
    assert result.lamb[0] == pytest.approx(-0.01 / 1.5, abs=1e-12)
    assert result.stark[0] == pytest.approx(0.01 * (-1 / 1.5 - 1 / 0.5), abs=1e-12)
    assert result.stark[0] == pytest.approx(-0.026667, abs=1e-6)
    assert result.lamb[1] == pytest.approx(0.01 / 0.5, abs=1e-12)
    assert result.resonance_flags == ()

    # |Delta_10| = 0.5 is within 10*|g| = 1, so the pair is flagged and dropped.
    flagged = zeropi.dispersive_shifts(energies, g_squared, 0.5)
    assert flagged.resonance_flags == ((1, 0),)
    np.testing.assert_array_equal(flagged.stark, [0, 0])
    np.testing.assert_array_equal(flagged.lamb, [0, 0])


def test_truncation_estimate_is_last_term():
    result = zeropi.dispersive_shifts(
        [0.0, 1.0, 3.0],
        [[0, 0.01, 0.02], [0.01, 0, 0], [0.02, 0, 0]],
        0.5,
        resonance_factor=0,
    )
    assert result.lamb_truncation[0] == pytest.approx(0.02 / 3.5, abs=1e-15)
    assert result.stark_truncation[0] == pytest.approx(0.02 * (1 / 3.5 + 1 / 2.5), abs=1e-15)
    assert result.lamb_truncation[1] == 0


def test_dispersive_shifts_validation():
    with pytest.raises(ValueError, match="shape"):
        zeropi.dispersive_shifts([0, 1], np.zeros((3, 3)), 0.5)
    with pytest.raises(ValueError, match="non-negative"):
        zeropi.dispersive_shifts([0, 1], [[0, -1], [-1, 0]], 0.5)
    with pytest.raises(ValueError, match="omega_chi"):
        zeropi.dispersive_shifts([0, 1], np.zeros((2, 2)), 0)


def test_matrix_elements():
    e = _solution()
    phi_elements, d_theta_elements = zeropi.matrix_elements(e)
    assert phi_elements.shape == (4, 4)
    np.testing.assert_array_equal(phi_elements, phi_elements.T)
    np.testing.assert_array_equal(d_theta_elements, -d_theta_elements.T)
    np.testing.assert_array_equal(np.diag(d_theta_elements), 0)
    # At zero flux every level is even or odd under phi -> -phi.
    assert np.max(np.abs(np.diag(phi_elements))) < 1e-5


def test_zero_disorder_gives_zero_couplings():
    e = _solution()
    result = zeropi.dispersive_analysis(e, _device(), zeropi.DisorderParams())
    np.testing.assert_array_equal(result.couplings.g_phi, 0)
    np.testing.assert_array_equal(result.couplings.g_theta, 0)
    np.testing.assert_array_equal(result.stark, 0)
    np.testing.assert_array_equal(result.lamb, 0)
    assert result.resonance_flags == ()
    assert result.omega_chi == pytest.approx(zeropi.derived_scales(_device()).omega_chi)


def test_couplings_scale_linearly():
    e = _solution()
    p = _device()
    small = zeropi.DisorderParams(delta_c_rel=0.05, delta_e_l=0.001)
    large = zeropi.DisorderParams(delta_c_rel=0.1, delta_e_l=0.002)
    a = zeropi.dispersive_analysis(e, p, small, resonance_factor=0)
    b = zeropi.dispersive_analysis(e, p, large, resonance_factor=0)
    np.testing.assert_allclose(b.couplings.g_theta, 2 * a.couplings.g_theta, rtol=1e-12)
    np.testing.assert_allclose(b.couplings.g_phi, 2 * a.couplings.g_phi, rtol=1e-12)
    np.testing.assert_allclose(b.stark, 4 * a.stark, rtol=1e-10, atol=1e-300)
    np.testing.assert_allclose(b.lamb, 4 * a.lamb, rtol=1e-10, atol=1e-300)
    assert np.any(b.stark != 0)


def test_coupling_prefactors():
    e = _solution()
    p = _device()
    d = zeropi.DisorderParams(delta_c_rel=0.1, delta_e_l=0.002)
    c = zeropi.coupling_elements(e, p, d)
    phi_elements, d_theta_elements = zeropi.matrix_elements(e)
    np.testing.assert_allclose(
        c.g_theta,
        p.e_c_sigma * 0.1 * (32 * p.e_l / p.e_c) ** 0.25 * np.abs(d_theta_elements),
        rtol=1e-12,
    )
    np.testing.assert_allclose(
        c.g_phi,
        0.002 * (8 * p.e_c / p.e_l) ** 0.25 * np.abs(phi_elements),
        rtol=1e-12,
    )
    np.testing.assert_allclose(c.g_squared, c.g_phi**2 + c.g_theta**2, rtol=1e-12)


def test_csv_tables():
    e = _solution()
    result = zeropi.dispersive_analysis(
        e, _device(), zeropi.DisorderParams(delta_c_rel=0.1, delta_e_l=0.002)
    )
    couplings = result.couplings_csv().strip().split("\n")
    assert len(couplings) == 1 + 16
    assert couplings[0].startswith("l,l_prime,g_phi[hbar_omega_p],g_theta[hbar_omega_p]")
    shifts = result.shifts_csv().strip().split("\n")
    assert len(shifts) == 1 + 4
    assert shifts[0].split(",")[:4] == [
        "l",
        "E[hbar_omega_p]",
        "chi[hbar_omega_p]",
        "kappa[hbar_omega_p]",
    ]
