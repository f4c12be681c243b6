import math

import numpy as np
import pytest

import zeropi


def test_grid_properties():
    g = zeropi.Grid2D(phi_max=6, n_phi=121, n_theta=100)
    assert g.m == 60
    assert g.d_phi == pytest.approx(0.1)
    assert g.d_theta == pytest.approx(2 * math.pi / 100)
    assert g.n_theta * g.d_theta == pytest.approx(2 * math.pi, abs=1e-15)
    assert g.shape == (121, 100)
    assert g.dimension == 12100
    assert g.phi[0] == pytest.approx(-6)
    assert g.phi[60] == 0
    assert g.phi[-1] == pytest.approx(6)
    assert g.theta[0] == 0
    assert g.theta[-1] < 2 * math.pi

    phi, theta = g.mesh()
    assert phi.shape == theta.shape == g.shape
    flat_phi = phi.ravel()
    flat_theta = theta.ravel()
    assert flat_phi[3 * 100 + 7] == g.phi[3]
    assert flat_theta[3 * 100 + 7] == g.theta[7]


def test_grid_validation():
    with pytest.raises(ValueError):
        zeropi.Grid2D(phi_max=6, n_phi=120, n_theta=100)
    with pytest.raises(ValueError):
        zeropi.Grid2D(phi_max=6, n_phi=1, n_theta=100)
    with pytest.raises(ValueError):
        zeropi.Grid2D(phi_max=6, n_phi=11, n_theta=2)
    with pytest.raises(ValueError):
        zeropi.Grid2D(phi_max=0, n_phi=11, n_theta=10)


def test_refined():
    g = zeropi.Grid2D(phi_max=8, n_phi=81, n_theta=40)
    r = g.refined()
    assert r == zeropi.Grid2D(phi_max=10, n_phi=201, n_theta=80)
    assert r.d_phi == pytest.approx(g.d_phi / 2)
    assert r.d_theta == pytest.approx(g.d_theta / 2)

    g = zeropi.Grid2D(phi_max=3, n_phi=7, n_theta=9)
    r = g.refined()
    assert r.phi_max == 3.75
    assert r.d_phi <= g.d_phi / 2
    assert r.n_phi % 2 == 1


def test_default_grid():
    fig3 = zeropi.CircuitParams.from_ratios(
        omega_p_over_e_l=1e4,
        omega_p_over_e_c_sigma=2.2e3,
        omega_p_over_e_j=7.9,
    )
    g = zeropi.default_grid(fig3)
    assert g.phi_max == pytest.approx(3.5 * (8 * 0.9875e4) ** 0.25)
    assert 55 < g.phi_max < 62
    assert 1100 < g.n_phi < 1300
    assert g.n_theta == 100
    assert g.d_phi <= 0.1

    small = zeropi.CircuitParams.from_energies(e_j=1, e_l=1, e_c_sigma=0.5, e_cj=1)
    assert zeropi.default_grid(small).phi_max == 6
    assert zeropi.default_grid(small).n_phi == 121

    coarse = zeropi.default_grid(small, "coarse")
    fine = zeropi.default_grid(small, "fine")
    assert coarse.d_phi <= 0.15
    assert coarse.n_theta == 60
    assert fine.d_phi == pytest.approx(zeropi.default_grid(small).d_phi / 2)
    assert fine.n_theta == 200

    with pytest.raises(ValueError, match="quality"):
        zeropi.default_grid(small, "ultra")


@pytest.mark.parametrize(
    "perm_func", [zeropi.phi_reflection, zeropi.theta_reflection, zeropi.theta_half_shift]
)
def test_grid_permutations_are_involutions(perm_func):
    g = zeropi.Grid2D(phi_max=2, n_phi=9, n_theta=8)
    perm = perm_func(g)
    assert sorted(perm.tolist()) == list(range(g.dimension))
    np.testing.assert_array_equal(perm[perm], np.arange(g.dimension))


def test_grid_permutations_move_coordinates():
    g = zeropi.Grid2D(phi_max=2, n_phi=9, n_theta=8)
    phi, theta = (e.ravel() for e in g.mesh())

    np.testing.assert_allclose(phi[zeropi.phi_reflection(g)], -phi, atol=1e-15)
    np.testing.assert_array_equal(theta[zeropi.phi_reflection(g)], theta)

    reflected = theta[zeropi.theta_reflection(g)]
    np.testing.assert_allclose(np.cos(reflected), np.cos(theta), atol=1e-14)
    np.testing.assert_allclose(np.sin(reflected), -np.sin(theta), atol=1e-14)

    shifted = theta[zeropi.theta_half_shift(g)]
    np.testing.assert_allclose(np.cos(shifted), -np.cos(theta), atol=1e-14)
    np.testing.assert_array_equal(phi[zeropi.theta_half_shift(g)], phi)

    with pytest.raises(ValueError, match="odd"):
        zeropi.theta_half_shift(zeropi.Grid2D(phi_max=2, n_phi=9, n_theta=7))
