import itertools
from typing import TYPE_CHECKING

import numpy as np
import scipy.linalg

from zeropi._grid import Grid2D, second_difference

if TYPE_CHECKING:
    import zeropi


def harmonic_rotor_spectrum(p: "zeropi.CircuitParams", k: int) -> np.ndarray:
    """The k lowest levels of the junction-free circuit (E_J = 0).

    The Hamiltonian separates into a phi oscillator with frequency
    sqrt(8*E_L*E_CJ) and a free theta rotor with levels 2*E_CSigma*q^2,
    q integer. Rotor levels with q != 0 are doubly degenerate.
    """
    if p.e_j != 0:
        raise ValueError(f"The harmonic-rotor spectrum requires e_j == 0, but {p.e_j=}")
    if k < 1:
        raise ValueError(f"not ({k=} >= 1)")
    omega = np.sqrt(8 * p.e_l * p.e_cj)
    levels = [
        omega * (n + 0.5) + 2 * p.e_c_sigma * q**2
        for n, q in itertools.product(range(k), range(-k, k + 1))
    ]
    return np.sort(levels)[:k]


def separable_toy_spectrum(p: "zeropi.CircuitParams", g: Grid2D, k: int) -> np.ndarray:
    """The k lowest levels of the toy potential from two 1D solves on the grid's axes.

    Uses the same stencils as `assemble(..., toy=True)`: a Dirichlet phi
    oscillator -2*E_CJ*d^2 + E_L*phi^2 and a periodic theta rotor
    -2*E_CSigma*d^2 + 2*E_J*(1 - |cos(theta)|).
    """
    if not (1 <= k <= g.dimension):
        raise ValueError(f"not (1 <= {k=} <= {g.dimension=})")
    phi_diag = 4 * p.e_cj / g.d_phi**2 + p.e_l * np.square(g.phi)
    phi_off = np.full(g.n_phi - 1, -2 * p.e_cj / g.d_phi**2)
    phi_levels = scipy.linalg.eigh_tridiagonal(
        phi_diag, phi_off, eigvals_only=True, select="i", select_range=(0, min(k, g.n_phi) - 1)
    )

    theta_matrix = -2 * p.e_c_sigma * second_difference(
        g.n_theta, g.d_theta, periodic=True
    ).toarray() + np.diag(2 * p.e_j * (1 - np.abs(np.cos(g.theta))))
    theta_levels = scipy.linalg.eigh(theta_matrix, eigvals_only=True)[:k]

    sums = np.add.outer(phi_levels, theta_levels).ravel()
    return np.sort(sums)[:k]
