from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    import zeropi


def potential_symmetric(p: "zeropi.CircuitParams", phi, theta):
    """Potential of the symmetric device, shifted so its minimum is zero.

    V = -2*E_J*cos(theta)*cos(phi - phi_ext/2) + E_L*phi^2 + 2*E_J

    Accepts floats or broadcastable numpy arrays.
    """
    return (
        -2 * p.e_j * np.cos(theta) * np.cos(phi - p.phi_ext / 2)
        + p.e_l * np.square(phi)
        + 2 * p.e_j
    )


def potential_disordered(
    p: "zeropi.CircuitParams",
    d: "zeropi.DisorderParams",
    phi,
    theta,
    chi=0.0,
):
    """Potential including junction and inductor disorder and the chi mode.

    Adds 2*dE_J*sin(theta)*sin(phi - phi_ext/2) + E_L*chi^2 + 2*dE_L*phi*chi
    to `potential_symmetric`.
    """
    return (
        potential_symmetric(p, phi, theta)
        + 2 * d.delta_e_j * np.sin(theta) * np.sin(phi - p.phi_ext / 2)
        + p.e_l * np.square(chi)
        + 2 * d.delta_e_l * phi * chi
    )


def potential_toy(p: "zeropi.CircuitParams", phi, theta):
    """Separable stand-in potential V' = -2*E_J*|cos(theta)| + E_L*phi^2 + 2*E_J.

    Its ridges at theta = 0 and theta = pi are exactly equivalent and it
    ignores the flux, which makes its spectrum a sum of two 1D spectra.
    """
    return -2 * p.e_j * np.abs(np.cos(theta)) + p.e_l * np.square(phi) + 2 * p.e_j


def potential_node(p: "zeropi.CircuitParams", phi1, phi2, phi3, phi4):
    """The symmetric potential written in node phases (junctions 1-2 and 3-4).

    Equals `potential_disordered(p, DisorderParams(), phi, theta, chi)` at the
    corresponding normal coordinates.
    """
    half_flux = p.phi_ext / 2
    return (
        -p.e_j * np.cos(phi4 - phi3 - half_flux)
        - p.e_j * np.cos(phi2 - phi1 - half_flux)
        + 0.5 * p.e_l * np.square(phi2 - phi3)
        + 0.5 * p.e_l * np.square(phi4 - phi1)
        + 2 * p.e_j
    )
