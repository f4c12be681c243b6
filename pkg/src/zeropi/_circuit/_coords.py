import dataclasses
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    import zeropi


# Rows give (phi, theta, chi, sigma) in terms of the node phases (phi1..phi4).
NODE_TO_NORMAL = np.array(
    [
        [-0.5, +0.5, -0.5, +0.5],
        [-0.5, +0.5, +0.5, -0.5],
        [+0.5, +0.5, -0.5, -0.5],
        [+1.0, +1.0, +1.0, +1.0],
    ]
)

# Rows give the node phases (phi1..phi4) in terms of (phi, theta, chi, sigma).
NORMAL_TO_NODE = np.array(
    [
        [-0.5, -0.5, +0.5, +0.25],
        [+0.5, +0.5, +0.5, +0.25],
        [-0.5, +0.5, -0.5, +0.25],
        [+0.5, -0.5, -0.5, +0.25],
    ]
)


@dataclasses.dataclass(frozen=True)
class NormalCoords:
    """Phases in the variables that diagonalize the kinetic energy.

    The fields may be floats or broadcastable numpy arrays. `sigma` decouples
    from the dynamics and is carried only so the transformation is invertible.
    """

    phi: float
    theta: float
    chi: float
    sigma: float


def node_to_normal(phi1, phi2, phi3, phi4) -> NormalCoords:
    """Transforms the four node phases into (phi, theta, chi, sigma).

    Uses 2*phi = (phi2 - phi3) + (phi4 - phi1), 2*chi = (phi2 - phi3) - (phi4 - phi1),
    2*theta = (phi2 - phi1) - (phi4 - phi3) and sigma = phi1 + phi2 + phi3 + phi4.
    """
    a = phi2 - phi3
    b = phi4 - phi1
    return NormalCoords(
        phi=(a + b) / 2,
        theta=((phi2 - phi1) - (phi4 - phi3)) / 2,
        chi=(a - b) / 2,
        sigma=phi1 + phi2 + phi3 + phi4,
    )


def normal_to_node(c: NormalCoords) -> tuple:
    """Inverse of `node_to_normal`; returns (phi1, phi2, phi3, phi4)."""
    s = c.sigma / 4
    phi1 = s + (-c.theta - c.phi + c.chi) / 2
    phi2 = s + (c.theta + c.phi + c.chi) / 2
    phi3 = s + (c.theta - c.phi - c.chi) / 2
    phi4 = s + (-c.theta + c.phi - c.chi) / 2
    return phi1, phi2, phi3, phi4


def node_capacitance_matrix(p: "zeropi.CircuitParams") -> np.ndarray:
    """Capacitance matrix of the node kinetic energy T = 1/2 v^T C v.

    Capacitances are expressed as inverse charging energies (units of 2/e^2),
    i.e. C_J -> 1/E_CJ and C -> 1/E_C. Junctions connect nodes 1-2 and 3-4,
    cross-capacitors connect nodes 1-3 and 2-4.
    """
    c_j = 1 / p.e_cj
    c = 1 / p.e_c
    result = np.zeros(shape=(4, 4))
    for (a, b), cap in [((0, 1), c_j), ((2, 3), c_j), ((0, 2), c), ((1, 3), c)]:
        result[a, a] += cap
        result[b, b] += cap
        result[a, b] -= cap
        result[b, a] -= cap
    return result


def normal_capacitance_matrix(p: "zeropi.CircuitParams") -> np.ndarray:
    """The node capacitance matrix rewritten in (phi, theta, chi, sigma).

    For the symmetric device this is diag(2*C_J, 2*C_sigma, 2*C, 0): the
    transformation removes all kinetic cross terms and sigma carries no charge
    energy.
    """
    m = NORMAL_TO_NODE
    return m.T @ node_capacitance_matrix(p) @ m
