import math

import numpy as np

from zeropi._grid import theta_reflection
from zeropi._solve import EigenSolution

# Half-width of the theta window counted as one ridge.
RIDGE_HALF_WIDTH = math.pi / 4


def export_wavefunction(e: EigenSolution, level: int) -> np.ndarray:
    """Tabulates one level as rows of (phi, theta, amplitude).

    Rows follow the grid's phi-major order. Amplitudes are L2-normalized with
    the largest-magnitude entry positive.
    """
    if not (0 <= level < e.k):
        raise IndexError(f"not (0 <= {level=} < {e.k=})")
    psi = e.wavefunctions[level]
    if psi[np.argmax(np.abs(psi))] < 0:
        psi = -psi
    phi, theta = e.grid.mesh()
    return np.column_stack([phi.ravel(), theta.ravel(), psi])


def _wrap(theta: np.ndarray) -> np.ndarray:
    return np.angle(np.exp(1j * theta))


def ridge_masses(e: EigenSolution, level: int) -> tuple[float, float]:
    """Probability in the theta windows around the two ridges.

    Returns:
        (mass near theta = 0, mass near theta = pi), each integrated over
        |theta - ridge| < pi/4 (mod 2pi) and all phi.
    """
    if not (0 <= level < e.k):
        raise IndexError(f"not (0 <= {level=} < {e.k=})")
    density = np.square(e.wavefunction(level)).sum(axis=0) * e.grid.cell_area
    theta = e.grid.theta
    near_zero = np.abs(_wrap(theta)) < RIDGE_HALF_WIDTH
    near_pi = np.abs(_wrap(theta - math.pi)) < RIDGE_HALF_WIDTH
    return float(density[near_zero].sum()), float(density[near_pi].sum())


def ridge_balance(e: EigenSolution, level: int) -> float:
    """Fraction of the ridge-window mass sitting on the theta = 0 ridge."""
    m0, m_pi = ridge_masses(e, level)
    total = m0 + m_pi
    if total == 0:
        return math.nan
    return m0 / total


def parity_labels(e: EigenSolution, *, tol: float = 1e-6) -> list[str]:
    """Labels each level 'even', 'odd' or 'mixed' under theta -> -theta."""
    perm = theta_reflection(e.grid)
    labels = []
    for psi in e.wavefunctions:
        overlap = float(np.dot(psi, psi[perm]) * e.grid.cell_area)
        if abs(overlap - 1) < tol:
            labels.append("even")
        elif abs(overlap + 1) < tol:
            labels.append("odd")
        else:
            labels.append("mixed")
    return labels
