import dataclasses
from typing import TYPE_CHECKING

import numpy as np
import scipy.sparse

from zeropi._circuit import derived_scales
from zeropi._grid import first_difference
from zeropi._solve import EigenSolution
from zeropi._util import csv_text

if TYPE_CHECKING:
    import zeropi


@dataclasses.dataclass(frozen=True)
class CouplingMatrices:
    """Couplings between the (phi, theta) levels and the chi oscillator.

    Attributes:
        phi_elements: <l|phi|l'>, symmetric.
        d_theta_elements: <l|d/dtheta|l'> with the centered difference,
            antisymmetric with an exactly zero diagonal.
        g_phi: |dE_L*(8*E_C/E_L)^(1/4)*<l|phi|l'>|.
        g_theta: |E_CSigma*(dC/C)*(32*E_L/E_C)^(1/4)*<l|d/dtheta|l'>|.
    """

    phi_elements: np.ndarray
    d_theta_elements: np.ndarray
    g_phi: np.ndarray
    g_theta: np.ndarray

    @property
    def g_squared(self) -> np.ndarray:
        return np.square(self.g_phi) + np.square(self.g_theta)


def matrix_elements(e: EigenSolution) -> tuple[np.ndarray, np.ndarray]:
    """Returns (<l|phi|l'>, <l|d/dtheta|l'>) between the solution's levels."""
    g = e.grid
    psi = e.wavefunctions
    phi = np.repeat(g.phi, g.n_theta)
    phi_elements = (psi * phi[np.newaxis, :]) @ psi.T * g.cell_area
    d_theta = scipy.sparse.kron(
        scipy.sparse.identity(g.n_phi, format="csr"),
        first_difference(g.n_theta, g.d_theta, periodic=True),
        format="csr",
    )
    d_theta_elements = psi @ (d_theta @ psi.T) * g.cell_area
    return (
        (phi_elements + phi_elements.T) / 2,
        (d_theta_elements - d_theta_elements.T) / 2,
    )


def coupling_elements(
    e: EigenSolution,
    p: "zeropi.CircuitParams",
    d: "zeropi.DisorderParams",
) -> CouplingMatrices:
    phi_elements, d_theta_elements = matrix_elements(e)
    theta_scale = abs(p.e_c_sigma * d.delta_c_rel * (32 * p.e_l / p.e_c) ** 0.25)
    phi_scale = abs(d.delta_e_l * (8 * p.e_c / p.e_l) ** 0.25)
    return CouplingMatrices(
        phi_elements=phi_elements,
        d_theta_elements=d_theta_elements,
        g_phi=phi_scale * np.abs(phi_elements),
        g_theta=theta_scale * np.abs(d_theta_elements),
    )


@dataclasses.dataclass(frozen=True)
class DispersiveResult:
    """Level shifts induced by the chi oscillator in the dispersive regime.

    Attributes:
        energies: The unperturbed levels E_l.
        omega_chi: The oscillator energy hbar*Omega_chi.
        g_squared: |g_ll'|^2 = g_phi^2 + g_theta^2.
        detunings: Delta_ll' = E_l - E_l' - hbar*Omega_chi.
        stark: Per-photon ac Stark shift chi_l of each level.
        lamb: Lamb shift kappa_l of each level.
        resonance_flags: Pairs (l, l') with |Delta_ll'| < resonance_factor*|g_ll'|.
            Both orientations of a flagged pair are left out of the sums.
        stark_truncation: Size of the last kept term of each chi_l sum, used
            as a proxy for the largest term of the omitted tail beyond k levels.
        lamb_truncation: The same for kappa_l.
        couplings: The coupling matrices, when computed from wavefunctions.
        resonance_factor: The factor used for flagging.
    """

    energies: np.ndarray
    omega_chi: float
    g_squared: np.ndarray
    detunings: np.ndarray
    stark: np.ndarray
    lamb: np.ndarray
    resonance_flags: tuple[tuple[int, int], ...]
    stark_truncation: np.ndarray
    lamb_truncation: np.ndarray
    couplings: CouplingMatrices | None = None
    resonance_factor: float = 10

    def couplings_csv(self) -> str:
        rows = []
        k = len(self.energies)
        flagged = set(self.resonance_flags)
        for a in range(k):
            for b in range(k):
                row = {
                    "l": a,
                    "l_prime": b,
                    "g_squared[hbar_omega_p^2]": self.g_squared[a, b],
                    "detuning[hbar_omega_p]": self.detunings[a, b],
                    "resonant": (a, b) in flagged,
                }
                if self.couplings is not None:
                    row["g_phi[hbar_omega_p]"] = self.couplings.g_phi[a, b]
                    row["g_theta[hbar_omega_p]"] = self.couplings.g_theta[a, b]
                rows.append(row)
        return csv_text(
            [
                "l",
                "l_prime",
                "g_phi[hbar_omega_p]",
                "g_theta[hbar_omega_p]",
                "g_squared[hbar_omega_p^2]",
                "detuning[hbar_omega_p]",
                "resonant",
            ],
            rows,
        )

    def shifts_csv(self) -> str:
        rows = [
            {
                "l": l,
                "E[hbar_omega_p]": self.energies[l],
                "chi[hbar_omega_p]": self.stark[l],
                "kappa[hbar_omega_p]": self.lamb[l],
                "chi_truncation[hbar_omega_p]": self.stark_truncation[l],
                "kappa_truncation[hbar_omega_p]": self.lamb_truncation[l],
            }
            for l in range(len(self.energies))
        ]
        return csv_text(
            [
                "l",
                "E[hbar_omega_p]",
                "chi[hbar_omega_p]",
                "kappa[hbar_omega_p]",
                "chi_truncation[hbar_omega_p]",
                "kappa_truncation[hbar_omega_p]",
            ],
            rows,
        )


def dispersive_shifts(
    energies: np.ndarray,
    couplings: CouplingMatrices | np.ndarray,
    omega_chi: float,
    *,
    resonance_factor: float = 10,
) -> DispersiveResult:
    """Second-order shifts chi_l and kappa_l from the chi-mode couplings.

    chi_l = sum_l' |g_ll'|^2 * (1/Delta_ll' - 1/Delta_l'l) and
    kappa_l = sum_l' |g_ll'|^2 / Delta_ll', summed over the k given levels
    with l' = l included.

    Args:
        energies: The k levels.
        couplings: Coupling matrices, or the k x k matrix of |g_ll'|^2.
        omega_chi: The oscillator energy.
        resonance_factor: A pair with |Delta| < resonance_factor*|g| is
            flagged and excluded.
    """
    energies = np.asarray(energies, dtype=np.float64)
    k = len(energies)
    if isinstance(couplings, CouplingMatrices):
        matrices = couplings
        g_squared = couplings.g_squared
    else:
        matrices = None
        g_squared = np.asarray(couplings, dtype=np.float64)
    if g_squared.shape != (k, k):
        raise ValueError(f"{g_squared.shape=} doesn't match {k} levels")
    if np.any(g_squared < 0):
        raise ValueError("|g|^2 must be non-negative")
    if not (omega_chi > 0):
        raise ValueError(f"not ({omega_chi=} > 0)")
    if not (resonance_factor >= 0):
        raise ValueError(f"not ({resonance_factor=} >= 0)")

    detunings = energies[:, np.newaxis] - energies[np.newaxis, :] - omega_chi
    g = np.sqrt(g_squared)
    resonant = (g > 0) & (np.abs(detunings) < resonance_factor * g)
    active = (g_squared > 0) & ~(resonant | resonant.T)

    forward = np.divide(g_squared, detunings, out=np.zeros((k, k)), where=active)
    backward = np.divide(g_squared, detunings.T, out=np.zeros((k, k)), where=active)
    stark_terms = forward - backward
    flags = tuple((int(a), int(b)) for a, b in zip(*np.nonzero(resonant)))
    return DispersiveResult(
        energies=energies,
        omega_chi=float(omega_chi),
        g_squared=g_squared,
        detunings=detunings,
        stark=stark_terms.sum(axis=1),
        lamb=forward.sum(axis=1),
        resonance_flags=flags,
        stark_truncation=np.abs(stark_terms[:, -1]),
        lamb_truncation=np.abs(forward[:, -1]),
        couplings=matrices,
        resonance_factor=resonance_factor,
    )


def dispersive_analysis(
    e: EigenSolution,
    p: "zeropi.CircuitParams",
    d: "zeropi.DisorderParams",
    *,
    resonance_factor: float = 10,
) -> DispersiveResult:
    """Couplings and shifts of the solved levels, with Omega_chi from the circuit."""
    return dispersive_shifts(
        e.energies,
        coupling_elements(e, p, d),
        derived_scales(p).omega_chi,
        resonance_factor=resonance_factor,
    )
