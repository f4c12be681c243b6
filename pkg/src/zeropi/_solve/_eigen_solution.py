import dataclasses

import numpy as np

from zeropi._grid import Grid2D


class EigensolverConvergenceError(RuntimeError):
    """The iterative eigensolver could not reach the requested residuals.

    Attributes:
        energies: The best eigenvalue estimates found.
        residual_norms: Their residual norms |H psi - E psi| for unit psi.
    """

    def __init__(self, message: str, *, energies: np.ndarray, residual_norms: np.ndarray):
        super().__init__(message)
        self.energies = np.asarray(energies)
        self.residual_norms = np.asarray(residual_norms)


@dataclasses.dataclass(frozen=True)
class EigenSolution:
    """The lowest eigenpairs of a discretized Hamiltonian.

    Attributes:
        energies: Eigenvalues in ascending order.
        wavefunctions: One row per level, flattened like grid vectors and
            normalized so that sum(psi**2) * d_phi * d_theta = 1. The sign of
            each row is fixed by making its largest-magnitude entry positive.
        residual_norms: |H x - E x| for the unit-norm vector x = psi * sqrt(cell area).
        grid: The grid the wavefunctions live on.
        disc_error: |E(fine grid) - E(reference grid)| per level, when known.
        reference_energies: The eigenvalues on the reference grid, when known.
        extrapolated_energies: Richardson extrapolation of the two grids,
            E + (E - E_reference)/3, when known.
        flagged_levels: Levels whose disc_error exceeded the caller's bound.
    """

    energies: np.ndarray
    wavefunctions: np.ndarray
    residual_norms: np.ndarray
    grid: Grid2D
    disc_error: np.ndarray | None = None
    reference_energies: np.ndarray | None = None
    extrapolated_energies: np.ndarray | None = None
    flagged_levels: tuple[int, ...] = ()

    def __post_init__(self):
        k = len(self.energies)
        if self.wavefunctions.shape != (k, self.grid.dimension):
            raise ValueError(
                f"{self.wavefunctions.shape=} doesn't match "
                f"({k}, {self.grid.dimension=})"
            )
        if self.residual_norms.shape != (k,):
            raise ValueError(f"{self.residual_norms.shape=} != ({k},)")

    @property
    def k(self) -> int:
        return len(self.energies)

    def wavefunction(self, level: int) -> np.ndarray:
        """The wavefunction of a level as an array of shape `grid.shape`."""
        if not (0 <= level < self.k):
            raise IndexError(f"not (0 <= {level=} < {self.k=})")
        return self.wavefunctions[level].reshape(self.grid.shape)

    def splitting_error(self, low: int, high: int) -> float | None:
        """Discretization error of E[high] - E[low] from the two-grid comparison.

        Returns None when the solution carries no reference grid.
        """
        if self.reference_energies is None:
            return None
        fine = self.energies[high] - self.energies[low]
        coarse = self.reference_energies[high] - self.reference_energies[low]
        return float(abs(fine - coarse))
