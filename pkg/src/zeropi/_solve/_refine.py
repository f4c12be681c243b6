import dataclasses
from typing import TYPE_CHECKING

import numpy as np

from zeropi._grid import assemble, default_grid, Grid2D, Quality
from zeropi._solve._eigen_solution import EigenSolution
from zeropi._solve._lowest_eigenpairs import lowest_eigenpairs, Method

if TYPE_CHECKING:
    import zeropi


def solve_on_grid(
    p: "zeropi.CircuitParams",
    d: "zeropi.DisorderParams",
    k: int,
    g: Grid2D,
    *,
    tol: float = 1e-10,
    seed: int = 0,
    method: Method = "auto",
) -> EigenSolution:
    """Assembles on one grid and solves, with no discretization-error estimate."""
    return lowest_eigenpairs(assemble(p, d, g), k, tol, seed=seed, method=method)


def solve_refined(
    p: "zeropi.CircuitParams",
    d: "zeropi.DisorderParams",
    k: int,
    quality: Quality = "standard",
    *,
    tol: float = 1e-10,
    disc_error_bound: float | None = None,
    seed: int = 0,
    grid: Grid2D | None = None,
    fine_grid: Grid2D | None = None,
    method: Method = "auto",
) -> EigenSolution:
    """Solves on a grid and on its refinement to estimate discretization error.

    Args:
        p: The circuit.
        d: The disorder.
        k: Number of levels.
        quality: Picks the reference grid via `default_grid` when `grid` is
            not given.
        tol: Residual tolerance of each solve.
        disc_error_bound: Levels whose disc_error exceeds this are listed in
            `flagged_levels`. None flags nothing.
        seed: Seed for the eigensolver starting vectors.
        grid: Overrides the reference grid.
        fine_grid: Overrides the refined grid (default `grid.refined()`, which
            halves both spacings and widens phi by 25%). Passing the reference
            grid again skips the second solve and gives zero disc_error.
        method: Eigensolver method.

    Returns:
        The solution on the refined grid, with `disc_error`,
        `reference_energies` and `extrapolated_energies` filled in.
    """
    if disc_error_bound is not None and not (disc_error_bound > 0):
        raise ValueError(f"not ({disc_error_bound=} > 0)")
    if grid is None:
        grid = default_grid(p, quality)
    if fine_grid is None:
        fine_grid = grid.refined()

    coarse = solve_on_grid(p, d, k, grid, tol=tol, seed=seed, method=method)
    if fine_grid == grid:
        fine = coarse
    else:
        fine = solve_on_grid(p, d, k, fine_grid, tol=tol, seed=seed, method=method)

    disc_error = np.abs(fine.energies - coarse.energies)
    flagged: tuple[int, ...] = ()
    if disc_error_bound is not None:
        flagged = tuple(int(e) for e in np.flatnonzero(disc_error > disc_error_bound))
    return dataclasses.replace(
        fine,
        disc_error=disc_error,
        reference_energies=coarse.energies,
        extrapolated_energies=fine.energies + (fine.energies - coarse.energies) / 3,
        flagged_levels=flagged,
    )
