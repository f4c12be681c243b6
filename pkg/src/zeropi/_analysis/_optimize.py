import dataclasses
import math
from typing import Any, Callable, Sequence

import numpy as np
import scipy.optimize

from zeropi._analysis._degeneracy import degeneracy, DegeneracyReport
from zeropi._analysis._sweeps import (
    run_sweep,
    SWEEP_POINT_ERRORS,
    SweepPoint,
    SweepResult,
)
from zeropi._circuit import CircuitParams, DisorderParams
from zeropi._grid import default_grid, Quality
from zeropi._solve import Method, solve_on_grid, solve_refined


class OptimizationError(RuntimeError):
    """No point of the E_J scan produced a degeneracy value."""


@dataclasses.dataclass(frozen=True)
class EjOptimum:
    """Result of maximizing the degeneracy over E_J at fixed plasma frequency.

    Attributes:
        e_j_star: The maximizing Josephson energy (units of hbar*omega_p).
        d_max: The degeneracy at e_j_star. Comes from the refined two-grid
            solve when one was requested, else from the search itself.
        d_search: The degeneracy at e_j_star on the search grid.
        flat: The scan varied by less than the flatness threshold, so the
            scan best was returned without refinement.
        boundary: The scan best sits at an end of the E_J range.
        scan_e_j: The scanned E_J values.
        scan_d: D at each scanned value, -inf where the solve failed.
        evaluations: Number of distinct E_J values solved.
        report: The degeneracy report of the refined solve, if any.
        energies: The lowest levels at e_j_star from the refined solve, if any.
        flagged_levels: Levels of the refined solve over `disc_error_bound`.
    """

    e_j_star: float
    d_max: float
    d_search: float
    flat: bool
    boundary: bool
    scan_e_j: np.ndarray
    scan_d: np.ndarray
    evaluations: int
    report: DegeneracyReport | None = None
    energies: np.ndarray | None = None
    flagged_levels: tuple[int, ...] = ()

    @property
    def trusted(self) -> bool:
        return self.report is not None and self.report.trusted


def optimize_ej(
    e_l: float,
    e_c_sigma: float,
    k: int = 3,
    *,
    phi_ext: float = 0.0,
    d: DisorderParams = DisorderParams(),
    quality: Quality = "standard",
    tol: float = 1e-10,
    seed: int = 0,
    scan_points: int = 25,
    e_j_bounds: tuple[float, float] = (10**-1.5, 1.0),
    rel_tol: float = 0.01,
    flat_threshold: float = 0.01,
    refine_optimum: bool = True,
    trust_factor: float = 10,
    disc_error_bound: float | None = None,
    method: Method = "auto",
) -> EjOptimum:
    """Maximizes D over E_J with E_CJ = 1/(8*E_J), in units of hbar*omega_p.

    Scans E_J logarithmically over `e_j_bounds`, then polishes the best
    interior scan point by golden-section search to a relative precision of
    `rel_tol` in E_J. Scan and search use single-grid solves. When
    `refine_optimum` is set, the optimum is re-solved with a two-grid
    error estimate, which decides whether the result is trusted.

    Raises:
        OptimizationError: Every scan point failed.
    """
    if not (e_l > 0) or not (e_c_sigma > 0):
        raise ValueError(f"not (0 < {e_l=} and 0 < {e_c_sigma=})")
    lo, hi = e_j_bounds
    if not (0 < lo < hi):
        raise ValueError(f"not (0 < {lo=} < {hi=})")
    if scan_points < 3:
        raise ValueError(f"not ({scan_points=} >= 3)")

    def params(e_j: float) -> CircuitParams:
        return CircuitParams.with_slaved_junction(
            e_j=e_j, e_l=e_l, e_c_sigma=e_c_sigma, phi_ext=phi_ext
        )

    cache: dict[float, float] = {}

    def d_at(e_j: float) -> float:
        e_j = float(e_j)
        if e_j not in cache:
            try:
                p = params(e_j)
                solution = solve_on_grid(
                    p, d, k, default_grid(p, quality), tol=tol, seed=seed, method=method
                )
                cache[e_j] = degeneracy(solution).d_value
            except SWEEP_POINT_ERRORS:
                cache[e_j] = -math.inf
        return cache[e_j]

    xs = np.logspace(math.log10(lo), math.log10(hi), scan_points)
    ds = np.array([d_at(x) for x in xs])
    finite = np.isfinite(ds)
    if not np.any(finite):
        raise OptimizationError(
            f"Every E_J in the scan failed for {e_l=}, {e_c_sigma=}, {phi_ext=}"
        )
    i = int(np.argmax(ds))
    best_x, best_d = float(xs[i]), float(ds[i])
    flat = bool(ds[finite].max() - ds[finite].min() < flat_threshold)
    boundary = i == 0 or i == len(xs) - 1

    if not flat and not boundary and finite[i - 1] and finite[i + 1]:
        try:
            result = scipy.optimize.minimize_scalar(
                lambda x: -d_at(x),
                bracket=(xs[i - 1], xs[i], xs[i + 1]),
                method="golden",
                tol=rel_tol / 2,
            )
            if -result.fun > best_d:
                best_x, best_d = float(result.x), float(-result.fun)
        except (ValueError, RuntimeError):
            pass

    report = None
    energies = None
    flagged_levels: tuple[int, ...] = ()
    d_max = best_d
    if refine_optimum:
        solution = solve_refined(
            params(best_x),
            d,
            k,
            quality,
            tol=tol,
            seed=seed,
            disc_error_bound=disc_error_bound,
            method=method,
        )
        report = degeneracy(solution, trust_factor)
        energies = solution.energies
        d_max = report.d_value
        flagged_levels = solution.flagged_levels

    return EjOptimum(
        e_j_star=best_x,
        d_max=d_max,
        d_search=best_d,
        flat=flat,
        boundary=boundary,
        scan_e_j=xs,
        scan_d=ds,
        evaluations=len(cache),
        report=report,
        energies=energies,
        flagged_levels=flagged_levels,
    )


@dataclasses.dataclass(frozen=True)
class DmaxTask:
    axis: dict[str, float]
    k: int
    options: dict[str, Any]


def optimize_point(task: DmaxTask) -> SweepPoint:
    """Runs `optimize_ej` for one (E_L, E_CSigma) pair, recording failures."""
    try:
        optimum = optimize_ej(task.axis["e_l"], task.axis["e_c_sigma"], task.k, **task.options)
    except SWEEP_POINT_ERRORS as ex:
        return SweepPoint(axis=task.axis, status="failed", error=f"{type(ex).__name__}: {ex}")
    status = "ok" if optimum.trusted else "untrusted"
    error = None
    if optimum.flat:
        error = "flat D landscape; scan best returned"
    elif optimum.boundary:
        error = "optimum at the edge of the E_J range"
    return SweepPoint(
        axis=task.axis,
        status=status,
        energies=optimum.energies,
        report=optimum.report,
        e_j_star=optimum.e_j_star,
        d_max=optimum.d_max,
        error=error,
        flagged_levels=optimum.flagged_levels,
        flat=optimum.flat,
        boundary=optimum.boundary,
    )


def dmax_grid(
    e_l_values: Sequence[float],
    e_c_sigma_values: Sequence[float],
    k: int = 3,
    *,
    workers: int = 1,
    on_point: Callable[[int, SweepPoint], None] | None = None,
    **options: Any,
) -> SweepResult:
    """Runs `optimize_ej` at every (E_L, E_CSigma) pair of a grid.

    Extra keyword arguments are passed on to `optimize_ej`.
    """
    for name, values in [("e_l_values", e_l_values), ("e_c_sigma_values", e_c_sigma_values)]:
        if len(values) == 0:
            raise ValueError(f"{name} must not be empty")
        if not all(v > 0 and math.isfinite(v) for v in values):
            raise ValueError(f"{name} must be positive: {list(values)}")
    if k < 3:
        raise ValueError(f"not ({k=} >= 3)")
    tasks = [
        DmaxTask(axis={"e_l": float(e_l), "e_c_sigma": float(e_cs)}, k=k, options=options)
        for e_l in e_l_values
        for e_cs in e_c_sigma_values
    ]
    return run_sweep(
        kind="dmax-grid",
        axis_names=["e_l", "e_c_sigma"],
        k=k,
        tasks=tasks,
        func=optimize_point,
        workers=workers,
        on_point=on_point,
    )


@dataclasses.dataclass(frozen=True)
class EjStarFit:
    """E_J*/hbar*omega_p ~ intercept + slope*log10(E_CSigma/E_L).

    Across the near-degenerate regime the optimum grows with E_CSigma/E_L
    (slope close to +0.11, intercept close to 0.17).
    """

    intercept: float
    slope: float
    n_points: int
    rms_residual: float


def fit_ejstar(
    table: SweepResult,
    *,
    require_trusted: bool = True,
    min_points: int = 6,
    d_floor: float = 1.0,
) -> EjStarFit:
    """Least-squares fit of the optimal E_J against log10(E_CSigma/E_L).

    Only points inside the near-degenerate regime enter the fit: D_max must
    reach `d_floor`, and optima that are flat or sit on the edge of the E_J
    scan are skipped.

    Args:
        table: A dmax-grid sweep.
        require_trusted: Use only points with status "ok". Otherwise
            "untrusted" points are used too.
        min_points: Fewest usable points accepted.
        d_floor: Smallest D_max of a usable point.

    Raises:
        ValueError: Too few usable points, or every point has the same ratio.
    """
    if not {"e_l", "e_c_sigma"} <= set(table.axis_names):
        raise ValueError(f"Expected a dmax-grid table, got axes {table.axis_names}")
    allowed = {"ok"} if require_trusted else {"ok", "untrusted"}
    usable = [
        p
        for p in table.points
        if p.e_j_star is not None
        and p.status in allowed
        and not p.flat
        and not p.boundary
        and (p.d_max is None or p.d_max >= d_floor)
    ]
    if len(usable) < min_points:
        raise ValueError(
            f"Need at least {min_points} usable points but got {len(usable)} "
            f"({require_trusted=}, {d_floor=})"
        )
    x = np.array([math.log10(p.axis["e_c_sigma"] / p.axis["e_l"]) for p in usable])
    y = np.array([p.e_j_star for p in usable])
    if np.ptp(x) <= 1e-12 * max(1.0, float(np.max(np.abs(x)))):
        raise ValueError(
            f"Rank-deficient fit: every point has log10(E_CSigma/E_L) = {x[0]!r}"
        )
    design = np.column_stack([np.ones_like(x), x])
    coefficients, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < 2:
        raise ValueError(f"Rank-deficient fit over {x.tolist()}")
    residual = y - design @ coefficients
    return EjStarFit(
        intercept=float(coefficients[0]),
        slope=float(coefficients[1]),
        n_points=len(usable),
        rms_residual=float(np.sqrt(np.mean(np.square(residual)))),
    )
