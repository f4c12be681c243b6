import dataclasses
import math
from typing import Any, Callable, Literal, Sequence, TYPE_CHECKING

import numpy as np

from zeropi._analysis._degeneracy import degeneracy, DegeneracyReport
from zeropi._circuit import DisorderParams
from zeropi._grid import default_grid, Grid2D, Quality
from zeropi._solve import Method, solve_on_grid, solve_refined
from zeropi._util import csv_text, parallel_map

if TYPE_CHECKING:
    import zeropi

PointStatus = Literal["ok", "untrusted", "failed"]

# Failures of a single sweep point that are recorded instead of raised.
SWEEP_POINT_ERRORS = (RuntimeError, ValueError, ArithmeticError, MemoryError)

AXIS_UNITS = {
    "phi_ext": "rad",
    "e_l": "hbar_omega_p",
    "e_c_sigma": "hbar_omega_p",
    "delta_e_j": "hbar_omega_p",
    "delta_e_j_rel": "1",
    "delta_c_j_rel": "1",
}


@dataclasses.dataclass(frozen=True)
class SweepPoint:
    """The outcome at one requested parameter point.

    Attributes:
        axis: Axis name to value, in the order of the sweep's axes.
        status: "ok" for a trusted degeneracy value, "untrusted" when the
            discretization error estimate is missing or too large, "failed"
            when no value could be computed.
        energies: Lowest levels, when solved.
        report: Degeneracy report, when computed.
        disc_error: Two-grid error estimate per level, when refined.
        grid: The grid of the reported energies.
        e_j_star: Optimal Josephson energy, for optimization sweeps.
        d_max: Degeneracy at the optimum, for optimization sweeps.
        error: Why the point failed.
        flagged_levels: Levels whose disc_error exceeded the requested bound.
        flat: For optimization sweeps, D barely varied over the E_J scan.
        boundary: For optimization sweeps, E_J* sits at an end of the scan.
    """

    axis: dict[str, float]
    status: PointStatus
    energies: np.ndarray | None = None
    report: DegeneracyReport | None = None
    disc_error: np.ndarray | None = None
    grid: Grid2D | None = None
    e_j_star: float | None = None
    d_max: float | None = None
    error: str | None = None
    flagged_levels: tuple[int, ...] = ()
    flat: bool = False
    boundary: bool = False

    def sort_key(self) -> tuple[float, ...]:
        return tuple(self.axis.values())


@dataclasses.dataclass(frozen=True)
class SweepResult:
    """One record per requested point, sorted by axis values."""

    kind: str
    axis_names: tuple[str, ...]
    k: int
    points: tuple[SweepPoint, ...]

    @property
    def failed_count(self) -> int:
        return sum(p.status == "failed" for p in self.points)

    @property
    def any_failed(self) -> bool:
        return self.failed_count > 0

    def axis_values(self, name: str) -> np.ndarray:
        return np.array([p.axis[name] for p in self.points])

    def d_values(self) -> np.ndarray:
        """D per point (d_max for optimization sweeps), NaN where missing."""
        result = []
        for p in self.points:
            if p.d_max is not None:
                result.append(p.d_max)
            elif p.report is not None:
                result.append(p.report.d_value)
            else:
                result.append(math.nan)
        return np.array(result)

    def fieldnames(self) -> list[str]:
        names = [f"{a}[{AXIS_UNITS.get(a, '1')}]" for a in self.axis_names]
        names.append("status")
        if self.kind == "dmax-grid":
            names += ["E_J_star[hbar_omega_p]", "D_max[1]"]
        names += [
            "D[1]",
            "splitting[hbar_omega_p]",
            "gap[hbar_omega_p]",
            "splitting_error[hbar_omega_p]",
            "trusted",
        ]
        names += [f"E{k}[hbar_omega_p]" for k in range(self.k)]
        names += [f"disc_error{k}[hbar_omega_p]" for k in range(self.k)]
        names += ["n_phi", "n_theta", "phi_max[rad]", "error"]
        return names

    def rows(self) -> list[dict[str, Any]]:
        fields = self.fieldnames()
        result = []
        for p in self.points:
            row: dict[str, Any] = {}
            for a, field in zip(self.axis_names, fields):
                row[field] = p.axis[a]
            row["status"] = p.status
            row["E_J_star[hbar_omega_p]"] = p.e_j_star
            row["D_max[1]"] = p.d_max
            if p.report is not None:
                row["D[1]"] = p.report.d_value
                row["splitting[hbar_omega_p]"] = p.report.splitting
                row["gap[hbar_omega_p]"] = p.report.gap
                row["splitting_error[hbar_omega_p]"] = p.report.splitting_error
                row["trusted"] = p.report.trusted
            if p.energies is not None:
                for k, e in enumerate(p.energies[: self.k]):
                    row[f"E{k}[hbar_omega_p]"] = float(e)
            if p.disc_error is not None:
                for k, e in enumerate(p.disc_error[: self.k]):
                    row[f"disc_error{k}[hbar_omega_p]"] = float(e)
            if p.grid is not None:
                row["n_phi"] = p.grid.n_phi
                row["n_theta"] = p.grid.n_theta
                row["phi_max[rad]"] = p.grid.phi_max
            row["error"] = p.error
            result.append(row)
        return result

    def to_csv(self) -> str:
        return csv_text(self.fieldnames(), self.rows())


@dataclasses.dataclass(frozen=True)
class SpectrumTask:
    """Everything needed to solve one sweep point in a worker process."""

    axis: dict[str, float]
    p: "zeropi.CircuitParams"
    d: "zeropi.DisorderParams"
    k: int
    quality: Quality = "standard"
    tol: float = 1e-10
    seed: int = 0
    refine: bool = True
    trust_factor: float = 10
    disc_error_bound: float | None = None
    method: Method = "auto"
    grid: Grid2D | None = None


def solve_point(task: SpectrumTask) -> SweepPoint:
    """Solves one point, recording failures instead of raising them."""
    try:
        if task.refine:
            solution = solve_refined(
                task.p,
                task.d,
                task.k,
                task.quality,
                tol=task.tol,
                seed=task.seed,
                disc_error_bound=task.disc_error_bound,
                method=task.method,
                grid=task.grid,
            )
        else:
            solution = solve_on_grid(
                task.p,
                task.d,
                task.k,
                task.grid or default_grid(task.p, task.quality),
                tol=task.tol,
                seed=task.seed,
                method=task.method,
            )
    except SWEEP_POINT_ERRORS as ex:
        return SweepPoint(axis=task.axis, status="failed", error=f"{type(ex).__name__}: {ex}")

    common = dict(
        axis=task.axis,
        energies=solution.energies,
        disc_error=solution.disc_error,
        grid=solution.grid,
        flagged_levels=solution.flagged_levels,
    )
    try:
        report = degeneracy(solution, task.trust_factor)
    except SWEEP_POINT_ERRORS as ex:
        return SweepPoint(status="failed", error=f"{type(ex).__name__}: {ex}", **common)
    return SweepPoint(status="ok" if report.trusted else "untrusted", report=report, **common)


def run_sweep(
    *,
    kind: str,
    axis_names: Sequence[str],
    k: int,
    tasks: Sequence[Any],
    func: Callable[[Any], SweepPoint],
    workers: int = 1,
    on_point: Callable[[int, SweepPoint], None] | None = None,
) -> SweepResult:
    """Evaluates independent points, then sorts them by axis values."""
    points = parallel_map(func, tasks, workers=workers, on_result=on_point)
    points = sorted(points, key=SweepPoint.sort_key)
    return SweepResult(kind=kind, axis_names=tuple(axis_names), k=k, points=tuple(points))


def _check_sweep_args(values: Sequence[float], k: int, name: str):
    if len(values) == 0:
        raise ValueError(f"{name} must not be empty")
    if not all(math.isfinite(v) for v in values):
        raise ValueError(f"{name} must be finite: {list(values)}")
    if k < 3:
        raise ValueError(f"not ({k=} >= 3); the degeneracy needs three levels")


def flux_sweep(
    p: "zeropi.CircuitParams",
    flux_values: Sequence[float],
    k: int,
    *,
    d: "zeropi.DisorderParams" = DisorderParams(),
    quality: Quality = "standard",
    tol: float = 1e-10,
    seed: int = 0,
    refine: bool = True,
    trust_factor: float = 10,
    disc_error_bound: float | None = None,
    method: Method = "auto",
    grid: Grid2D | None = None,
    workers: int = 1,
    on_point: Callable[[int, SweepPoint], None] | None = None,
) -> SweepResult:
    """Solves the lowest k levels and the degeneracy at each external flux.

    `grid` overrides the quality-based default grid of every point.
    `disc_error_bound` flags levels whose two-grid error exceeds it.
    """
    _check_sweep_args(flux_values, k, "flux_values")
    tasks = [
        SpectrumTask(
            axis={"phi_ext": float(f)},
            p=p.with_edits(phi_ext=float(f)),
            d=d,
            k=k,
            quality=quality,
            tol=tol,
            seed=seed,
            refine=refine,
            trust_factor=trust_factor,
            disc_error_bound=disc_error_bound,
            method=method,
            grid=grid,
        )
        for f in flux_values
    ]
    return run_sweep(
        kind="flux-sweep",
        axis_names=["phi_ext"],
        k=k,
        tasks=tasks,
        func=solve_point,
        workers=workers,
        on_point=on_point,
    )
