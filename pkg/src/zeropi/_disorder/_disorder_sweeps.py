from typing import Callable, Sequence, TYPE_CHECKING

from zeropi._analysis._sweeps import (
    _check_sweep_args,
    run_sweep,
    solve_point,
    SpectrumTask,
    SweepPoint,
    SweepResult,
)
from zeropi._circuit import DisorderParams
from zeropi._grid import Grid2D, Quality
from zeropi._solve import Method

if TYPE_CHECKING:
    import zeropi


def junction_disorder_sweep(
    p: "zeropi.CircuitParams",
    delta_e_j_values: Sequence[float],
    k: int,
    *,
    relative: bool = False,
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
    """Spectrum and degeneracy versus the Josephson energy mismatch dE_J.

    Args:
        p: The symmetric device.
        delta_e_j_values: The mismatches to solve at. Absolute energies, or
            fractions of E_J when `relative` is set.
        k: Number of levels per point.
        relative: Interpret the values as dE_J/E_J.
        d: Other disorder held fixed along the sweep. Its delta_e_j is replaced.

    Raises:
        ValueError: A mismatch of at least E_J was requested.
    """
    _check_sweep_args(delta_e_j_values, k, "delta_e_j_values")
    axis_name = "delta_e_j_rel" if relative else "delta_e_j"
    tasks = []
    for v in delta_e_j_values:
        delta_e_j = float(v) * p.e_j if relative else float(v)
        if not (abs(delta_e_j) < p.e_j):
            raise ValueError(f"not (|delta_e_j={delta_e_j!r}| < {p.e_j=})")
        tasks.append(
            SpectrumTask(
                axis={axis_name: float(v)},
                p=p,
                d=d.with_edits(delta_e_j=delta_e_j),
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
        )
    return run_sweep(
        kind="disorder-sweep",
        axis_names=[axis_name],
        k=k,
        tasks=tasks,
        func=solve_point,
        workers=workers,
        on_point=on_point,
    )


def cj_disorder_check(
    p: "zeropi.CircuitParams",
    delta_c_j_rel_values: Sequence[float],
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
    """Spectrum versus the junction capacitance mismatch dC_J/C_J.

    The mismatch couples phi and theta through a mixed-derivative term. For
    a device deep in the degenerate regime the low levels barely move.
    """
    _check_sweep_args(delta_c_j_rel_values, k, "delta_c_j_rel_values")
    for v in delta_c_j_rel_values:
        if not (abs(v) <= 1):
            raise ValueError(f"not (|delta_c_j_rel={v!r}| <= 1)")
    tasks = [
        SpectrumTask(
            axis={"delta_c_j_rel": float(v)},
            p=p,
            d=d.with_edits(delta_c_j_rel=float(v)),
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
        for v in delta_c_j_rel_values
    ]
    return run_sweep(
        kind="cj-disorder",
        axis_names=["delta_c_j_rel"],
        k=k,
        tasks=tasks,
        func=solve_point,
        workers=workers,
        on_point=on_point,
    )
