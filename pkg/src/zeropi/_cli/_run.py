import dataclasses
import math
import sys
import time
from typing import Any, Callable

import numpy as np

from zeropi._analysis import (
    degeneracy,
    DegeneracyReport,
    dmax_grid,
    export_wavefunction,
    fit_ejstar,
    flux_sweep,
    optimize_ej,
    OrderingError,
    parity_labels,
    ridge_balance,
    SweepPoint,
    SweepResult,
)
from zeropi._analysis._sweeps import SWEEP_POINT_ERRORS
from zeropi._cli._config import RunConfig
from zeropi._disorder import cj_disorder_check, dispersive_analysis, junction_disorder_sweep
from zeropi._grid import default_grid
from zeropi._solve import EigenSolution, solve_on_grid, solve_refined
from zeropi._util import csv_text, format_value, write_file


@dataclasses.dataclass
class RunReport:
    """Everything a run found that belongs in the manifest or the trust report."""

    failures: list[str] = dataclasses.field(default_factory=list)
    untrusted: list[str] = dataclasses.field(default_factory=list)
    resonances: list[str] = dataclasses.field(default_factory=list)
    flagged: list[str] = dataclasses.field(default_factory=list)
    notes: list[str] = dataclasses.field(default_factory=list)
    grids: set[str] = dataclasses.field(default_factory=set)
    files: list[str] = dataclasses.field(default_factory=list)

    def trust_text(self) -> str:
        out = []
        for title, lines in [
            ("failed points", self.failures),
            ("untrusted degeneracy values", self.untrusted),
            ("levels over the discretization error bound", self.flagged),
            ("resonant pairs excluded from dispersive sums", self.resonances),
            ("notes", self.notes),
        ]:
            out.append(f"{title}: {len(lines)}")
            out.extend(f"    {line}" for line in lines)
        return "\n".join(out) + "\n"


def _axis_text(axis: dict[str, float]) -> str:
    return " ".join(f"{k}={v:.6g}" for k, v in axis.items())


def _progress(kind: str, total: int) -> Callable[[int, SweepPoint], None]:
    done = 0

    def on_point(index: int, point: SweepPoint):
        nonlocal done
        done += 1
        d = point.d_max
        if d is None and point.report is not None:
            d = point.report.d_value
        tail = "" if d is None else f" D={d:.4g}"
        if point.status == "failed":
            tail += f" ({point.error})"
        print(f"[{done}/{total}] {kind} {_axis_text(point.axis)} {point.status}{tail}", file=sys.stderr)

    return on_point


def _write(config: RunConfig, report: RunReport, name: str, content: str):
    write_file(config.out / name, content)
    report.files.append(name)


def _record_sweep(result: SweepResult, report: RunReport):
    for point in result.points:
        where = _axis_text(point.axis)
        if point.grid is not None:
            report.grids.add(str(point.grid))
        if point.status == "failed":
            report.failures.append(f"{where}: {point.error}")
        elif point.status == "untrusted":
            if point.error is not None:
                report.untrusted.append(f"{where}: {point.error}")
            elif point.report is not None:
                report.untrusted.append(f"{where}: {_untrusted_reason(point.report)}")
            else:
                report.untrusted.append(f"{where}: no two-grid error estimate")
        if point.flagged_levels:
            report.flagged.append(f"{where}: levels {list(point.flagged_levels)}")


def _untrusted_reason(r: DegeneracyReport) -> str:
    if r.splitting_error is None:
        return f"D={r.d_value:.6g} without a discretization error estimate"
    return (
        f"D={r.d_value:.6g} splitting={r.splitting:.6g} "
        f"splitting_error={r.splitting_error:.6g}"
    )


def _solve_device(config: RunConfig, report: RunReport) -> EigenSolution | None:
    p = config.circuit
    try:
        if config.refine:
            e = solve_refined(
                p,
                config.disorder,
                config.k,
                config.quality,
                tol=config.tol,
                disc_error_bound=config.disc_error_bound,
                seed=config.seed,
                method=config.method,
            )
        else:
            e = solve_on_grid(
                p,
                config.disorder,
                config.k,
                default_grid(p, config.quality),
                tol=config.tol,
                seed=config.seed,
                method=config.method,
            )
    except SWEEP_POINT_ERRORS as ex:
        report.failures.append(f"{config.mode}: {type(ex).__name__}: {ex}")
        print(f"[1/1] {config.mode} failed ({type(ex).__name__}: {ex})", file=sys.stderr)
        return None
    report.grids.add(str(e.grid))
    if e.flagged_levels:
        report.flagged.append(f"{config.mode}: levels {list(e.flagged_levels)}")
    print(f"[1/1] {config.mode} solved on {e.grid}", file=sys.stderr)
    return e


def spectrum_csv(e: EigenSolution) -> str:
    """Per-level energies, error estimates and localization diagnostics."""
    parities = parity_labels(e)
    rows = []
    for level in range(e.k):
        rows.append(
            {
                "level": level,
                "E[hbar_omega_p]": e.energies[level],
                "disc_error[hbar_omega_p]": None if e.disc_error is None else e.disc_error[level],
                "extrapolated[hbar_omega_p]": (
                    None if e.extrapolated_energies is None else e.extrapolated_energies[level]
                ),
                "residual[hbar_omega_p]": e.residual_norms[level],
                "parity": parities[level],
                "ridge_balance[1]": ridge_balance(e, level),
            }
        )
    return csv_text(
        [
            "level",
            "E[hbar_omega_p]",
            "disc_error[hbar_omega_p]",
            "extrapolated[hbar_omega_p]",
            "residual[hbar_omega_p]",
            "parity",
            "ridge_balance[1]",
        ],
        rows,
    )


def _write_degeneracy(config: RunConfig, report: RunReport, e: EigenSolution):
    try:
        r = degeneracy(e, config.trust_factor)
    except OrderingError as ex:
        report.failures.append(f"{config.mode}: {type(ex).__name__}: {ex}")
        return
    if not r.trusted:
        report.untrusted.append(f"{config.mode}: {_untrusted_reason(r)}")
    row = {
        "D[1]": r.d_value,
        "splitting[hbar_omega_p]": r.splitting,
        "gap[hbar_omega_p]": r.gap,
        "splitting_error[hbar_omega_p]": r.splitting_error,
        "trusted": r.trusted,
        "trust_factor[1]": config.trust_factor,
    }
    _write(config, report, "degeneracy.csv", csv_text(list(row), [row]))


def _run_spectrum(config: RunConfig, report: RunReport):
    e = _solve_device(config, report)
    if e is None:
        return
    _write(config, report, "spectrum.csv", spectrum_csv(e))
    _write_degeneracy(config, report, e)


def _run_flux_sweep(config: RunConfig, report: RunReport):
    values = config.axes["flux"]
    result = flux_sweep(
        config.circuit,
        values,
        config.k,
        d=config.disorder,
        quality=config.quality,
        tol=config.tol,
        seed=config.seed,
        refine=config.refine,
        trust_factor=config.trust_factor,
        disc_error_bound=config.disc_error_bound,
        method=config.method,
        workers=config.workers,
        on_point=_progress(config.mode, len(values)),
    )
    _record_sweep(result, report)
    _write(config, report, "sweep.csv", result.to_csv())


def _optimize_options(config: RunConfig) -> dict[str, Any]:
    return dict(
        phi_ext=config.phi_ext,
        d=config.disorder,
        quality=config.quality,
        tol=config.tol,
        seed=config.seed,
        scan_points=config.scan_points,
        e_j_bounds=config.e_j_bounds,
        rel_tol=config.rel_tol,
        refine_optimum=config.refine_optimum,
        trust_factor=config.trust_factor,
        disc_error_bound=config.disc_error_bound,
        method=config.method,
    )


def _run_dmax_grid(config: RunConfig, report: RunReport):
    e_l_values = [1 / v for v in config.axes["omega_p_over_e_l"]]
    e_c_sigma_values = [1 / v for v in config.axes["omega_p_over_e_c_sigma"]]
    result = dmax_grid(
        e_l_values,
        e_c_sigma_values,
        config.k,
        workers=config.workers,
        on_point=_progress(config.mode, len(e_l_values) * len(e_c_sigma_values)),
        **_optimize_options(config),
    )
    _record_sweep(result, report)
    _write(config, report, "sweep.csv", result.to_csv())

    for require_trusted in [True, False]:
        try:
            fit = fit_ejstar(result, require_trusted=require_trusted)
        except ValueError as ex:
            report.notes.append(f"E_J* fit ({require_trusted=}): {ex}")
            continue
        row = {
            "intercept[hbar_omega_p]": fit.intercept,
            "slope[hbar_omega_p]": fit.slope,
            "n_points": fit.n_points,
            "rms_residual[hbar_omega_p]": fit.rms_residual,
            "trusted_points_only": require_trusted,
        }
        _write(config, report, "ejstar_fit.csv", csv_text(list(row), [row]))
        break


def _run_ej_optimize(config: RunConfig, report: RunReport):
    try:
        opt = optimize_ej(config.e_l, config.e_c_sigma, config.k, **_optimize_options(config))
    except SWEEP_POINT_ERRORS as ex:
        report.failures.append(f"{config.mode}: {type(ex).__name__}: {ex}")
        print(f"[1/1] {config.mode} failed ({type(ex).__name__}: {ex})", file=sys.stderr)
        return
    print(f"[1/1] {config.mode} E_J*={opt.e_j_star:.6g} D={opt.d_max:.4g}", file=sys.stderr)
    if opt.flat:
        report.untrusted.append("D varies too little over the scan to locate E_J*")
    if opt.boundary:
        report.untrusted.append(f"E_J*={opt.e_j_star:.6g} lies on the scan boundary")
    if opt.report is not None and not opt.report.trusted:
        report.untrusted.append(f"{config.mode}: {_untrusted_reason(opt.report)}")
    if opt.flagged_levels:
        report.flagged.append(f"{config.mode}: levels {list(opt.flagged_levels)}")

    scan = [{"E_J[hbar_omega_p]": e_j, "D[1]": d} for e_j, d in zip(opt.scan_e_j, opt.scan_d)]
    _write(config, report, "sweep.csv", csv_text(["E_J[hbar_omega_p]", "D[1]"], scan))
    row: dict[str, Any] = {
        "E_J_star[hbar_omega_p]": opt.e_j_star,
        "D_max[1]": opt.d_max,
        "D_search[1]": opt.d_search,
        "flat": opt.flat,
        "boundary": opt.boundary,
        "trusted": opt.trusted,
        "evaluations": opt.evaluations,
    }
    if opt.energies is not None:
        for level, energy in enumerate(opt.energies):
            row[f"E{level}[hbar_omega_p]"] = energy
    _write(config, report, "optimum.csv", csv_text(list(row), [row]))


def _run_disorder_sweep(config: RunConfig, report: RunReport):
    name, values = next(iter(config.axes.items()))
    common = dict(
        d=config.disorder,
        quality=config.quality,
        tol=config.tol,
        seed=config.seed,
        refine=config.refine,
        trust_factor=config.trust_factor,
        disc_error_bound=config.disc_error_bound,
        method=config.method,
        workers=config.workers,
        on_point=_progress(config.mode, len(values)),
    )
    if name == "delta_e_j_rel":
        result = junction_disorder_sweep(config.circuit, values, config.k, relative=True, **common)
    else:
        result = cj_disorder_check(config.circuit, values, config.k, **common)
    _record_sweep(result, report)
    _write(config, report, "sweep.csv", result.to_csv())


def _run_dispersive(config: RunConfig, report: RunReport):
    e = _solve_device(config, report)
    if e is None:
        return
    _write(config, report, "spectrum.csv", spectrum_csv(e))
    _write_degeneracy(config, report, e)
    result = dispersive_analysis(
        e, config.circuit, config.disorder, resonance_factor=config.resonance_factor
    )
    for a, b in result.resonance_flags:
        report.resonances.append(
            f"(l, l')=({a}, {b}): |Delta|={abs(result.detunings[a, b]):.6g} < "
            f"{format_value(result.resonance_factor)}*|g|="
            f"{result.resonance_factor * math.sqrt(result.g_squared[a, b]):.6g}"
        )
    worst = np.max(np.abs(result.lamb)) if len(result.lamb) else 0.0
    if e.k >= 3 and worst >= e.energies[2] - e.energies[0]:
        report.notes.append(
            f"max |kappa_l|={worst:.6g} is not small against the inter-doublet gap "
            f"{e.energies[2] - e.energies[0]:.6g}"
        )
    _write(config, report, "couplings.csv", result.couplings_csv())
    _write(config, report, "shifts.csv", result.shifts_csv())


def wavefunction_csv(e: EigenSolution, level: int) -> str:
    data = export_wavefunction(e, level)
    rows = [{"phi[rad]": phi, "theta[rad]": theta, "amplitude[1]": amp} for phi, theta, amp in data]
    return csv_text(["phi[rad]", "theta[rad]", "amplitude[1]"], rows)


def _run_wavefunction_export(config: RunConfig, report: RunReport):
    e = _solve_device(config, report)
    if e is None:
        return
    _write(config, report, "spectrum.csv", spectrum_csv(e))
    for level in config.levels:
        _write(config, report, f"wavefunction_{level}.csv", wavefunction_csv(e, level))


MODE_RUNNERS: dict[str, Callable[[RunConfig, RunReport], None]] = {
    "spectrum": _run_spectrum,
    "flux-sweep": _run_flux_sweep,
    "dmax-grid": _run_dmax_grid,
    "ej-optimize": _run_ej_optimize,
    "disorder-sweep": _run_disorder_sweep,
    "dispersive": _run_dispersive,
    "wavefunction-export": _run_wavefunction_export,
}


def _manifest_text(config: RunConfig, report: RunReport, wall_time: float) -> str:
    import zeropi

    lines = [
        f"zeropi_version = {zeropi.__version__}",
        f"mode = {config.mode}",
        f"status = {'failed' if report.failures else 'ok'}",
        f"failed_points = {len(report.failures)}",
        f"wall_time_seconds = {wall_time:.3f}",
    ]
    lines.extend(f"grid = {g}" for g in sorted(report.grids))
    lines.extend(f"file = {f}" for f in report.files)
    lines.extend(f"failure = {f}" for f in report.failures)
    lines.append("")
    lines.append("# resolved configuration")
    lines.append(config.resolved_text().rstrip("\n"))
    return "\n".join(lines) + "\n"


def run(config: RunConfig) -> int:
    """Executes a configured run and writes its files into `config.out`.

    Always writes manifest.txt and trust_report.txt, plus the result CSVs of
    the mode. Failed points are recorded instead of aborting the run.

    Returns:
        The process exit status: 1 when any point failed, else 0.
    """
    runner = MODE_RUNNERS.get(config.mode)
    if runner is None:
        msg = f"Unrecognized mode: {config.mode!r}.\n\nRecognized modes are:"
        for k in sorted(MODE_RUNNERS.keys()):
            msg += "\n    " + k
        raise NotImplementedError(msg)

    start = time.monotonic()
    report = RunReport()
    runner(config, report)
    wall_time = time.monotonic() - start
    _write(config, report, "trust_report.txt", report.trust_text())
    write_file(config.out / "manifest.txt", _manifest_text(config, report, wall_time))
    return 1 if report.failures else 0
