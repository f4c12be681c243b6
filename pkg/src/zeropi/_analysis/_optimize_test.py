import math

import numpy as np
import pytest

import zeropi
from zeropi._analysis import _optimize


def _law(e_l: float, e_c_sigma: float) -> float:
    return 0.17 + 0.11 * math.log10(e_c_sigma / e_l)


def _fake_solver(peak_d: float = 2.0, width: float = 10.0):
    """Stands in for a grid solve with D peaked at the linear E_J* law."""

    def solve(p, d, k, g, *, tol, seed, method="auto"):
        e_j_star = _law(p.e_l, p.e_c_sigma)
        value = peak_d - width * math.log10(p.e_j / e_j_star) ** 2
        return np.array([0.0, 10**-value, 1.0])

    return solve


def test_optimize_ej_finds_peak(monkeypatch):
    monkeypatch.setattr(_optimize, "solve_on_grid", _fake_solver())
    optimum = zeropi.optimize_ej(1e-3, 1e-3, refine_optimum=False)
    assert optimum.e_j_star == pytest.approx(0.17, rel=0.01)
    assert optimum.d_max == pytest.approx(2, abs=1e-3)
    assert optimum.d_search == optimum.d_max
    assert not optimum.flat
    assert not optimum.boundary
    assert not optimum.trusted
    assert optimum.evaluations > 25
    assert len(optimum.scan_e_j) == 25
    assert optimum.scan_e_j[0] == pytest.approx(10**-1.5)
    assert optimum.scan_e_j[-1] == pytest.approx(1)


def test_optimize_ej_flat_landscape(monkeypatch):
    monkeypatch.setattr(_optimize, "solve_on_grid", _fake_solver(width=0))
    optimum = zeropi.optimize_ej(1e-3, 1e-3, refine_optimum=False)
    assert optimum.flat
    assert optimum.evaluations == 25
    assert optimum.e_j_star in optimum.scan_e_j.tolist()


def test_optimize_ej_boundary(monkeypatch):
    def solve(p, d, k, g, *, tol, seed, method="auto"):
        return np.array([0.0, 10**-p.e_j, 1.0])

    monkeypatch.setattr(_optimize, "solve_on_grid", solve)
    optimum = zeropi.optimize_ej(1e-3, 1e-3, refine_optimum=False)
    assert optimum.boundary
    assert optimum.e_j_star == pytest.approx(1)
    assert optimum.evaluations == 25


def test_optimize_ej_failures(monkeypatch):
    def always_fails(p, d, k, g, *, tol, seed, method="auto"):
        raise zeropi.EigensolverConvergenceError(
            "nope", energies=np.zeros(0), residual_norms=np.zeros(0)
        )

    monkeypatch.setattr(_optimize, "solve_on_grid", always_fails)
    with pytest.raises(zeropi.OptimizationError):
        zeropi.optimize_ej(1e-3, 1e-3, refine_optimum=False)

    inner = _fake_solver()

    def fails_at_small_e_j(p, d, k, g, *, tol, seed, method="auto"):
        if p.e_j < 0.05:
            raise zeropi.EigensolverConvergenceError(
                "nope", energies=np.zeros(0), residual_norms=np.zeros(0)
            )
        return inner(p, d, k, g, tol=tol, seed=seed)

    monkeypatch.setattr(_optimize, "solve_on_grid", fails_at_small_e_j)
    optimum = zeropi.optimize_ej(1e-3, 1e-3, refine_optimum=False)
    assert np.sum(np.isinf(optimum.scan_d)) > 0
    assert optimum.e_j_star == pytest.approx(0.17, rel=0.01)


def test_optimize_ej_validation():
    with pytest.raises(ValueError):
        zeropi.optimize_ej(0, 1e-3)
    with pytest.raises(ValueError):
        zeropi.optimize_ej(1e-3, 1e-3, e_j_bounds=(1, 0.1))


def test_dmax_grid_rows_and_fit(monkeypatch):
    monkeypatch.setattr(_optimize, "solve_on_grid", _fake_solver())
    e_l_values = [1e-3, 2e-3, 4e-3]
    e_c_sigma_values = [1e-3, 3e-3, 1e-2]
    table = zeropi.dmax_grid(e_l_values, e_c_sigma_values, 3, refine_optimum=False)
    assert table.kind == "dmax-grid"
    assert len(table.points) == 9
    assert [tuple(p.axis.values()) for p in table.points] == [
        (a, b) for a in e_l_values for b in e_c_sigma_values
    ]
    for point in table.points:
        assert point.status == "untrusted"
        assert point.e_j_star == pytest.approx(
            _law(point.axis["e_l"], point.axis["e_c_sigma"]), rel=0.01
        )
        assert point.d_max == pytest.approx(2, abs=1e-3)

    header = table.to_csv().split("\n")[0].split(",")
    assert header[:3] == ["e_l[hbar_omega_p]", "e_c_sigma[hbar_omega_p]", "status"]
    assert "E_J_star[hbar_omega_p]" in header

    with pytest.raises(ValueError, match="usable"):
        zeropi.fit_ejstar(table)
    fit = zeropi.fit_ejstar(table, require_trusted=False)
    assert fit.n_points == 9
    assert fit.intercept == pytest.approx(0.17, abs=0.005)
    assert fit.slope == pytest.approx(0.11, abs=0.005)


def test_dmax_grid_two_by_two(monkeypatch):
    monkeypatch.setattr(_optimize, "solve_on_grid", _fake_solver())
    table = zeropi.dmax_grid([1e-3, 1e-2], [1e-3, 1e-2], refine_optimum=False)
    assert len(table.points) == 4
    assert len(table.to_csv().strip().split("\n")) == 5


def _table(points: list[tuple[float, float, float, str]]) -> zeropi.SweepResult:
    return zeropi.SweepResult(
        kind="dmax-grid",
        axis_names=("e_l", "e_c_sigma"),
        k=3,
        points=tuple(
            zeropi.SweepPoint(
                axis={"e_l": e_l, "e_c_sigma": e_cs}, status=status, e_j_star=e_j
            )
            for e_l, e_cs, e_j, status in points
        ),
    )


def test_fit_ejstar_exact_line():
    rows = []
    for e_l in [1e-4, 1e-3, 1e-2]:
        for e_cs in [1e-4, 1e-3, 1e-2]:
            rows.append((e_l, e_cs, _law(e_l, e_cs), "ok"))
    fit = zeropi.fit_ejstar(_table(rows))
    assert fit.intercept == pytest.approx(0.17, abs=1e-12)
    assert fit.slope == pytest.approx(0.11, abs=1e-12)
    assert fit.rms_residual < 1e-12


def test_fit_ejstar_two_ratios_interpolates():
    rows = [
        (1e-3, 1e-3, 0.2, "ok"),
        (1e-2, 1e-2, 0.2, "ok"),
        (1e-4, 1e-4, 0.2, "ok"),
        (1e-3, 1e-2, 0.1, "ok"),
        (1e-4, 1e-3, 0.1, "ok"),
        (1e-2, 1e-1, 0.1, "ok"),
        (1e-2, 1e-1, 5.0, "failed"),
    ]
    fit = zeropi.fit_ejstar(_table(rows))
    assert fit.n_points == 6
    assert fit.intercept == pytest.approx(0.2)
    assert fit.slope == pytest.approx(-0.1)


def test_fit_ejstar_errors():
    same_ratio = [(10.0**-a, 10.0**-a, 0.2, "ok") for a in range(1, 8)]
    with pytest.raises(ValueError, match="Rank-deficient"):
        zeropi.fit_ejstar(_table(same_ratio))

    few = [(1e-3, 10.0**-a, 0.2, "ok") for a in range(1, 4)]
    with pytest.raises(ValueError, match="usable"):
        zeropi.fit_ejstar(_table(few))

    untrusted = [(1e-3, 10.0**-a, 0.2, "untrusted") for a in range(1, 8)]
    with pytest.raises(ValueError, match="usable"):
        zeropi.fit_ejstar(_table(untrusted))
    assert zeropi.fit_ejstar(_table(untrusted), require_trusted=False).n_points == 7

    flux = zeropi.SweepResult(kind="flux-sweep", axis_names=("phi_ext",), k=3, points=())
    with pytest.raises(ValueError, match="dmax-grid"):
        zeropi.fit_ejstar(flux)


def test_fit_ejstar_skips_points_outside_the_degenerate_regime():
    law_rows = [
        zeropi.SweepPoint(
            axis={"e_l": 1e-3, "e_c_sigma": e_cs},
            status="ok",
            e_j_star=_law(1e-3, e_cs),
            d_max=2.0,
        )
        for e_cs in [1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2]
    ]
    outliers = [
        zeropi.SweepPoint(axis={"e_l": 1e-2, "e_c_sigma": 1e-3}, status="ok", e_j_star=0.4, d_max=0.2),
        zeropi.SweepPoint(
            axis={"e_l": 1e-2, "e_c_sigma": 1e-2}, status="ok", e_j_star=1.0, d_max=1.5, boundary=True
        ),
        zeropi.SweepPoint(
            axis={"e_l": 1e-2, "e_c_sigma": 1e-1}, status="ok", e_j_star=0.05, d_max=1.5, flat=True
        ),
    ]
    table = zeropi.SweepResult(
        kind="dmax-grid",
        axis_names=("e_l", "e_c_sigma"),
        k=3,
        points=tuple(law_rows + outliers),
    )
    fit = zeropi.fit_ejstar(table)
    assert fit.n_points == 6
    assert fit.intercept == pytest.approx(0.17, abs=1e-12)
    assert fit.slope == pytest.approx(0.11, abs=1e-12)

    # Lowering the floor lets the weakly degenerate point back in.
    assert zeropi.fit_ejstar(table, d_floor=0.1).n_points == 7
    with pytest.raises(ValueError, match="usable"):
        zeropi.fit_ejstar(table, d_floor=3)


def test_optimize_ej_passes_solver_options(monkeypatch):
    seen = []

    def solve(p, d, k, g, *, tol, seed, method="auto"):
        seen.append(method)
        return _fake_solver()(p, d, k, g, tol=tol, seed=seed)

    monkeypatch.setattr(_optimize, "solve_on_grid", solve)
    zeropi.optimize_ej(1e-3, 1e-3, refine_optimum=False, method="dense", scan_points=5)
    assert seen and set(seen) == {"dense"}
