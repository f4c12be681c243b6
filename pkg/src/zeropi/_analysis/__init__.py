from zeropi._analysis._degeneracy import (
    degeneracy,
    DegeneracyReport,
    OrderingError,
)
from zeropi._analysis._optimize import (
    dmax_grid,
    EjOptimum,
    EjStarFit,
    fit_ejstar,
    optimize_ej,
    OptimizationError,
)
from zeropi._analysis._sweeps import (
    flux_sweep,
    run_sweep,
    solve_point,
    SpectrumTask,
    SweepPoint,
    SweepResult,
)
from zeropi._analysis._wavefunction import (
    export_wavefunction,
    parity_labels,
    ridge_balance,
    ridge_masses,
)
