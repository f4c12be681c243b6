"""Finite-difference spectra of the 0-pi superconducting circuit."""

__version__ = "0.1.0"

from zeropi._analysis import (
    degeneracy,
    DegeneracyReport,
    dmax_grid,
    EjOptimum,
    EjStarFit,
    export_wavefunction,
    fit_ejstar,
    flux_sweep,
    optimize_ej,
    OptimizationError,
    OrderingError,
    parity_labels,
    ridge_balance,
    ridge_masses,
    run_sweep,
    solve_point,
    SpectrumTask,
    SweepPoint,
    SweepResult,
)
from zeropi._circuit import (
    CircuitParams,
    DerivedScales,
    derived_scales,
    DisorderParams,
    node_capacitance_matrix,
    NODE_TO_NORMAL,
    node_to_normal,
    normal_capacitance_matrix,
    NORMAL_TO_NODE,
    normal_to_node,
    NormalCoords,
    PhysicalUnits,
    physical_units,
    potential_disordered,
    potential_node,
    potential_symmetric,
    potential_toy,
    regime_check,
    RegimeReport,
)
from zeropi._cli import (
    ConfigError,
    main,
    MODES,
    parse_axis,
    parse_config,
    parse_number,
    run,
    RunConfig,
    RunReport,
    spectrum_csv,
    wavefunction_csv,
)
from zeropi._disorder import (
    cj_disorder_check,
    coupling_elements,
    CouplingMatrices,
    dispersive_analysis,
    dispersive_shifts,
    DispersiveResult,
    junction_disorder_sweep,
    matrix_elements,
)
from zeropi._grid import (
    assemble,
    check_stencil_stability,
    default_grid,
    first_difference,
    Grid2D,
    inner_product,
    kinetic_matrix,
    phi_reflection,
    potential_diagonal,
    QUALITIES,
    Quality,
    second_difference,
    SparseHamiltonian,
    StencilStabilityError,
    theta_half_shift,
    theta_reflection,
    write_matrix_coo,
)
from zeropi._solve import (
    DENSE_DIMENSION_LIMIT,
    EigensolverConvergenceError,
    EigenSolution,
    harmonic_rotor_spectrum,
    lowest_eigenpairs,
    separable_toy_spectrum,
    solve_on_grid,
    solve_refined,
)
from zeropi._util import (
    csv_text,
    format_value,
    parallel_map,
    write_file,
)
