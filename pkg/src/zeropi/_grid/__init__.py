from zeropi._grid._assemble import (
    assemble,
    check_stencil_stability,
    first_difference,
    inner_product,
    kinetic_matrix,
    potential_diagonal,
    second_difference,
    SparseHamiltonian,
    StencilStabilityError,
    write_matrix_coo,
)
from zeropi._grid._grid2d import (
    default_grid,
    Grid2D,
    phi_reflection,
    QUALITIES,
    Quality,
    theta_half_shift,
    theta_reflection,
)
