from zeropi._solve._eigen_solution import (
    EigenSolution,
    EigensolverConvergenceError,
)
from zeropi._solve._lowest_eigenpairs import (
    DENSE_DIMENSION_LIMIT,
    lowest_eigenpairs,
    Method,
)
from zeropi._solve._oracles import (
    harmonic_rotor_spectrum,
    separable_toy_spectrum,
)
from zeropi._solve._refine import (
    solve_on_grid,
    solve_refined,
)
