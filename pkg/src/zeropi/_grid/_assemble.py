import dataclasses
import pathlib
from typing import TYPE_CHECKING

import numpy as np
import scipy.sparse

from zeropi._circuit import potential_disordered, potential_toy
from zeropi._util import write_file
from zeropi._grid._grid2d import Grid2D

if TYPE_CHECKING:
    import zeropi


class StencilStabilityError(ValueError):
    """The mixed-derivative term would make the discrete kinetic energy indefinite."""


@dataclasses.dataclass(frozen=True)
class SparseHamiltonian:
    """A real symmetric finite-difference Hamiltonian.

    Attributes:
        matrix: The operator in CSR form, indexed like `grid` vectors.
        grid: The grid the operator was discretized on.
        potential: The diagonal potential term, one value per grid point.
        energy_scale: Largest circuit energy; sets shifts and tolerances.
    """

    matrix: scipy.sparse.csr_matrix
    grid: Grid2D
    potential: np.ndarray
    energy_scale: float

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def nnz(self) -> int:
        return self.matrix.nnz

    def entries(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Returns the (rows, cols, values) of the nonzero entries in row order."""
        coo = self.matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return coo.row[order], coo.col[order], coo.data[order]


def second_difference(n: int, spacing: float, *, periodic: bool) -> scipy.sparse.csr_matrix:
    """The 3-point stencil (f[i+1] - 2f[i] + f[i-1])/h^2.

    Without `periodic`, points beyond either end are treated as zero.
    """
    if n < 3:
        raise ValueError(f"not ({n=} >= 3)")
    s = 1 / spacing**2
    result = scipy.sparse.diags(
        [np.full(n - 1, s), np.full(n, -2 * s), np.full(n - 1, s)],
        [-1, 0, 1],
        format="lil",
    )
    if periodic:
        result[0, n - 1] = s
        result[n - 1, 0] = s
    return result.tocsr()


def first_difference(n: int, spacing: float, *, periodic: bool) -> scipy.sparse.csr_matrix:
    """The centered stencil (f[i+1] - f[i-1])/(2h). The result is antisymmetric."""
    if n < 3:
        raise ValueError(f"not ({n=} >= 3)")
    s = 1 / (2 * spacing)
    result = scipy.sparse.diags(
        [np.full(n - 1, -s), np.full(n - 1, s)],
        [-1, 1],
        format="lil",
    )
    if periodic:
        result[0, n - 1] = -s
        result[n - 1, 0] = s
    return result.tocsr()


def check_stencil_stability(*, e_cj: float, e_c_sigma: float, delta_c_j_rel: float):
    """Rejects mixed-derivative strengths that break lower-boundedness.

    The kinetic form 2*E_CJ*|d_phi psi|^2 + 2*E_CSigma*|d_theta psi|^2
    - 4*E_CSigma*r*(d_phi psi)(d_theta psi) is positive definite iff
    E_CSigma*r^2 < E_CJ. The centered product stencil is dominated by the
    3-point stencils, so the same condition suffices on the grid.
    """
    if not (e_c_sigma * delta_c_j_rel**2 < e_cj):
        raise StencilStabilityError(
            f"Mixed-derivative stencil is unbounded below: not "
            f"({e_c_sigma=} * {delta_c_j_rel=}**2 < {e_cj=})"
        )


def kinetic_matrix(
    p: "zeropi.CircuitParams",
    d: "zeropi.DisorderParams",
    g: Grid2D,
) -> scipy.sparse.csr_matrix:
    """-2*E_CJ*d_phi^2 - 2*E_CSigma*d_theta^2 + 4*E_CSigma*(dC_J/C_J)*d_phi*d_theta."""
    check_stencil_stability(
        e_cj=p.e_cj, e_c_sigma=p.e_c_sigma, delta_c_j_rel=d.delta_c_j_rel
    )
    eye_phi = scipy.sparse.identity(g.n_phi, format="csr")
    eye_theta = scipy.sparse.identity(g.n_theta, format="csr")
    result = -2 * p.e_cj * scipy.sparse.kron(
        second_difference(g.n_phi, g.d_phi, periodic=False), eye_theta
    ) - 2 * p.e_c_sigma * scipy.sparse.kron(
        eye_phi, second_difference(g.n_theta, g.d_theta, periodic=True)
    )
    if d.delta_c_j_rel != 0:
        result = result + 4 * p.e_c_sigma * d.delta_c_j_rel * scipy.sparse.kron(
            first_difference(g.n_phi, g.d_phi, periodic=False),
            first_difference(g.n_theta, g.d_theta, periodic=True),
        )
    return scipy.sparse.csr_matrix(result)


def potential_diagonal(
    p: "zeropi.CircuitParams",
    d: "zeropi.DisorderParams",
    g: Grid2D,
    *,
    toy: bool = False,
) -> np.ndarray:
    phi, theta = g.mesh()
    if toy:
        v = potential_toy(p, phi, theta)
    else:
        v = potential_disordered(p, d, phi, theta)
    return np.ascontiguousarray(v, dtype=np.float64).ravel()


def assemble(
    p: "zeropi.CircuitParams",
    d: "zeropi.DisorderParams",
    g: Grid2D,
    *,
    toy: bool = False,
) -> SparseHamiltonian:
    """Discretizes the (phi, theta) Hamiltonian on a grid.

    Args:
        p: The circuit.
        d: Disorder. delta_e_j enters the potential and delta_c_j_rel the
            mixed-derivative stencil. delta_c_rel and delta_e_l couple to the
            chi mode only and are ignored here.
        g: The grid.
        toy: Use the separable |cos(theta)| potential instead of the circuit
            potential. Only valid without disorder.

    Returns:
        The symmetric sparse Hamiltonian.

    Raises:
        StencilStabilityError: The mixed-derivative term is too strong.
    """
    if toy and d.has_junction_disorder:
        raise ValueError(f"The toy potential has no disorder terms but got {d=}")
    v = potential_diagonal(p, d, g, toy=toy)
    matrix = kinetic_matrix(p, d, g) + scipy.sparse.diags(v, format="csr")
    matrix = scipy.sparse.csr_matrix(matrix)
    matrix.sort_indices()
    return SparseHamiltonian(
        matrix=matrix,
        grid=g,
        potential=v,
        energy_scale=p.energy_scale,
    )


def inner_product(psi_a: np.ndarray, psi_b: np.ndarray, g: Grid2D) -> float:
    """The discrete L2 inner product sum(psi_a * psi_b) * d_phi * d_theta."""
    a = np.asarray(psi_a).ravel()
    b = np.asarray(psi_b).ravel()
    if a.shape != (g.dimension,) or b.shape != (g.dimension,):
        raise ValueError(
            f"Grid vectors must have {g.dimension=} entries but got "
            f"{a.shape=} and {b.shape=}"
        )
    return float(np.dot(a, b) * g.cell_area)


def write_matrix_coo(h: SparseHamiltonian, path: str | pathlib.Path):
    """Writes the nonzero entries as 'row col value' lines, preceded by a size header."""
    rows, cols, values = h.entries()
    lines = [f"# dimension={h.dimension} nnz={h.nnz} grid={h.grid}"]
    for r, c, v in zip(rows.tolist(), cols.tolist(), values.tolist()):
        lines.append(f"{r} {c} {v!r}")
    write_file(path, "\n".join(lines))
