import math
from typing import Literal

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from zeropi._grid import SparseHamiltonian
from zeropi._solve._eigen_solution import EigenSolution, EigensolverConvergenceError

Method = Literal["auto", "sparse", "dense"]

# Problems up to this dimension are diagonalized densely when method="auto".
DENSE_DIMENSION_LIMIT = 400


def lowest_eigenpairs(
    h: SparseHamiltonian,
    k: int,
    tol: float = 1e-10,
    *,
    seed: int = 0,
    method: Method = "auto",
    max_sweeps: int = 4,
) -> EigenSolution:
    """Computes the k lowest eigenpairs of a sparse Hamiltonian.

    The sparse path runs ARPACK on the shift-inverted operator (H - sigma)^-1
    with sigma just below the smallest potential value, which lies below the
    whole spectrum because the kinetic term is positive definite. Lanczos
    started from one vector can miss members of exactly degenerate levels, so
    each run is followed by a probe of the deflated operator that collects
    any eigenvector that was missed. Pairs that don't meet `tol` are polished
    by block inverse iteration.

    Args:
        h: The Hamiltonian.
        k: Number of levels.
        tol: Required residual norm |H x - E x| for unit x.
        seed: Seeds the Lanczos starting vectors.
        method: "dense" always uses LAPACK, "sparse" always uses ARPACK and
            "auto" picks dense for small problems.
        max_sweeps: Inverse-iteration sweeps allowed before giving up.

    Returns:
        The solution, without discretization-error estimates.

    Raises:
        EigensolverConvergenceError: Residuals stayed above tol.
    """
    n = h.dimension
    if not (1 <= k < n):
        raise ValueError(f"not (1 <= {k=} < {h.dimension=})")
    if not (tol > 0):
        raise ValueError(f"not ({tol=} > 0)")
    if method not in ("auto", "sparse", "dense"):
        raise NotImplementedError(f"Unrecognized {method=}. Known: auto, sparse, dense")
    if method == "dense" or (method == "auto" and n <= DENSE_DIMENSION_LIMIT):
        energies, vectors = scipy.linalg.eigh(h.matrix.toarray(), subset_by_index=(0, k - 1))
    else:
        energies, vectors = _shift_invert_lowest(h, k, tol=tol, seed=seed, max_sweeps=max_sweeps)

    residuals = _residual_norms(h.matrix, energies, vectors)
    if not np.all(residuals <= tol):
        raise EigensolverConvergenceError(
            f"Residuals above {tol=}: {residuals.tolist()}",
            energies=energies,
            residual_norms=residuals,
        )

    vectors = _fix_signs(vectors)
    return EigenSolution(
        energies=np.asarray(energies, dtype=np.float64),
        wavefunctions=np.ascontiguousarray(vectors.T) / math.sqrt(h.grid.cell_area),
        residual_norms=residuals,
        grid=h.grid,
    )


def _residual_norms(matrix, energies: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    return np.linalg.norm(matrix @ vectors - vectors * energies[np.newaxis, :], axis=0)


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    biggest = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[biggest, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1
    return vectors * signs[np.newaxis, :]


def _rayleigh_ritz(matrix, basis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    q, _ = np.linalg.qr(basis)
    t = q.T @ (matrix @ q)
    t = (t + t.T) / 2
    values, small_vectors = scipy.linalg.eigh(t)
    return values, q @ small_vectors


def _shift_invert_lowest(
    h: SparseHamiltonian,
    k: int,
    *,
    tol: float,
    seed: int,
    max_sweeps: int,
) -> tuple[np.ndarray, np.ndarray]:
    n = h.dimension
    k_wanted = min(k + 4, n - 2)
    if k_wanted < k:
        raise ValueError(f"Sparse solve needs {k=} <= {n - 2=}; use method='dense'")
    rng = np.random.default_rng(seed)
    sigma = float(np.min(h.potential)) - 0.05 * h.energy_scale
    shifted = (h.matrix - sigma * scipy.sparse.identity(n, format="csr")).tocsc()
    lu = scipy.sparse.linalg.splu(shifted)

    def run_arpack(op: scipy.sparse.linalg.LinearOperator, count: int) -> tuple[np.ndarray, np.ndarray]:
        try:
            mu, x = scipy.sparse.linalg.eigsh(
                op, k=count, which="LM", v0=rng.standard_normal(n), tol=0
            )
        except scipy.sparse.linalg.ArpackNoConvergence as ex:
            mu = np.asarray(ex.eigenvalues)
            best = np.sort(1 / mu[mu > 0] + sigma) if len(mu) else np.array([])
            raise EigensolverConvergenceError(
                f"ARPACK did not converge: {ex}",
                energies=best,
                residual_norms=np.full(len(best), np.inf),
            ) from ex
        keep = mu > 0
        return 1 / mu[keep] + sigma, x[:, keep]

    op = scipy.sparse.linalg.LinearOperator((n, n), matvec=lu.solve, dtype=np.float64)
    energies, vectors = run_arpack(op, k_wanted)
    order = np.argsort(energies)
    energies, vectors = energies[order], vectors[:, order]

    # Probe the complement of the found vectors for missed degenerate partners.
    for _ in range(3):
        room = n - vectors.shape[1] - 1
        if room < 1:
            break
        found = vectors

        def deflated(x, found=found):
            x = x - found @ (found.T @ x)
            y = lu.solve(x)
            return y - found @ (found.T @ y)

        probe_op = scipy.sparse.linalg.LinearOperator((n, n), matvec=deflated, dtype=np.float64)
        extra_energies, extra_vectors = run_arpack(probe_op, min(k_wanted, room))
        missed = extra_energies < energies[-1]
        if not np.any(missed):
            break
        energies, vectors = _rayleigh_ritz(
            h.matrix, np.hstack([vectors, extra_vectors[:, missed]])
        )
        energies, vectors = energies[:k_wanted], vectors[:, :k_wanted]

    for _ in range(max_sweeps):
        if np.all(_residual_norms(h.matrix, energies[:k], vectors[:, :k]) <= tol):
            break
        energies, vectors = _rayleigh_ritz(h.matrix, lu.solve(vectors))
    return energies[:k], vectors[:, :k]
