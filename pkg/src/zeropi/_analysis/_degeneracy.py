import dataclasses
import math
from typing import Sequence

import numpy as np

from zeropi._solve import EigenSolution


class OrderingError(ValueError):
    """The two lowest levels are not strictly increasing."""


@dataclasses.dataclass(frozen=True)
class DegeneracyReport:
    """Degeneracy of the ground doublet.

    Attributes:
        d_value: log10((E2 - E0) / (E1 - E0)).
        splitting: E1 - E0.
        gap: E2 - E0.
        trusted: Whether the two-grid error estimate of the splitting is below
            splitting / trust_factor. False when no estimate is available.
        splitting_error: The two-grid error estimate of the splitting, if any.
    """

    d_value: float
    splitting: float
    gap: float
    trusted: bool
    splitting_error: float | None = None


def degeneracy(
    e: EigenSolution | Sequence[float] | np.ndarray,
    trust_factor: float = 10,
) -> DegeneracyReport:
    """Computes the degeneracy parameter D from the three lowest levels.

    Args:
        e: A solution (whose two-grid estimate decides trust) or bare energies
            (never trusted).
        trust_factor: The splitting must exceed its error estimate by this factor.

    Raises:
        OrderingError: E1 - E0 <= 0.
    """
    if not (trust_factor > 0):
        raise ValueError(f"not ({trust_factor=} > 0)")
    if isinstance(e, EigenSolution):
        energies = e.energies
        splitting_error = e.splitting_error(0, 1)
    else:
        energies = np.asarray(e, dtype=np.float64)
        splitting_error = None
    if len(energies) < 3:
        raise ValueError(f"Need at least 3 levels but got {len(energies)}")

    splitting = float(energies[1] - energies[0])
    gap = float(energies[2] - energies[0])
    if not (splitting > 0):
        raise OrderingError(
            f"Ground doublet is not ordered: E1 - E0 = {splitting!r} "
            f"for energies {list(energies[:3])}"
        )
    trusted = splitting_error is not None and splitting_error * trust_factor < splitting
    return DegeneracyReport(
        d_value=math.log10(gap / splitting),
        splitting=splitting,
        gap=gap,
        trusted=trusted,
        splitting_error=splitting_error,
    )
