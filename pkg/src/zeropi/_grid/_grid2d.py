import dataclasses
import math
from typing import Literal, TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    import zeropi


Quality = Literal["coarse", "standard", "fine"]

# Largest admissible (phi spacing, theta point count) per quality level.
_QUALITY_TABLE: dict[str, tuple[float, int]] = {
    "coarse": (0.15, 60),
    "standard": (0.10, 100),
    "fine": (0.05, 200),
}
QUALITIES: tuple[str, ...] = tuple(_QUALITY_TABLE.keys())


@dataclasses.dataclass(frozen=True)
class Grid2D:
    """Uniform finite-difference grid over the (phi, theta) plane.

    phi runs over m*d_phi for m = -M..M with the wavefunction taken to vanish
    beyond +-phi_max. theta runs over n*d_theta for n = 0..N-1 and wraps
    around periodically. Grid vectors are flattened phi-major, so the point
    (m, n) lives at index (m + M)*N + n.

    Attributes:
        phi_max: Truncation half-width phi_M.
        n_phi: Number of phi points 2M+1.
        n_theta: Number of theta points N.
    """

    phi_max: float
    n_phi: int
    n_theta: int

    def __post_init__(self):
        if not (self.phi_max > 0) or not math.isfinite(self.phi_max):
            raise ValueError(f"not (0 < {self.phi_max=} < inf)")
        if not isinstance(self.n_phi, (int, np.integer)) or not isinstance(
            self.n_theta, (int, np.integer)
        ):
            raise ValueError(f"Grid sizes must be integers: {self.n_phi=}, {self.n_theta=}")
        if self.n_phi < 3 or self.n_phi % 2 != 1:
            raise ValueError(f"not ({self.n_phi=} odd and >= 3)")
        if self.n_theta < 3:
            raise ValueError(f"not ({self.n_theta=} >= 3)")

    @property
    def m(self) -> int:
        return (self.n_phi - 1) // 2

    @property
    def d_phi(self) -> float:
        return self.phi_max / self.m

    @property
    def d_theta(self) -> float:
        return 2 * math.pi / self.n_theta

    @property
    def phi(self) -> np.ndarray:
        return np.arange(-self.m, self.m + 1) * self.d_phi

    @property
    def theta(self) -> np.ndarray:
        return np.arange(self.n_theta) * self.d_theta

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_phi, self.n_theta

    @property
    def dimension(self) -> int:
        return self.n_phi * self.n_theta

    @property
    def cell_area(self) -> float:
        return self.d_phi * self.d_theta

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Returns (phi, theta) coordinate arrays of shape `self.shape`."""
        return np.meshgrid(self.phi, self.theta, indexing="ij")

    def refined(self) -> "Grid2D":
        """A grid with both spacings at most halved and phi_max grown by 25%."""
        return Grid2D(
            phi_max=self.phi_max * 1.25,
            n_phi=2 * math.ceil(2.5 * self.m) + 1,
            n_theta=2 * self.n_theta,
        )

    def __str__(self) -> str:
        return (
            f"Grid2D(phi_max={self.phi_max:.6g}, n_phi={self.n_phi}, "
            f"n_theta={self.n_theta}, d_phi={self.d_phi:.6g}, "
            f"d_theta={self.d_theta:.6g})"
        )


def default_grid(p: "zeropi.CircuitParams", quality: Quality = "standard") -> Grid2D:
    """Picks a grid wide enough for the harmonic phi envelope of the low states.

    Args:
        p: The circuit. Only E_CJ and E_L matter.
        quality: Spacing class. "fine" halves the phi spacing of "standard".

    Returns:
        A grid with phi_max = max(6, 3.5*(8*E_CJ/E_L)^(1/4)) and spacings no
        larger than the quality table allows. n_theta is always even, so the
        theta -> theta + pi shift is an exact permutation of the grid.
    """
    if quality not in _QUALITY_TABLE:
        raise ValueError(f"Unrecognized {quality=}. Known qualities: {QUALITIES}")
    d_phi_max, n_theta_min = _QUALITY_TABLE[quality]
    phi_max = max(6.0, 3.5 * (8 * p.e_cj / p.e_l) ** 0.25)
    m = math.ceil(phi_max / d_phi_max - 1e-9)
    n_theta = n_theta_min + n_theta_min % 2
    return Grid2D(phi_max=phi_max, n_phi=2 * m + 1, n_theta=n_theta)


def _index_grid(g: Grid2D) -> np.ndarray:
    return np.arange(g.dimension).reshape(g.shape)


def phi_reflection(g: Grid2D) -> np.ndarray:
    """Index permutation of the grid reflection phi -> -phi.

    Applying it as `psi[perm]` gives the reflected grid vector.
    """
    return _index_grid(g)[::-1, :].ravel()


def theta_reflection(g: Grid2D) -> np.ndarray:
    """Index permutation of the grid reflection theta -> -theta (mod 2pi)."""
    n = (-np.arange(g.n_theta)) % g.n_theta
    return _index_grid(g)[:, n].ravel()


def theta_half_shift(g: Grid2D) -> np.ndarray:
    """Index permutation of theta -> theta + pi. Requires an even n_theta."""
    if g.n_theta % 2:
        raise ValueError(f"theta + pi is not a grid point for odd {g.n_theta=}")
    n = (np.arange(g.n_theta) + g.n_theta // 2) % g.n_theta
    return _index_grid(g)[:, n].ravel()
