import dataclasses
import math


@dataclasses.dataclass(frozen=True)
class CircuitParams:
    """Energy scales and flux bias of the symmetric 0-pi device.

    Energies are in units of the plasma energy hbar*omega_p whenever the
    parameters come from `from_ratios`, which is the convention used for all
    spectral computations. Raw energies in any consistent unit are accepted
    by the constructor and by `from_energies`.

    Attributes:
        e_j: Josephson energy of each junction. Zero is allowed (junction-free
            limit used as an analytic reference), negative is not.
        e_l: Inductive energy Phi_0^2/L of each superinductor.
        e_c_sigma: Charging energy of the sum capacitance C_J + C.
        e_cj: Charging energy of one junction capacitance.
        e_c: Charging energy of one cross-capacitor.
        phi_ext: Dimensionless external flux Phi_ext/Phi_0 (radians).
    """

    e_j: float
    e_l: float
    e_c_sigma: float
    e_cj: float
    e_c: float
    phi_ext: float = 0.0

    def __post_init__(self):
        if not (self.e_j >= 0) or not math.isfinite(self.e_j):
            raise ValueError(f"not (0 <= {self.e_j=} < inf)")
        for name in ["e_l", "e_c_sigma", "e_cj", "e_c"]:
            v = getattr(self, name)
            if not (v > 0) or not math.isfinite(v):
                raise ValueError(f"not (0 < {name}={v!r} < inf)")
        if not math.isfinite(self.phi_ext):
            raise ValueError(f"not finite: {self.phi_ext=}")
        # C_sigma = C_J + C.
        expected = 1 / self.e_c + 1 / self.e_cj
        if not math.isclose(1 / self.e_c_sigma, expected, rel_tol=1e-9):
            raise ValueError(
                f"Capacitances don't decompose as C_sigma = C_J + C: "
                f"1/{self.e_c_sigma=} != 1/{self.e_c=} + 1/{self.e_cj=}"
            )

    @staticmethod
    def from_energies(
        *,
        e_j: float,
        e_l: float,
        e_c_sigma: float,
        e_cj: float,
        e_c: float | None = None,
        phi_ext: float = 0.0,
    ) -> "CircuitParams":
        """Builds parameters from raw energies.

        When `e_c` is omitted it is derived from 1/E_C = 1/E_CSigma - 1/E_CJ,
        which requires E_CSigma < E_CJ. When it is given, the capacitance
        decomposition is validated instead.
        """
        if e_c is None:
            e_c = _cross_charging_energy(e_c_sigma=e_c_sigma, e_cj=e_cj)
        return CircuitParams(
            e_j=e_j,
            e_l=e_l,
            e_c_sigma=e_c_sigma,
            e_cj=e_cj,
            e_c=e_c,
            phi_ext=phi_ext,
        )

    @staticmethod
    def from_ratios(
        *,
        omega_p_over_e_l: float,
        omega_p_over_e_c_sigma: float,
        omega_p_over_e_j: float,
        phi_ext: float = 0.0,
    ) -> "CircuitParams":
        """Builds parameters from the inverse ratios hbar*omega_p/E used to quote devices.

        The result is expressed in units where hbar*omega_p = 1, so the junction
        charging energy is slaved to the Josephson energy via 8*E_J*E_CJ = 1.

        Example:
            >>> import zeropi
            >>> p = zeropi.CircuitParams.from_ratios(
            ...     omega_p_over_e_l=1e4,
            ...     omega_p_over_e_c_sigma=2.2e3,
            ...     omega_p_over_e_j=7.9,
            ... )
            >>> round(p.e_cj, 6)
            0.9875
        """
        for name, v in [
            ("omega_p_over_e_l", omega_p_over_e_l),
            ("omega_p_over_e_c_sigma", omega_p_over_e_c_sigma),
            ("omega_p_over_e_j", omega_p_over_e_j),
        ]:
            if not (v > 0) or not math.isfinite(v):
                raise ValueError(f"not (0 < {name}={v!r} < inf)")
        return CircuitParams.with_slaved_junction(
            e_j=1 / omega_p_over_e_j,
            e_l=1 / omega_p_over_e_l,
            e_c_sigma=1 / omega_p_over_e_c_sigma,
            phi_ext=phi_ext,
        )

    @staticmethod
    def with_slaved_junction(
        *,
        e_j: float,
        e_l: float,
        e_c_sigma: float,
        phi_ext: float = 0.0,
    ) -> "CircuitParams":
        """Parameters at fixed plasma frequency: E_CJ = 1/(8*E_J) in hbar*omega_p units."""
        if not (e_j > 0):
            raise ValueError(f"not (0 < {e_j=})")
        return CircuitParams.from_energies(
            e_j=e_j,
            e_l=e_l,
            e_c_sigma=e_c_sigma,
            e_cj=1 / (8 * e_j),
            phi_ext=phi_ext,
        )

    def with_edits(
        self,
        *,
        e_j: float | None = None,
        phi_ext: float | None = None,
    ) -> "CircuitParams":
        """Returns a copy with a new Josephson energy and/or flux.

        Changing E_J keeps the plasma frequency fixed, so E_CJ and E_C are
        re-derived from the new E_J and the unchanged E_CSigma.
        """
        if e_j is not None:
            return CircuitParams.with_slaved_junction(
                e_j=e_j,
                e_l=self.e_l,
                e_c_sigma=self.e_c_sigma,
                phi_ext=self.phi_ext if phi_ext is None else phi_ext,
            )
        return dataclasses.replace(
            self,
            phi_ext=self.phi_ext if phi_ext is None else phi_ext,
        )

    @property
    def energy_scale(self) -> float:
        """The largest energy entering the (phi, theta) Hamiltonian."""
        return max(self.e_j, self.e_l, self.e_c_sigma, self.e_cj)

    def ratios(self) -> dict[str, float]:
        """The inverse ratios hbar*omega_p/E, assuming hbar*omega_p = 1 units."""
        result = {
            "omega_p_over_e_l": 1 / self.e_l,
            "omega_p_over_e_c_sigma": 1 / self.e_c_sigma,
        }
        if self.e_j > 0:
            result["omega_p_over_e_j"] = 1 / self.e_j
        return result


def _cross_charging_energy(*, e_c_sigma: float, e_cj: float) -> float:
    if not (0 < e_c_sigma < e_cj):
        raise ValueError(
            f"not (0 < {e_c_sigma=} < {e_cj=}); "
            f"the sum capacitance must exceed the junction capacitance"
        )
    return 1 / (1 / e_c_sigma - 1 / e_cj)


@dataclasses.dataclass(frozen=True)
class DisorderParams:
    """Pairwise mismatch of nominally identical circuit elements.

    Each deviation is half the difference of the two elements, e.g.
    delta_e_j = (E_J1 - E_J2)/2. All zero describes the symmetric device.

    Attributes:
        delta_e_j: Josephson energy deviation (energy).
        delta_c_j_rel: Relative junction capacitance deviation dC_J/C_J.
            The value 1 (one junction capacitance vanishing) is admitted as
            the limit of the first-order Hamiltonian, so that
            `cj_disorder_check` can sweep dC_J/C_J up to 100%.
        delta_c_rel: Relative cross-capacitance deviation dC/C.
        delta_e_l: Inductive energy deviation (energy).
    """

    delta_e_j: float = 0.0
    delta_c_j_rel: float = 0.0
    delta_c_rel: float = 0.0
    delta_e_l: float = 0.0

    def __post_init__(self):
        for name in ["delta_e_j", "delta_c_j_rel", "delta_c_rel", "delta_e_l"]:
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"not finite: {name}={v!r}")
        if not (abs(self.delta_c_j_rel) <= 1):
            raise ValueError(f"not (|{self.delta_c_j_rel=}| <= 1)")
        if not (abs(self.delta_c_rel) < 1):
            raise ValueError(f"not (|{self.delta_c_rel=}| < 1)")

    @property
    def is_symmetric(self) -> bool:
        return (
            self.delta_e_j == 0
            and self.delta_c_j_rel == 0
            and self.delta_c_rel == 0
            and self.delta_e_l == 0
        )

    @property
    def has_junction_disorder(self) -> bool:
        return self.delta_e_j != 0 or self.delta_c_j_rel != 0

    def with_edits(self, **kwargs: float) -> "DisorderParams":
        return dataclasses.replace(self, **kwargs)
