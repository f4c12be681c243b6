import dataclasses
import math
from typing import TYPE_CHECKING

import scipy.constants

if TYPE_CHECKING:
    import zeropi


@dataclasses.dataclass(frozen=True)
class DerivedScales:
    """Characteristic frequencies of the device, expressed as energies hbar*omega.

    Attributes:
        omega_p: Junction plasma energy sqrt(8*E_J*E_CJ).
        omega_chi: Energy of the harmonic chi mode sqrt(8*E_L*E_C).
        inter_doublet_spacing: Rough spacing between the lowest two doublets,
            omega_p*sqrt(E_CSigma/E_CJ).
        metaplasmon_exponent: sqrt(E_CJ/E_L). Flux and offset sensitivity of
            low-lying states is suppressed roughly like exp(-r*exponent).
    """

    omega_p: float
    omega_chi: float
    inter_doublet_spacing: float
    metaplasmon_exponent: float


def derived_scales(p: "zeropi.CircuitParams") -> DerivedScales:
    omega_p = math.sqrt(8 * p.e_j * p.e_cj)
    return DerivedScales(
        omega_p=omega_p,
        omega_chi=math.sqrt(8 * p.e_l * p.e_c),
        inter_doublet_spacing=omega_p * math.sqrt(p.e_c_sigma / p.e_cj),
        metaplasmon_exponent=math.sqrt(p.e_cj / p.e_l),
    )


@dataclasses.dataclass(frozen=True)
class PhysicalUnits:
    """Circuit elements in SI units (henries and farads)."""

    inductance: float
    capacitance: float
    junction_capacitance: float
    sum_capacitance: float


def physical_units(p: "zeropi.CircuitParams", f_p: float) -> PhysicalUnits:
    """Converts parameters given in hbar*omega_p units into element values.

    Args:
        p: Parameters in units where hbar*omega_p = 1.
        f_p: The plasma frequency omega_p/2pi in hertz.

    Returns:
        L = Phi_0^2/E_L with the reduced flux quantum Phi_0 = hbar/2e, and each
        capacitance from e^2/(2*E_C) for the matching charging energy.
    """
    if not (f_p > 0) or not math.isfinite(f_p):
        raise ValueError(f"not (0 < {f_p=} < inf)")
    joules_per_unit = scipy.constants.h * f_p
    flux_quantum = scipy.constants.hbar / (2 * scipy.constants.e)
    e_squared = scipy.constants.e**2

    def cap(charging_energy: float) -> float:
        return e_squared / (2 * charging_energy * joules_per_unit)

    return PhysicalUnits(
        inductance=flux_quantum**2 / (p.e_l * joules_per_unit),
        capacitance=cap(p.e_c),
        junction_capacitance=cap(p.e_cj),
        sum_capacitance=cap(p.e_c_sigma),
    )


@dataclasses.dataclass(frozen=True)
class RegimeReport:
    """Ratios entering the degeneracy conditions E_L, E_CSigma << E_J, E_CJ."""

    ej_over_el: float
    ej_over_ecsigma: float
    ecj_over_el: float
    ecj_over_ecsigma: float
    threshold: float

    @property
    def ratios(self) -> dict[str, float]:
        return {
            "E_J/E_L": self.ej_over_el,
            "E_J/E_CSigma": self.ej_over_ecsigma,
            "E_CJ/E_L": self.ecj_over_el,
            "E_CJ/E_CSigma": self.ecj_over_ecsigma,
        }

    @property
    def in_regime(self) -> bool:
        return all(v > self.threshold for v in self.ratios.values())


def regime_check(p: "zeropi.CircuitParams", threshold: float = 10) -> RegimeReport:
    if not (threshold > 0):
        raise ValueError(f"not (0 < {threshold=})")
    return RegimeReport(
        ej_over_el=p.e_j / p.e_l,
        ej_over_ecsigma=p.e_j / p.e_c_sigma,
        ecj_over_el=p.e_cj / p.e_l,
        ecj_over_ecsigma=p.e_cj / p.e_c_sigma,
        threshold=threshold,
    )
