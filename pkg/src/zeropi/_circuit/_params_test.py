import math

import pytest

import zeropi


def test_from_ratios():
    p = zeropi.CircuitParams.from_ratios(
        omega_p_over_e_l=1e4,
        omega_p_over_e_c_sigma=2.2e3,
        omega_p_over_e_j=7.9,
    )
    assert p.e_j == pytest.approx(1 / 7.9)
    assert p.e_l == pytest.approx(1e-4)
    assert p.e_c_sigma == pytest.approx(1 / 2.2e3)
    assert p.e_cj == pytest.approx(7.9 / 8)
    assert 8 * p.e_j * p.e_cj == pytest.approx(1)
    assert 1 / p.e_c_sigma == pytest.approx(1 / p.e_c + 1 / p.e_cj)
    assert p.phi_ext == 0
    assert p.ratios() == pytest.approx(
        {
            "omega_p_over_e_l": 1e4,
            "omega_p_over_e_c_sigma": 2.2e3,
            "omega_p_over_e_j": 7.9,
        }
    )


def test_from_energies_derives_cross_capacitor():
    p = zeropi.CircuitParams.from_energies(e_j=0, e_l=1, e_c_sigma=0.5, e_cj=1)
    assert p.e_c == pytest.approx(1)

    p = zeropi.CircuitParams.from_energies(
        e_j=1, e_l=1, e_c_sigma=0.5, e_cj=1, e_c=1
    )
    assert p.e_c == 1


def test_validation():
    with pytest.raises(ValueError, match="e_l"):
        zeropi.CircuitParams.from_energies(e_j=1, e_l=0, e_c_sigma=0.5, e_cj=1)
    with pytest.raises(ValueError, match="e_j"):
        zeropi.CircuitParams.from_energies(e_j=-1, e_l=1, e_c_sigma=0.5, e_cj=1)
    with pytest.raises(ValueError, match="sum capacitance"):
        zeropi.CircuitParams.from_energies(e_j=1, e_l=1, e_c_sigma=2, e_cj=1)
    with pytest.raises(ValueError, match="decompose"):
        zeropi.CircuitParams(
            e_j=1, e_l=1, e_c_sigma=0.5, e_cj=1, e_c=3, phi_ext=0
        )
    with pytest.raises(ValueError, match="phi_ext"):
        zeropi.CircuitParams.from_energies(
            e_j=1, e_l=1, e_c_sigma=0.5, e_cj=1, phi_ext=math.inf
        )
    with pytest.raises(ValueError, match="omega_p_over_e_j"):
        zeropi.CircuitParams.from_ratios(
            omega_p_over_e_l=1e3,
            omega_p_over_e_c_sigma=1e3,
            omega_p_over_e_j=0,
        )


def test_with_edits_keeps_plasma_frequency():
    p = zeropi.CircuitParams.from_ratios(
        omega_p_over_e_l=1e3,
        omega_p_over_e_c_sigma=1e3,
        omega_p_over_e_j=3.95,
    )
    q = p.with_edits(e_j=0.2)
    assert q.e_j == 0.2
    assert 8 * q.e_j * q.e_cj == pytest.approx(1)
    assert q.e_l == p.e_l
    assert q.e_c_sigma == p.e_c_sigma

    r = p.with_edits(phi_ext=math.pi)
    assert r.phi_ext == math.pi
    assert r.e_j == p.e_j
    assert r.e_c == p.e_c


def test_disorder_params():
    assert zeropi.DisorderParams().is_symmetric
    assert not zeropi.DisorderParams().has_junction_disorder
    d = zeropi.DisorderParams(delta_e_j=0.01)
    assert not d.is_symmetric
    assert d.has_junction_disorder
    assert not zeropi.DisorderParams(delta_c_rel=0.1).has_junction_disorder
    assert zeropi.DisorderParams(delta_c_j_rel=1).delta_c_j_rel == 1
    assert d.with_edits(delta_e_l=0.5) == zeropi.DisorderParams(
        delta_e_j=0.01, delta_e_l=0.5
    )

    with pytest.raises(ValueError):
        zeropi.DisorderParams(delta_c_rel=1)
    with pytest.raises(ValueError):
        zeropi.DisorderParams(delta_c_j_rel=-1.5)
    with pytest.raises(ValueError):
        zeropi.DisorderParams(delta_e_j=math.nan)
