from types import SimpleNamespace

import numpy as np
import pytest

import reference_values as ref
from shellres import (
    BoundaryZero,
    NotAPole,
    PairingViolation,
    ResonancePole,
    SearchRegion,
    count_zeros,
    find_resonances,
    match_coeffs,
    pair_antiresonance,
    residue_s,
)
from shellres.poles import _winding


def test_search_region_validation():
    with pytest.raises(ValueError):
        SearchRegion(2.0, 1.0, -1.0, 0.0)
    with pytest.raises(ValueError):
        SearchRegion(0.0, 1.0, 0.0, 0.0)
    region = SearchRegion(0.0, 6.0, -2.0, 0.0)
    assert region.contains(ref.POLES[0]) and not region.contains(ref.POLES[3])


def test_winding_counts(pot_ref):
    assert count_zeros(SearchRegion(0.0, 6.0, -2.0, 0.0), pot_ref) == 3
    assert count_zeros(SearchRegion(0.0, 8.0, -3.0, 0.0), pot_ref) == 4
    assert count_zeros(SearchRegion(0.0, 2.0, -1.0, 0.0), pot_ref) == 0


def test_winding_with_zero_grazing_boundary(pot_ref):
    # bottom-right corner sits on a pole; the 3e-8 nudge must absorb it
    grazing = SearchRegion(0.0, ref.POLES[0].real, ref.POLES[0].imag, 0.0)
    with pytest.raises(BoundaryZero):
        _winding(grazing, pot_ref, 256)
    assert count_zeros(grazing, pot_ref) == 1


def test_found_poles_match_reference(poles_ref):
    assert len(poles_ref) >= 6
    for p, k_want, nsq_want in zip(poles_ref, ref.POLES, ref.N_SQ):
        assert abs(p.k_n - k_want) < 1e-10
        assert abs(p.n_sq - nsq_want) < 1e-10
        assert p.newton_error < 1e-12
        assert p.n_sq == 1j * p.residue_s
        assert p.z_n == p.k_n * p.k_n
        assert p.energy == p.z_n.real and p.width == -2.0 * p.z_n.imag > 0


def test_poles_leave_tiny_jplus(poles_ref, pot_ref):
    for p in poles_ref:
        c = match_coeffs(p.k_n, pot_ref)
        assert abs(c.jplus) <= 1e-10 * abs(c.jminus)


def test_search_is_deterministic(pot_ref):
    region = SearchRegion(0.0, 6.0, -2.0, 0.0)
    first = find_resonances(pot_ref, region)
    second = find_resonances(pot_ref, region)
    assert len(first) == 3
    assert all(p.k_n == q.k_n and p.n_sq == q.n_sq for p, q in zip(first, second))


def test_empty_region(pot_ref):
    assert find_resonances(pot_ref, SearchRegion(0.0, 2.0, -1.0, 0.0)) == []


def test_resonance_pole_quadrant_enforced():
    with pytest.raises(ValueError):
        ResonancePole(k_n=2 + 0.5j, z_n=(2 + 0.5j) ** 2, residue_s=1.0,
                      n_sq=1j, newton_error=0.0)
    with pytest.raises(ValueError):
        ResonancePole(k_n=-2 - 0.5j, z_n=(-2 - 0.5j) ** 2, residue_s=1.0,
                      n_sq=1j, newton_error=0.0)


def test_residue_two_routes(poles_ref, pot_ref):
    p = poles_ref[1]
    res = residue_s(p.k_n, pot_ref)
    assert res == pytest.approx(p.residue_s, rel=1e-10)
    with pytest.raises(NotAPole):
        residue_s(2.0, pot_ref)


def test_pairing_and_probe(poles_ref, pot_ref):
    for p in poles_ref[:3]:
        anti = pair_antiresonance(p, pot_ref)
        assert anti.k_n == pytest.approx(-np.conj(p.k_n), rel=1e-14)
        assert anti.m_sq == pytest.approx(np.conj(p.n_sq), rel=1e-8)
        assert anti.z_n == pytest.approx(np.conj(p.z_n), rel=1e-12)


def test_pairing_violation_on_corrupted_norm(poles_ref, pot_ref):
    genuine = poles_ref[0]
    fake = SimpleNamespace(k_n=genuine.k_n, n_sq=genuine.n_sq + 0.5)
    with pytest.raises(PairingViolation):
        pair_antiresonance(fake, pot_ref)
