from types import SimpleNamespace

import numpy as np
import pytest

import reference_values as ref
from shellres import (
    J3Vanishes,
    antiresonance_state,
    evaluate_gamow,
    gamow_state,
    pair_antiresonance,
    schrodinger_residual,
)


def test_tail_is_pure_outgoing(poles_ref, pot_ref):
    for p in poles_ref[:4]:
        state = gamow_state(p, pot_ref)
        r = np.linspace(pot_ref.b, 3 * pot_ref.b, 17)
        ratio = evaluate_gamow(state, r) / np.exp(1j * p.k_n * r)
        assert np.max(np.abs(ratio - state.norm)) < 1e-12 * abs(state.norm)
        assert state.norm ** 2 == pytest.approx(p.n_sq, rel=1e-14)


def test_norm_is_principal_sqrt(poles_ref, pot_ref):
    for p in poles_ref:
        state = gamow_state(p, pot_ref)
        assert state.norm == complex(np.sqrt(complex(p.n_sq)))
        assert state.norm.real >= 0


def test_eigen_defect_machine_level(poles_ref, pot_ref):
    for p in poles_ref[:4]:
        state = gamow_state(p, pot_ref)
        r = np.linspace(1e-3, 2 * pot_ref.b, 201)
        u = evaluate_gamow(state, r)
        rel = schrodinger_residual(state, r) / np.max(np.abs(p.k_n ** 2 * u))
        assert rel < 1e-12


def test_eigen_defect_against_finite_differences(poles_ref, pot_ref):
    # independent check: numerical u'' from a fine stencil, inside region 2
    p = poles_ref[1]
    state = gamow_state(p, pot_ref)
    h = 1e-5
    for r0 in (0.6, 1.5, 2.4):
        u = evaluate_gamow(state, np.array([r0 - h, r0, r0 + h]))
        upp = (u[0] - 2 * u[1] + u[2]) / (h * h)
        v = pot_ref.v0 if pot_ref.a <= r0 < pot_ref.b else 0.0
        want = (pot_ref.scale * v - p.k_n ** 2) * u[1]
        assert upp == pytest.approx(want, rel=1e-5)


def test_j3_vanishes_guard(poles_ref, pot_ref):
    # mirror point in the upper half plane is where j3 has its zero
    fake = SimpleNamespace(k_n=np.conj(poles_ref[0].k_n), n_sq=1.0 + 0j)
    with pytest.raises(J3Vanishes):
        gamow_state(fake, pot_ref)


def test_antiresonance_state_tail_and_phase(poles_ref, pot_ref):
    p = poles_ref[2]
    anti = pair_antiresonance(p, pot_ref)
    mirror = antiresonance_state(anti, pot_ref)
    r = np.linspace(0.05, 2 * pot_ref.b, 120)
    # tail: norm * e^{-i conj(k_n) r} beyond b
    tail = r[r >= pot_ref.b]
    got = evaluate_gamow(mirror, tail)
    assert np.max(np.abs(got - mirror.norm * np.exp(-1j * np.conj(p.k_n) * tail))) \
        < 1e-12 * np.max(np.abs(got))
    # whole state equals the conjugated resonance state up to one unimodular phase
    u = evaluate_gamow(gamow_state(p, pot_ref), r)
    ua = evaluate_gamow(mirror, r)
    c = np.vdot(np.conj(u), ua) / np.vdot(np.conj(u), np.conj(u))
    assert abs(abs(c) - 1.0) < 1e-10
    assert np.linalg.norm(ua - c * np.conj(u)) < 1e-10 * np.linalg.norm(ua)
