"""Independent oracles built on scipy, deliberately avoiding the package's algebra.

The regular and outgoing solutions come from direct DOP853 integration of
the radial equation, leg by leg across the potential steps; the matching
coefficients are then extracted from (value, slope) data at the outer
boundary.  Overlaps use adaptive scipy quadrature.  None of this shares code
with src/, so agreement is evidence, not tautology.
"""
import numpy as np
from scipy.integrate import quad, solve_ivp

_EPS = 1e-8


def _legs(pot, r_max):
    cuts = [c for c in (pot.a, pot.b) if _EPS < c < r_max]
    edges = [_EPS, *cuts, r_max]
    legs = []
    for r0, r1 in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (r0 + r1)
        v = pot.v0 if pot.a <= mid < pot.b else 0.0
        legs.append((r0, r1, v))
    return legs


def _integrate(q, pot, y0, r_lo, r_hi, r_eval):
    """Piecewise DOP853 integration of u'' = (scale V - q^2) u."""
    q = complex(q)
    out = {}
    y = np.asarray(y0, dtype=complex)
    for r0, r1, v in _legs(pot, r_hi):
        if r1 <= r_lo:
            continue
        start = max(r0, r_lo)
        coef = pot.scale * v - q * q
        pts = sorted({float(r) for r in r_eval if start < r <= r1})
        sol = solve_ivp(
            lambda r, u: [u[1], coef * u[0]],
            (start, r1), y, method="DOP853", t_eval=pts or None,
            rtol=1e-12, atol=1e-14, dense_output=False,
        )
        assert sol.success, sol.message
        for t, col in zip(sol.t, sol.y.T):
            out[float(t)] = (col[0], col[1])
        # re-run to the leg end to carry the state forward
        carry = solve_ivp(
            lambda r, u: [u[1], coef * u[0]],
            (start, r1), y, method="DOP853", rtol=1e-12, atol=1e-14,
        )
        y = carry.y[:, -1]
    return out, y


def ode_regular_solution(q, r_eval, pot):
    """chi(r; q) by direct integration from the sin(qr) behavior at 0."""
    q = complex(q)
    r_eval = np.atleast_1d(np.asarray(r_eval, dtype=float))
    r_hi = max(float(np.max(r_eval)), pot.b) + _EPS
    y0 = (np.sin(q * _EPS), q * np.cos(q * _EPS))
    table, _ = _integrate(q, pot, y0, _EPS, r_hi, r_eval)
    out = np.empty(r_eval.size, dtype=complex)
    for i, r in enumerate(r_eval):
        out[i] = np.sin(q * r) if r <= _EPS else table[float(r)][0]
    return out


def ode_match_coeffs(q, pot):
    """(j3, j4, jplus, jminus) from the integrated (u, u') at r = b."""
    q = complex(q)
    y0 = (np.sin(q * _EPS), q * np.cos(q * _EPS))
    _, (u, du) = _integrate(q, pot, y0, _EPS, pot.b, [])
    b = pot.b
    j3 = np.exp(-1j * q * b) * (u + du / (1j * q)) / 2.0
    j4 = np.exp(1j * q * b) * (u - du / (1j * q)) / 2.0
    return j3, j4, -2j * j4, 2j * j3


def ode_outgoing_solution(q, r_eval, pot):
    """Outgoing Jost solution by backward integration from e^{iqb}."""
    q = complex(q)
    r_eval = np.atleast_1d(np.asarray(r_eval, dtype=float))
    out = np.empty(r_eval.size, dtype=complex)
    outward = r_eval >= pot.b
    out[outward] = np.exp(1j * q * r_eval[outward])
    inner = sorted(float(r) for r in r_eval[~outward])
    if inner:
        y = np.array([np.exp(1j * q * pot.b), 1j * q * np.exp(1j * q * pot.b)], dtype=complex)
        table = {}
        edges = [pot.b, *reversed([c for c in (pot.a,) if c > inner[0]]), max(inner[0], _EPS)]
        for r0, r1 in zip(edges[:-1], edges[1:]):
            mid = 0.5 * (r0 + r1)
            v = pot.v0 if pot.a <= mid < pot.b else 0.0
            coef = pot.scale * v - q * q
            pts = sorted((r for r in inner if r1 <= r < r0), reverse=True)
            sol = solve_ivp(lambda r, u: [u[1], coef * u[0]], (r0, r1), y,
                            method="DOP853", t_eval=pts or None, rtol=1e-12, atol=1e-14)
            assert sol.success, sol.message
            for t, col in zip(sol.t, sol.y.T):
                table[float(t)] = col[0]
            carry = solve_ivp(lambda r, u: [u[1], coef * u[0]], (r0, r1), y,
                              method="DOP853", rtol=1e-12, atol=1e-14)
            y = carry.y[:, -1]
        for i, r in enumerate(r_eval):
            if not outward[i]:
                out[i] = table[float(r)]
    return out


def quad_complex(fn, lo, hi, points=(), limit=400):
    """Adaptive quadrature of a complex integrand on a real interval."""
    pts = [p for p in points if lo < p < hi] or None
    re = quad(lambda s: np.real(fn(s)), lo, hi, points=pts, limit=limit)[0]
    im = quad(lambda s: np.imag(fn(s)), lo, hi, points=pts, limit=limit)[0]
    return re + 1j * im
