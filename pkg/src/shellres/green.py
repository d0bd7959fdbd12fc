"""Green functions for the shell Hamiltonian and the integral-equation check.

The free retarded kernel solves (d2/dr2 + q^2) g = scale * delta(r - s) with
a regular (vanishing) boundary at r = 0 and an outgoing wave at infinity; the
advanced kernel is the same closed form with q -> -q.  The total kernel is
built from the regular solution and the outgoing Jost solution divided by
their Wronskian, which the matching algebra fixes at q * jplus.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PoleAtInput
from .jost import _match_arrays, _sinc, _as_q, regular_solution_with_slope, chi_grid
from .model import PotentialSpec, inner_momentum
from .quadrature import gauss_rule, panel_nodes

__all__ = [
    "GreenSample",
    "g0",
    "g_total",
    "green_sample",
    "jost_solution",
    "jost_solution_with_slope",
    "wronskian",
    "ls_residual",
]

_SQRT_2_OVER_PI = np.sqrt(2.0 / np.pi)


def g0(r, s, q, pot: PotentialSpec, kind: str = "free_retarded"):
    """Free-particle kernel at wave number q; r or s may be arrays."""
    qc = _as_q(q)
    if abs(qc) <= 1e-12:
        raise ValueError("free kernel needs |q| > 1e-12")
    if kind == "free_retarded":
        qq = qc
    elif kind == "free_advanced":
        qq = -qc
    else:
        raise ValueError(f"unknown free kernel kind {kind!r}")
    r = np.asarray(r, dtype=float)
    s = np.asarray(s, dtype=float)
    lo = np.minimum(r, s)
    hi = np.maximum(r, s)
    out = -pot.scale * np.sin(qq * lo) * np.exp(1j * qq * hi) / qq
    return complex(out) if out.ndim == 0 else out


def jost_solution_with_slope(r, q, pot: PotentialSpec):
    """(f, f') of the outgoing Jost solution, exactly e^{iqr} beyond b.

    Built by propagating (value, slope) inward from the boundary data at
    r = b through each region, so the continuation to complex q is the
    closed form itself.
    """
    rr = float(r)
    qc = _as_q(q)
    a, b = pot.a, pot.b
    if rr >= b:
        e = np.exp(1j * qc * rr)
        return e, 1j * qc * e
    u = np.exp(1j * qc * b)
    du = 1j * qc * u
    Q = inner_momentum(qc, pot)
    dr = max(rr, a) - b
    w = Q * dr
    cw, snc = np.cos(w), complex(_sinc(w))
    u, du = u * cw + du * dr * snc, -Q * Q * dr * snc * u + du * cw
    if rr >= a:
        return u, du
    dr = rr - a
    w = qc * dr
    cw, snc = np.cos(w), complex(_sinc(w))
    return u * cw + du * dr * snc, -qc * qc * dr * snc * u + du * cw


def jost_solution(r, q, pot: PotentialSpec) -> complex:
    """Outgoing Jost solution value."""
    return jost_solution_with_slope(r, q, pot)[0]


def wronskian(q, pot: PotentialSpec) -> complex:
    """W(f_out, chi) = f chi' - f' chi, constant in r and equal to q * jplus."""
    qc = _as_q(q)
    r0 = pot.b
    chi, dchi = regular_solution_with_slope(r0, qc, pot)
    f, df = jost_solution_with_slope(r0, qc, pot)
    return f * dchi - df * chi


def g_total(r, s, q, pot: PotentialSpec) -> complex:
    """Full outgoing resolvent kernel: -scale chi(r<) f(r>) / (q jplus)."""
    qc = _as_q(q)
    m = _match_arrays(np.array([qc]), pot)
    jp, jm = complex(m["jplus"][0]), complex(m["jminus"][0])
    if abs(jp) < 1e-13 * abs(jm):
        raise PoleAtInput(f"resolvent pole at q={qc}")
    lo, hi = (r, s) if r <= s else (s, r)
    chi = regular_solution_with_slope(lo, qc, pot)[0]
    f = jost_solution_with_slope(hi, qc, pot)[0]
    return -pot.scale * chi * f / (qc * jp)


@dataclass(frozen=True)
class GreenSample:
    """One sampled Green-function value with its kind tag."""

    r: float
    s: float
    value: complex
    kind: str


def green_sample(r, s, q, pot: PotentialSpec, kind: str) -> GreenSample:
    if kind in ("free_retarded", "free_advanced"):
        v = g0(r, s, q, pot, kind)
    elif kind == "total":
        v = g_total(r, s, q, pot)
    else:
        raise ValueError(f"unknown Green kind {kind!r}")
    return GreenSample(float(r), float(s), complex(v), kind)


def _segment_quad(s0: float, s1: float, n: int):
    # composite panels so no single rule exceeds order 80
    npanels = max(1, int(np.ceil(n / 80)))
    order = max(4, int(np.ceil(n / npanels)))
    edges = np.linspace(s0, s1, npanels + 1)
    nodes, weights = panel_nodes(edges, order)
    return nodes.real, weights.real


def ls_residual(q, pot: PotentialSpec, r_grid=None, n_quad: int = 256) -> float:
    """Max defect of the scattering integral equation over a radial grid.

    Checks chi_plus(r) = free(r) + integral of g0(r,s) V(s) chi_plus(s) ds
    with free(r) = sqrt(2/pi) sin(qr).  V is supported on [a, b] only, and
    the kernel has a slope kink at s = r, so the quadrature splits there;
    without the split the defect plateaus orders of magnitude higher.
    """
    qc = _as_q(q)
    if n_quad < 64:
        raise ValueError("n_quad must be at least 64")
    a, b = pot.a, pot.b
    if r_grid is None:
        r_grid = np.linspace(0.0, 2.0 * b, 81)
    r_grid = np.asarray(r_grid, dtype=float).copy()
    # keep evaluation points off the potential steps
    for edge in (a, b):
        hit = np.abs(r_grid - edge) < 1e-9
        r_grid[hit] = edge + 1e-9
    m = _match_arrays(np.array([qc]), pot)
    jp = complex(m["jplus"][0])
    norm = _SQRT_2_OVER_PI / jp

    def chi_plus_vals(s):
        return norm * chi_grid(np.array([qc]), s, pot)[0]

    worst = 0.0
    for r in r_grid:
        cuts = sorted({a, b} | ({float(r)} if a < r < b else set()))
        total = 0.0 + 0.0j
        nseg = len(cuts) - 1
        for s0, s1 in zip(cuts[:-1], cuts[1:]):
            nodes, weights = _segment_quad(s0, s1, max(n_quad // nseg, 32))
            kern = g0(r, nodes, qc, pot)
            total += np.sum(weights * kern * pot.v0 * chi_plus_vals(nodes))
        lhs = norm * complex(chi_grid(np.array([qc]), np.array([float(r)]), pot)[0, 0])
        defect = lhs - _SQRT_2_OVER_PI * np.sin(qc * r) - total
        worst = max(worst, abs(defect))
    return worst
