"""Regular solution, Jost functions, and S-matrix on the complex k-plane.

Everything here is closed-form and entire in the wave number q, so values at
complex q ARE the analytic continuation of the real-axis boundary values; no
rim switching ever happens.  The shell interior is evaluated through the
(value, slope) propagator

    u(r0 + dr) = u(r0) cos(w) + u'(r0) dr sinc(w),      w = K dr,
    u'(r0 + dr) = -K^2 dr sinc(w) u(r0) + u'(r0) cos(w),

which is entire in K and stays stable where the exponential basis degenerates
(K -> 0).  The basis coefficients j1/j2 are still reported; they genuinely
blow up like 1/K at the degeneracy, which is a property of the basis, not of
the solution.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DegenerateMatch, PoleAtInput
from .model import PotentialSpec, WaveNumber, inner_momentum

__all__ = [
    "JostCoeffs",
    "EigenfunctionSample",
    "match_coeffs",
    "match_with_derivative",
    "regular_solution",
    "regular_solution_with_slope",
    "chi_grid",
    "s_matrix",
    "chi_plus",
    "chi_minus",
    "left_eigenfunction",
    "eigenfunction_sample",
]

_SQRT_2_OVER_PI = np.sqrt(2.0 / np.pi)


def _sinc(w):
    """sin(w)/w, entire; series below |w| = 1e-4 (series error ~ 1e-28)."""
    w = np.asarray(w, dtype=complex)
    small = np.abs(w) < 1e-4
    safe = np.where(small, 1.0, w)
    out = np.where(small, 1.0 - w * w / 6.0 + w**4 / 120.0, np.sin(safe) / safe)
    return out


def _as_q(q) -> complex:
    return complex(q.q) if isinstance(q, WaveNumber) else complex(q)


def _match_arrays(q, pot: PotentialSpec):
    """Matching data for an array of wave numbers.

    Returns shell-entry value/slope (pa, dpa), the interior wave number Q,
    and j3/j4/jplus/jminus.  Division-free in q: the only 1/q in the closed
    form is absorbed into sin(qa)/q = a*sinc(qa), so everything is entire.
    """
    q = np.asarray(q, dtype=complex)
    a, b = pot.a, pot.b
    Q = np.sqrt(q * q - pot.scale * pot.v0 + 0j)
    pa = np.sin(q * a)
    ca = np.cos(q * a)
    dpa = q * ca
    pa_over_q = a * _sinc(q * a)
    dr = b - a
    w = Q * dr
    cw = np.cos(w)
    snc = _sinc(w)
    pb = pa * cw + dpa * dr * snc
    dpb = -Q * Q * dr * snc * pa + dpa * cw
    dpb_over_q = -Q * Q * dr * snc * pa_over_q + ca * cw
    eb = np.exp(1j * q * b)
    j3 = (pb - 1j * dpb_over_q) / (2.0 * eb)
    j4 = eb * (pb + 1j * dpb_over_q) / 2.0
    return {
        "Q": Q,
        "pa": pa,
        "dpa": dpa,
        "pb": pb,
        "dpb": dpb,
        "j3": j3,
        "j4": j4,
        "jplus": -2j * j4,
        "jminus": 2j * j3,
    }


def _basis_coeffs(q, pot: PotentialSpec):
    """Exponential-basis coefficients j1, j2 for the shell interior.

    Solves pa = j1 e^{iQa} + j2 e^{-iQa}, dpa = iQ (j1 e^{iQa} - j2 e^{-iQa}).
    Near Q = 0 the basis degenerates and j1/j2 ~ 1/Q; |Q| is clamped at 1e-30
    so the fields stay finite floats (evaluation never uses them there).
    """
    q = np.asarray(q, dtype=complex)
    m = _match_arrays(q, pot)
    Q = m["Q"]
    Qc = np.where(np.abs(Q) < 1e-30, 1e-30, Q)
    ea = np.exp(1j * Qc * pot.a)
    j1 = (m["pa"] + m["dpa"] / (1j * Qc)) / (2.0 * ea)
    j2 = ea * (m["pa"] - m["dpa"] / (1j * Qc)) / 2.0
    return j1, j2


@dataclass(frozen=True)
class JostCoeffs:
    """Matching coefficients of the regular solution at one wave number.

    jplus = -2i*j4 and jminus = 2i*j3 exactly; the piecewise function built
    from (j1..j4) is continuous with continuous slope at both radii.
    """

    q: complex
    j1: complex
    j2: complex
    j3: complex
    j4: complex
    jplus: complex
    jminus: complex


def match_coeffs(q, pot: PotentialSpec) -> JostCoeffs:
    """Solve the two matching systems at r = a and r = b."""
    qc = _as_q(q)
    Q = inner_momentum(qc, pot)
    if abs(qc) < 1e-12 and abs(Q) < 1e-12:
        raise DegenerateMatch(f"both q={qc} and Q={Q} vanish; matching is singular")
    m = _match_arrays(np.array([qc]), pot)
    j1, j2 = _basis_coeffs(np.array([qc]), pot)
    return JostCoeffs(
        q=qc,
        j1=complex(j1[0]),
        j2=complex(j2[0]),
        j3=complex(m["j3"][0]),
        j4=complex(m["j4"][0]),
        jplus=complex(m["jplus"][0]),
        jminus=complex(m["jminus"][0]),
    )


# ---------------------------------------------------------------------------
# forward-mode dual arithmetic: (value, d/dq) pairs
# ---------------------------------------------------------------------------

def _dmul(a, b):
    return (a[0] * b[0], a[0] * b[1] + a[1] * b[0])


def _dsin(a):
    return (np.sin(a[0]), a[1] * np.cos(a[0]))


def _dcos(a):
    return (np.cos(a[0]), -a[1] * np.sin(a[0]))


def _dexp(a):
    e = np.exp(a[0])
    return (e, a[1] * e)


def _dsqrt(a):
    s = np.sqrt(a[0])
    return (s, a[1] / (2.0 * s))


def _dsinc(a):
    w, dw = a
    if abs(w) < 1e-4:
        return (1.0 - w * w / 6.0 + w**4 / 120.0, (-w / 3.0 + w**3 / 30.0) * dw)
    return (np.sin(w) / w, dw * (np.cos(w) / w - np.sin(w) / w**2))


def match_with_derivative(q, pot: PotentialSpec):
    """Matching coefficients and their exact d/dq at a single wave number.

    Forward-mode dual arithmetic over the same algebra as `match_coeffs`:
    the derivative is the analytic one to machine precision (the function is
    entire), with no step-size tradeoff.  Returns (values, derivatives) dicts
    with keys j3, j4, jplus, jminus.
    """
    qc = _as_q(q)
    a, b = pot.a, pot.b
    dq = (qc, 1.0 + 0j)
    Q = _dsqrt((qc * qc - pot.scale * pot.v0 + 0j, 2.0 * qc))
    qa = _dmul(dq, (a, 0.0))
    pa = _dsin(qa)
    ca = _dcos(qa)
    dpa = _dmul(dq, ca)
    dr = b - a
    w = _dmul(Q, (dr, 0.0))
    cw = _dcos(w)
    snc = _dsinc(w)
    t1 = _dmul(pa, cw)
    t2 = _dmul(dpa, snc)
    pb = (t1[0] + dr * t2[0], t1[1] + dr * t2[1])
    mQ2 = (-Q[0] * Q[0], -2.0 * Q[0] * Q[1])
    s1 = _dmul(mQ2, _dmul(snc, pa))
    s2 = _dmul(dpa, cw)
    dpb = (dr * s1[0] + s2[0], dr * s1[1] + s2[1])
    inv_q = (1.0 / qc, -1.0 / (qc * qc))
    dpb_over_q = _dmul(dpb, inv_q)
    half = (0.5, 0.0)
    em = _dexp(_dmul((-1j * b, 0.0), dq))
    ep = _dexp(_dmul((1j * b, 0.0), dq))
    inner_m = (pb[0] - 1j * dpb_over_q[0], pb[1] - 1j * dpb_over_q[1])
    inner_p = (pb[0] + 1j * dpb_over_q[0], pb[1] + 1j * dpb_over_q[1])
    j3 = _dmul(half, _dmul(em, inner_m))
    j4 = _dmul(half, _dmul(ep, inner_p))
    values = {"j3": j3[0], "j4": j4[0], "jplus": -2j * j4[0], "jminus": 2j * j3[0]}
    derivs = {"j3": j3[1], "j4": j4[1], "jplus": -2j * j4[1], "jminus": 2j * j3[1]}
    return values, derivs


# ---------------------------------------------------------------------------
# piecewise evaluation
# ---------------------------------------------------------------------------

def chi_grid(q, r, pot: PotentialSpec):
    """Regular solution on the outer product of wave numbers and radii.

    q: array of complex wave numbers (nq,), r: array of radii (nr,).
    Returns (nq, nr) complex.  Region boundaries split by radius only, so
    each region is evaluated on a column block without wasted work.
    """
    q = np.atleast_1d(np.asarray(q, dtype=complex))
    r = np.atleast_1d(np.asarray(r, dtype=float))
    m = _match_arrays(q, pot)
    out = np.empty((q.size, r.size), dtype=complex)
    qc = q[:, None]
    in1 = r < pot.a
    in2 = (r >= pot.a) & (r < pot.b)
    in3 = r >= pot.b
    if in1.any():
        out[:, in1] = np.sin(qc * r[in1][None, :])
    if in2.any():
        dr = (r[in2] - pot.a)[None, :]
        w = m["Q"][:, None] * dr
        out[:, in2] = m["pa"][:, None] * np.cos(w) + m["dpa"][:, None] * dr * _sinc(w)
    if in3.any():
        rr = r[in3][None, :]
        out[:, in3] = m["j3"][:, None] * np.exp(1j * qc * rr) + m["j4"][:, None] * np.exp(-1j * qc * rr)
    return out


def regular_solution(r, q, pot: PotentialSpec) -> complex:
    """Regular solution at one radius and wave number; vanishes at r = 0."""
    rr = float(r)
    if rr < 0:
        raise ValueError(f"radius must be non-negative, got {r}")
    return complex(chi_grid(np.array([_as_q(q)]), np.array([rr]), pot)[0, 0])


def regular_solution_with_slope(r, q, pot: PotentialSpec):
    """(u, u') of the regular solution at one radius.

    The slope comes from the same propagator algebra, so (u, u') is exactly
    the pair the matching conditions make continuous at a and b.
    """
    rr = float(r)
    qc = _as_q(q)
    m = _match_arrays(np.array([qc]), pot)
    if rr < pot.a:
        return np.sin(qc * rr), qc * np.cos(qc * rr)
    if rr < pot.b:
        Q = complex(m["Q"][0])
        dr = rr - pot.a
        w = Q * dr
        cw, snc = np.cos(w), complex(_sinc(w))
        pa, dpa = complex(m["pa"][0]), complex(m["dpa"][0])
        return pa * cw + dpa * dr * snc, -Q * Q * dr * snc * pa + dpa * cw
    j3, j4 = complex(m["j3"][0]), complex(m["j4"][0])
    ep, em = np.exp(1j * qc * rr), np.exp(-1j * qc * rr)
    return j3 * ep + j4 * em, 1j * qc * (j3 * ep - j4 * em)


def s_matrix(q, pot: PotentialSpec) -> complex:
    """S(q) = jminus/jplus; the upper-rim boundary value for real q > 0."""
    qc = _as_q(q)
    m = _match_arrays(np.array([qc]), pot)
    jp, jm = complex(m["jplus"][0]), complex(m["jminus"][0])
    if abs(jp) < 1e-13 * abs(jm):
        raise PoleAtInput(f"S-matrix pole at q={qc}: |jplus|={abs(jp):.3e}")
    return jm / jp


def _norm_factor(qc: complex, pot: PotentialSpec, normalization: str):
    # k-normalized: delta(k - k'); E-normalized: delta(E - E') via dk/dE.
    if normalization == "k":
        return _SQRT_2_OVER_PI
    if normalization == "E":
        return _SQRT_2_OVER_PI * np.sqrt(pot.scale / (2.0 * qc))
    raise ValueError(f"unknown normalization {normalization!r}")


def chi_plus(r, q, pot: PotentialSpec, normalization: str = "k") -> complex:
    """Right eigenfunction with outgoing denominator, at any complex q.

    One formula everywhere: norm * regular_solution / jplus.  Evaluating it
    below the real axis IS the continuation from the upper rim.
    """
    qc = _as_q(q)
    if abs(qc) <= 1e-12:
        raise ValueError("delta-normalized eigenfunctions need |q| > 1e-12")
    m = _match_arrays(np.array([qc]), pot)
    jp, jm = complex(m["jplus"][0]), complex(m["jminus"][0])
    if abs(jp) < 1e-13 * abs(jm):
        raise PoleAtInput(f"chi_plus pole at q={qc}")
    return _norm_factor(qc, pot, normalization) * regular_solution(r, qc, pot) / jp


def chi_minus(r, q, pot: PotentialSpec, normalization: str = "k") -> complex:
    """Right eigenfunction with incoming denominator."""
    qc = _as_q(q)
    if abs(qc) <= 1e-12:
        raise ValueError("delta-normalized eigenfunctions need |q| > 1e-12")
    m = _match_arrays(np.array([qc]), pot)
    jp, jm = complex(m["jplus"][0]), complex(m["jminus"][0])
    if abs(jm) < 1e-13 * abs(jp):
        raise PoleAtInput(f"chi_minus pole at q={qc}")
    return _norm_factor(qc, pot, normalization) * regular_solution(r, qc, pot) / jm


def left_eigenfunction(r, q, pot: PotentialSpec, kind: Literal["in", "out"] = "in",
                       normalization: str = "k") -> complex:
    """Left eigenfunction value: the opposite-denominator right function.

    kind="in" pairs with chi_plus kets and equals chi_minus; kind="out"
    equals chi_plus.  On the positive real axis this reproduces the complex
    conjugate of the corresponding right function; off the axis it is the
    analytic continuation of that boundary value (conjugation does not
    continue).
    """
    if kind == "in":
        return chi_minus(r, q, pot, normalization)
    if kind == "out":
        return chi_plus(r, q, pot, normalization)
    raise ValueError(f"kind must be 'in' or 'out', got {kind!r}")


@dataclass(frozen=True)
class EigenfunctionSample:
    """One sampled eigenfunction value with its kind tag."""

    r: float
    value: complex
    kind: str


def eigenfunction_sample(r, q, pot: PotentialSpec, kind: str) -> EigenfunctionSample:
    """Sample any of the library's eigenfunction families at (r, q)."""
    qc = _as_q(q)
    if kind == "regular":
        v = regular_solution(r, qc, pot)
    elif kind == "in_ket":
        v = chi_plus(r, qc, pot)
    elif kind == "out_ket":
        v = chi_minus(r, qc, pot)
    elif kind == "in_bra":
        v = left_eigenfunction(r, qc, pot, "in")
    elif kind == "out_bra":
        v = left_eigenfunction(r, qc, pot, "out")
    elif kind == "jost_outgoing":
        from .green import jost_solution

        v = jost_solution(r, qc, pot)
    else:
        raise ValueError(f"unknown eigenfunction kind {kind!r}")
    return EigenfunctionSample(float(r), complex(v), kind)
