"""Potential definition, units, and branch conventions.

The potential is a spherical shell: V(r) = 0 for 0 < r < a, V(r) = v0 for
a <= r < b, V(r) = 0 for r >= b.  Energies and wave numbers are related by
E = q^2 / scale where scale is the constant converting energy to inverse
length squared.  All complex square roots in the library take the principal
branch; observables are branch-independent (see tests).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import OrderedRadii

__all__ = [
    "PotentialSpec",
    "WaveNumber",
    "Sheet",
    "ComplexEnergy",
    "make_potential",
    "energy_from_k",
    "inner_momentum",
]


@dataclass(frozen=True)
class PotentialSpec:
    """Shell potential parameters plus the energy-to-k^2 scale factor."""

    v0: float
    a: float
    b: float
    scale: float = 1.0


@dataclass(frozen=True)
class WaveNumber:
    """A point on the complex wave-number plane."""

    q: complex


class Sheet(enum.Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class ComplexEnergy:
    """Complex energy with the Riemann-sheet tag implied by its wave number.

    The tag is metadata only; all computation happens on the single-valued
    wave-number plane.
    """

    z: complex
    sheet: Sheet


def _as_complex(q) -> complex:
    if isinstance(q, WaveNumber):
        return complex(q.q)
    return complex(q)


def make_potential(v0: float, a: float, b: float, scale: float = 1.0) -> PotentialSpec:
    """Validate and freeze shell-potential parameters.

    v0 may be any real number (wells and barriers alike); radii must satisfy
    0 < a < b and scale must be positive.
    """
    vals = (v0, a, b, scale)
    if not all(isinstance(x, (int, float)) and math.isfinite(x) for x in vals):
        raise OrderedRadii(f"non-finite or non-real potential parameters: {vals}")
    if not (0 < a < b):
        raise OrderedRadii(f"radii must satisfy 0 < a < b, got a={a}, b={b}")
    if not scale > 0:
        raise OrderedRadii(f"scale must be positive, got {scale}")
    return PotentialSpec(float(v0), float(a), float(b), float(scale))


def energy_from_k(q, pot: PotentialSpec) -> ComplexEnergy:
    """Map a wave number to its complex energy and sheet tag.

    Upper half plane (and the positive real axis) tags the first sheet;
    everything else tags the second.
    """
    qc = _as_complex(q)
    z = qc * qc / pot.scale
    first = qc.imag > 0 or (qc.imag == 0 and qc.real > 0)
    return ComplexEnergy(z, Sheet.FIRST if first else Sheet.SECOND)


def inner_momentum(q, pot: PotentialSpec):
    """Wave number inside the shell: Q = sqrt(q^2 - scale*v0), principal branch.

    Vectorized over q.  Q = 0 is allowed; downstream evaluation uses forms
    that stay regular there.
    """
    qc = q.q if isinstance(q, WaveNumber) else q
    qa = np.asarray(qc, dtype=complex)
    out = np.sqrt(qa * qa - pot.scale * pot.v0 + 0j)
    if np.isscalar(qc) or qa.ndim == 0:
        return complex(out)
    return out
