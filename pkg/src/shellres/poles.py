"""Resonance pole search in the lower half of the complex k-plane.

Poles of S are zeros of the outgoing matching coefficient jplus, which is
entire, so a rectangle's zero count is its boundary winding number.  The
search quadrisects a region until each cell isolates one zero, then runs
Newton with the exact forward-mode derivative; refined roots land at
|jplus| ~ 1e-15, which downstream expansion identities genuinely need
(roots good to only ~1e-9 leave a visible floor in them).
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryZero, NonConvergence, NotAPole, PairingViolation
from .jost import _match_arrays, match_with_derivative, _as_q
from .model import PotentialSpec
from .quadrature import max_threads

__all__ = [
    "SearchRegion",
    "ResonancePole",
    "AntiResonancePole",
    "count_zeros",
    "find_resonances",
    "residue_s",
    "pair_antiresonance",
]

DEFAULT_REGION_BOUNDS = (0.0, 8.0, -3.0, 0.0)


@dataclass(frozen=True)
class SearchRegion:
    """Axis-aligned rectangle in the complex k-plane."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError(f"degenerate search region {self}")

    @property
    def width(self) -> float:
        return self.re_max - self.re_min

    @property
    def height(self) -> float:
        return self.im_max - self.im_min

    def grown(self, d: float) -> "SearchRegion":
        return SearchRegion(self.re_min - d, self.re_max + d, self.im_min - d, self.im_max + d)

    def quarters(self):
        rm = 0.5 * (self.re_min + self.re_max)
        im = 0.5 * (self.im_min + self.im_max)
        return (
            SearchRegion(self.re_min, rm, self.im_min, im),
            SearchRegion(rm, self.re_max, self.im_min, im),
            SearchRegion(self.re_min, rm, im, self.im_max),
            SearchRegion(rm, self.re_max, im, self.im_max),
        )

    def contains(self, k: complex, margin: float = 1e-9) -> bool:
        return (self.re_min - margin <= k.real <= self.re_max + margin
                and self.im_min - margin <= k.imag <= self.im_max + margin)


def _boundary(region: SearchRegion, n_per_side: int):
    c = [
        region.re_min + 1j * region.im_min,
        region.re_max + 1j * region.im_min,
        region.re_max + 1j * region.im_max,
        region.re_min + 1j * region.im_max,
    ]
    t = np.arange(n_per_side) / n_per_side
    sides = [c[i] + (c[(i + 1) % 4] - c[i]) * t for i in range(4)]
    return np.concatenate(sides)


def _winding(region: SearchRegion, pot: PotentialSpec, n_per_side: int) -> int:
    n = n_per_side
    while n <= 65536:
        pts = _boundary(region, n)
        jp = _match_arrays(pts, pot)["jplus"]
        if np.min(np.abs(jp)) < 1e-8:
            raise BoundaryZero(f"jplus vanishes on the boundary of {region}")
        ratio = jp / np.roll(jp, 1)
        total = float(np.sum(np.angle(ratio))) / (2.0 * np.pi)
        if abs(total - round(total)) <= 0.05:
            return int(round(total))
        n *= 2
    raise NonConvergence(f"winding did not settle on {region} up to {n // 2} nodes per side")


def count_zeros(region: SearchRegion, pot: PotentialSpec, n_per_side: int = 256) -> int:
    """Number of jplus zeros strictly inside the rectangle.

    A zero sitting on the boundary makes the phase sum meaningless; one
    retry with the rectangle grown by 3e-8 clears grazing contact, after
    which the caller has to move the region.
    """
    try:
        return _winding(region, pot, n_per_side)
    except BoundaryZero:
        pass
    try:
        return _winding(region.grown(3e-8), pot, n_per_side)
    except BoundaryZero:
        raise BoundaryZero(
            f"jplus vanishes on the boundary of {region} even after a 3e-8 nudge"
        )


def _newton(k0: complex, pot: PotentialSpec, region: SearchRegion):
    k = complex(k0)
    for _ in range(60):
        vals, ders = match_with_derivative(k, pot)
        step = vals["jplus"] / ders["jplus"]
        k = k - step
        if abs(step) <= 1e-13 * (1.0 + abs(k)):
            vals, ders = match_with_derivative(k, pot)
            # one polishing step from the converged point
            polish = vals["jplus"] / ders["jplus"]
            k = k - polish
            return k, abs(polish)
    raise NonConvergence(
        f"Newton stalled from seed {k0} in cell "
        f"[{region.re_min}, {region.re_max}] x [{region.im_min}, {region.im_max}]"
    )


def find_resonances(pot: PotentialSpec, region: SearchRegion | None = None,
                    n_per_side: int = 256) -> list:
    """All resonance poles inside the region, sorted by real part.

    Quadrisection runs on a thread pool capped by SHELLRES_THREADS; the
    result list is assembled from sorted roots, so reruns are deterministic
    regardless of scheduling.
    """
    if region is None:
        region = SearchRegion(*DEFAULT_REGION_BOUNDS)
    total = count_zeros(region, pot, n_per_side)
    if total == 0:
        return []
    seeds = []
    cells = [(region, total)]
    with ThreadPoolExecutor(max_workers=max_threads()) as pool:
        for _ in range(48):
            split_next = []
            for cell, cnt in cells:
                if cnt == 0:
                    continue
                if cnt == 1 and max(cell.width, cell.height) < 0.25:
                    seeds.append(cell)
                elif max(cell.width, cell.height) < 1e-3:
                    # unresolved cluster: seed Newton at the center anyway
                    seeds.append(cell)
                else:
                    split_next.append(cell)
            if not split_next:
                break
            quarters = [q for cell in split_next for q in cell.quarters()]
            counts = list(pool.map(lambda c: count_zeros(c, pot, n_per_side), quarters))
            cells = list(zip(quarters, counts))
        else:
            raise NonConvergence(f"subdivision of {region} did not isolate all zeros")
        roots = []
        centers = [complex(0.5 * (c.re_min + c.re_max), 0.5 * (c.im_min + c.im_max))
                   for c in seeds]
        for k, err in pool.map(lambda ck: _newton(ck[0], pot, ck[1]),
                               zip(centers, seeds)):
            if not region.contains(k, margin=1e-6):
                continue
            if any(abs(k - r[0]) < 1e-6 for r in roots):
                continue
            roots.append((k, err))
    roots.sort(key=lambda r: r[0].real)
    out = []
    for k, err in roots:
        vals, ders = match_with_derivative(k, pot)
        if abs(vals["jplus"]) > 1e-10 * abs(vals["jminus"]):
            raise NonConvergence(f"refined root {k} leaves |jplus| too large")
        res = vals["jminus"] / ders["jplus"]
        out.append(ResonancePole(
            k_n=k,
            z_n=k * k / pot.scale,
            residue_s=res,
            n_sq=1j * res,
            newton_error=err,
        ))
    return out


@dataclass(frozen=True)
class ResonancePole:
    """A simple pole of S in the fourth quadrant of the k-plane.

    n_sq is i times the S-matrix residue (the squared Gamow normalization);
    z_n = k_n^2 / scale has negative imaginary part, so the width
    -2 Im z_n is positive.
    """

    k_n: complex
    z_n: complex
    residue_s: complex
    n_sq: complex
    newton_error: float

    def __post_init__(self):
        if not (self.k_n.real > 0 and self.k_n.imag < 0):
            raise ValueError(f"resonance pole must sit in the fourth quadrant, got {self.k_n}")
        if self.z_n.imag >= 0:
            raise ValueError(f"resonance energy needs Im z < 0, got {self.z_n}")

    @property
    def energy(self) -> float:
        return self.z_n.real

    @property
    def width(self) -> float:
        return -2.0 * self.z_n.imag


@dataclass(frozen=True)
class AntiResonancePole:
    """Mirror pole at -conj(k_n) in the third quadrant."""

    k_n: complex
    z_n: complex
    residue_s: complex
    m_sq: complex

    def __post_init__(self):
        if not (self.k_n.real < 0 and self.k_n.imag < 0):
            raise ValueError(f"antiresonance pole must sit in the third quadrant, got {self.k_n}")


def residue_s(k, pot: PotentialSpec) -> complex:
    """Residue of S at a simple pole k, cross-checked two independent ways.

    Route one is jminus / d(jplus)/dk; route two integrates S around a
    radius-1e-4 circle.  Disagreement beyond 1e-8 means k is not actually a
    clean simple pole at this precision.
    """
    kc = _as_q(k)
    vals, ders = match_with_derivative(kc, pot)
    if abs(vals["jplus"]) > 1e-8 * max(1.0, abs(vals["jminus"])):
        raise NotAPole(f"|jplus({kc})| = {abs(vals['jplus']):.3e} is not a zero")
    res = vals["jminus"] / ders["jplus"]
    radius, n = 1e-4, 64
    theta = 2.0 * np.pi * np.arange(n) / n
    ring = kc + radius * np.exp(1j * theta)
    m = _match_arrays(ring, pot)
    s_ring = m["jminus"] / m["jplus"]
    res_contour = np.sum(s_ring * radius * np.exp(1j * theta)) / n
    if abs(res_contour - res) > 1e-8 * (1.0 + abs(res)):
        raise NonConvergence(
            f"residue routes disagree at {kc}: {res} vs {res_contour}"
        )
    return res


def pair_antiresonance(pole: ResonancePole, pot: PotentialSpec) -> AntiResonancePole:
    """Antiresonance partner at -conj(k_n), verified independently.

    The partner residue is recomputed from scratch at the mirror point (not
    copied through the conjugation symmetry) and must reproduce conj(n_sq)
    to 1e-8; a probe 1e-6 away must still see |S| blow past 1e4.
    """
    ka = -np.conj(pole.k_n)
    res = residue_s(ka, pot)
    m_sq = 1j * res
    if abs(m_sq - np.conj(pole.n_sq)) > 1e-8 * (1.0 + abs(m_sq)):
        raise PairingViolation(
            f"mirror norm {m_sq} does not conjugate-match {pole.n_sq}"
        )
    probe = ka + 1e-6
    m = _match_arrays(np.array([probe]), pot)
    s_probe = abs(complex(m["jminus"][0] / m["jplus"][0]))
    if s_probe <= 1e4:
        raise PairingViolation(f"|S| at probe near {ka} is only {s_probe:.3e}")
    return AntiResonancePole(
        k_n=complex(ka),
        z_n=complex(ka * ka / pot.scale),
        residue_s=res,
        m_sq=m_sq,
    )
