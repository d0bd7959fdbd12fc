"""Map |jplus| over a window of the lower half k-plane.

Writes a CSV of log10 |jplus| on a rectangular grid (one row per grid point)
and prints the resonance poles found inside the window.  The minima of the
portrait and the printed pole list should coincide; plotting the CSV as a
heat map makes the string of poles marching off to the lower right visible.

Usage:
  python3 scripts/pole_portrait.py --out portrait.csv
  python3 scripts/pole_portrait.py --re-max 12 --nx 481
"""
import argparse
import csv

import numpy as np

from shellres import SearchRegion, find_resonances, make_potential
from shellres.jost import _match_arrays


def parse_args():
    p = argparse.ArgumentParser(description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--v0", type=float, default=10.0)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=2.0)
    p.add_argument("--re-min", type=float, default=0.0)
    p.add_argument("--re-max", type=float, default=8.0)
    p.add_argument("--im-min", type=float, default=-3.0)
    p.add_argument("--im-max", type=float, default=0.0)
    p.add_argument("--nx", type=int, default=241)
    p.add_argument("--ny", type=int, default=121)
    p.add_argument("--out", default="portrait.csv")
    return p.parse_args()


def main():
    args = parse_args()
    pot = make_potential(args.v0, args.a, args.b)
    re = np.linspace(args.re_min, args.re_max, args.nx)
    im = np.linspace(args.im_min, args.im_max, args.ny)
    kk = (re[None, :] + 1j * im[:, None]).ravel()
    jp = _match_arrays(kk, pot)["jplus"]
    mag = np.log10(np.maximum(np.abs(jp), 1e-300))
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["re_k", "im_k", "log10_abs_jplus"])
        for k, m in zip(kk, mag):
            writer.writerow([f"{k.real:.16e}", f"{k.imag:.16e}", f"{m:.16e}"])
    print(f"wrote {args.out} ({kk.size} points)")

    region = SearchRegion(args.re_min, args.re_max, args.im_min, args.im_max)
    poles = find_resonances(pot, region)
    print(f"{len(poles)} poles in {region}:")
    for i, p in enumerate(poles, start=1):
        print(f"  {i}: k = {p.k_n.real:+.12f} {p.k_n.imag:+.12f}i"
              f"   energy = {p.energy:.12f}   width = {p.width:.12f}")


if __name__ == "__main__":
    main()
