"""Convergence study for the resonance expansion.

Two sweeps on the reference potential (or any other shell):

  1. background contour node budget at fixed alpha: uniform per-segment
     panels stall until their spacing beats the clearance between the path
     and the nearest pole (0.028 for the reference depth 0.7063), while the
     pole-graded default reaches the identity floor with a fraction of the
     nodes;
  2. regulator strength alpha: single-alpha errors plus the Richardson-style
     extrapolation to alpha = 0.

Usage:
  python3 scripts/convergence_study.py
  python3 scripts/convergence_study.py --poles 2 --kmax 20 --depth 0.55
"""
import argparse
import time

from shellres import (
    Contour,
    SearchRegion,
    TestFunction,
    alpha_extrapolate,
    contour_nodes,
    find_resonances,
    k_quadrature,
    make_potential,
    resonance_expansion,
)


def parse_args():
    p = argparse.ArgumentParser(description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--v0", type=float, default=10.0)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=2.0)
    p.add_argument("--depth", type=float, default=0.7063)
    p.add_argument("--kmax", type=float, default=40.0)
    p.add_argument("--poles", type=int, default=4)
    p.add_argument("--alpha", type=float, default=0.05,
                   help="regulator used in the node-budget sweep")
    p.add_argument("--counts", default="256,1024,4096,8192",
                   help="per-segment contour node budgets to sweep")
    p.add_argument("--alphas", default="0.2,0.1,0.05",
                   help="decreasing alpha family for the extrapolation sweep")
    p.add_argument("--mode", default="in_in", choices=["in_in", "out_out", "out_in"])
    return p.parse_args()


def main():
    args = parse_args()
    pot = make_potential(args.v0, args.a, args.b)
    poles = find_resonances(pot, SearchRegion(0.0, 8.0, -3.0, 0.0))
    if len(poles) < args.poles:
        raise SystemExit(f"only {len(poles)} poles in the search region, "
                         f"need {args.poles}")
    chosen = poles[:args.poles]
    test = TestFunction.gaussian_bump(0.5, 0.12)
    k_grid = k_quadrature(pot, kmax=args.kmax, poles=poles)
    print(f"potential v0={pot.v0} a={pot.a} b={pot.b}, "
          f"{args.poles} poles, depth {args.depth}, kmax {args.kmax}, "
          f"direct grid {k_grid[0].size} nodes")

    print(f"\ncontour node budget sweep (alpha = {args.alpha}, mode {args.mode})")
    print(f"{'per-seg':>8} {'nodes':>7} {'error_l2':>12} {'error_max':>12} {'secs':>6}")

    def run_one(label, contour):
        t0 = time.perf_counter()
        rep = resonance_expansion(test, pot, chosen, contour, alpha=args.alpha,
                                  mode=args.mode, k_grid=k_grid)
        dt = time.perf_counter() - t0
        n_bg = contour_nodes(contour, chosen)[0].size
        print(f"{label:>8} {n_bg:7d} {rep.error_l2:12.3e} {rep.error_max:12.3e} {dt:6.2f}")

    for count in (int(c) for c in args.counts.split(",") if c.strip()):
        run_one(str(count), Contour.rectangle(args.depth, args.kmax,
                                              counts=(count, count, count)))
    run_one("graded", Contour.rectangle(args.depth, args.kmax))

    alphas = [float(a) for a in args.alphas.split(",") if a.strip()]
    print(f"\nalpha sweep (graded contour, mode {args.mode})")
    print(f"{'alpha':>8} {'error_l2':>12} {'error_max':>12}")
    contour = Contour.rectangle(args.depth, args.kmax)
    reports = []
    for alpha in alphas:
        rep = resonance_expansion(test, pot, chosen, contour, alpha=alpha,
                                  mode=args.mode, k_grid=k_grid)
        reports.append(rep)
        print(f"{alpha:8.3f} {rep.error_l2:12.3e} {rep.error_max:12.3e}")
    if len(reports) >= 3:
        ext = alpha_extrapolate(reports)
        print(f"{'-> 0':>8} {ext.error_l2:12.3e} {ext.error_max:12.3e}  (extrapolated)")


if __name__ == "__main__":
    main()
