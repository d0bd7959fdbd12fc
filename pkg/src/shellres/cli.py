"""Command-line front end: config ingestion, CSV/report emission, verify gate.

Outputs are deterministic: quadrature and summation orders are fixed, CSV
floats carry 17 significant digits (round-trip exact), and the only
wall-clock content is one optional header comment that --no-timestamp
removes, making reruns byte-identical.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numerical failure (nonconvergence or a module-level numeric error).
"""
from __future__ import annotations

import argparse
import configparser
import csv
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .checks import TOLERANCE_DEFAULTS, run_criteria
from .errors import ConfigError, ShellresError
from .expansions import Contour, TestFunction, alpha_extrapolate, resonance_expansion
from .gamow import evaluate_gamow, gamow_state
from .jost import _match_arrays
from .model import PotentialSpec, make_potential
from .poles import DEFAULT_REGION_BOUNDS, SearchRegion, find_resonances, pair_antiresonance

__all__ = ["RunConfig", "load_config", "main"]

_SECTIONS = {
    "potential": {"v0", "a", "b"},
    "units": {"scale"},
    "tolerances": set(TOLERANCE_DEFAULTS),
    "search": {"re_min", "re_max", "im_min", "im_max"},
    "contour": {"depth", "kmax"},
    "output": {"dir"},
}


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs, with reference-potential defaults."""

    pot: PotentialSpec
    tolerances: dict = field(default_factory=dict)
    region: SearchRegion = SearchRegion(*DEFAULT_REGION_BOUNDS)
    contour_depth: float = 0.7063
    contour_kmax: float = 40.0
    out_dir: Path = Path(".")


def _get_float(parser, section, key, default):
    if not parser.has_option(section, key):
        return default
    raw = parser.get(section, key)
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key} = {raw!r} is not a number") from exc


def load_config(path: str | None) -> RunConfig:
    """Parse an INI-style config; unknown sections or keys are errors."""
    parser = configparser.ConfigParser()
    if path is not None:
        target = Path(path)
        if not target.is_file():
            raise ConfigError(f"config file not found: {path}")
        try:
            parser.read(target)
        except configparser.Error as exc:
            raise ConfigError(f"config parse failure: {exc}") from exc
    for section in parser.sections():
        if section not in _SECTIONS:
            raise ConfigError(f"unknown config section [{section}]")
        for key in parser.options(section):
            if key not in _SECTIONS[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}]")
    v0 = _get_float(parser, "potential", "v0", 10.0)
    a = _get_float(parser, "potential", "a", 1.0)
    b = _get_float(parser, "potential", "b", 2.0)
    scale = _get_float(parser, "units", "scale", 1.0)
    try:
        pot = make_potential(v0, a, b, scale)
    except (ValueError, ShellresError) as exc:
        raise ConfigError(f"bad potential: {exc}") from exc
    tolerances = {}
    if parser.has_section("tolerances"):
        for key in parser.options("tolerances"):
            tolerances[key] = _get_float(parser, "tolerances", key, None)
    bounds = [
        _get_float(parser, "search", k, d)
        for k, d in zip(("re_min", "re_max", "im_min", "im_max"), DEFAULT_REGION_BOUNDS)
    ]
    try:
        region = SearchRegion(*bounds)
    except ValueError as exc:
        raise ConfigError(f"bad search region: {exc}") from exc
    return RunConfig(
        pot=pot,
        tolerances=tolerances,
        region=region,
        contour_depth=_get_float(parser, "contour", "depth", 0.7063),
        contour_kmax=_get_float(parser, "contour", "kmax", 40.0),
        out_dir=Path(parser.get("output", "dir", fallback=".")),
    )


def _fmt(x: float) -> str:
    return f"{x:.16e}"


def _write_csv(path: Path, header, rows, timestamp: bool):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        if timestamp:
            fh.write(f"# generated: {datetime.now(timezone.utc).isoformat()}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) if isinstance(x, float) else x for x in row])


def _write_text(path: Path, lines, timestamp: bool):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        if timestamp:
            fh.write(f"# generated: {datetime.now(timezone.utc).isoformat()}\n")
        fh.write("\n".join(lines) + "\n")


def _cmd_smatrix(cfg: RunConfig, args) -> int:
    k = np.linspace(args.kmin, args.kmax, args.n)
    m = _match_arrays(k, cfg.pot)
    s = m["jminus"] / m["jplus"]
    phase = np.unwrap(np.angle(s))
    rows = [
        (float(ki), float(si.real), float(si.imag), float(abs(si)), float(ph))
        for ki, si, ph in zip(k, s, phase)
    ]
    _write_csv(cfg.out_dir / "smatrix.csv",
               ["k", "re_s", "im_s", "abs_s", "phase"], rows, not args.no_timestamp)
    print(f"wrote {cfg.out_dir / 'smatrix.csv'} ({len(rows)} rows)")
    return 0


def _cmd_poles(cfg: RunConfig, args) -> int:
    poles = find_resonances(cfg.pot, cfg.region)
    rows = []
    for i, p in enumerate(poles, start=1):
        rows.append((i, float(p.k_n.real), float(p.k_n.imag),
                     float(p.z_n.real), float(p.z_n.imag),
                     float(p.energy), float(p.width),
                     float(p.n_sq.real), float(p.n_sq.imag),
                     float(p.newton_error)))
    _write_csv(cfg.out_dir / "poles.csv",
               ["n", "re_k", "im_k", "re_z", "im_z", "energy", "width",
                "re_nsq", "im_nsq", "newton_error"], rows, not args.no_timestamp)
    print(f"wrote {cfg.out_dir / 'poles.csv'} ({len(rows)} poles)")
    if args.anti:
        arows = []
        for i, p in enumerate(poles, start=1):
            anti = pair_antiresonance(p, cfg.pot)
            arows.append((i, float(anti.k_n.real), float(anti.k_n.imag),
                          float(anti.z_n.real), float(anti.z_n.imag),
                          float(anti.m_sq.real), float(anti.m_sq.imag)))
        _write_csv(cfg.out_dir / "poles_anti.csv",
                   ["n", "re_k", "im_k", "re_z", "im_z", "re_msq", "im_msq"],
                   arows, not args.no_timestamp)
        print(f"wrote {cfg.out_dir / 'poles_anti.csv'} ({len(arows)} partners)")
    return 0


def _select_pole(cfg: RunConfig, index: int):
    poles = find_resonances(cfg.pot, cfg.region)
    if not 1 <= index <= len(poles):
        raise ConfigError(f"pole index {index} outside 1..{len(poles)} found in {cfg.region}")
    return poles[index - 1]


def _cmd_gamow(cfg: RunConfig, args) -> int:
    pole = _select_pole(cfg, args.pole)
    state = gamow_state(pole, cfg.pot)
    rmax = args.rmax if args.rmax is not None else 2.0 * cfg.pot.b
    r = np.linspace(args.rmin, rmax, args.n)
    u = evaluate_gamow(state, r)
    rows = [(float(ri), float(ui.real), float(ui.imag), float(abs(ui)))
            for ri, ui in zip(r, u)]
    _write_csv(cfg.out_dir / "gamow.csv",
               ["r", "re_u", "im_u", "abs_u"], rows, not args.no_timestamp)
    print(f"wrote {cfg.out_dir / 'gamow.csv'} (pole {args.pole}, k={pole.k_n})")
    return 0


def _cmd_expand(cfg: RunConfig, args) -> int:
    mode = args.mode.replace("-", "_")
    alphas = [float(x) for x in args.alpha.split(",") if x.strip()]
    if not alphas:
        raise ConfigError("--alpha needs at least one value")
    poles = find_resonances(cfg.pot, cfg.region)
    if len(poles) < args.poles:
        raise ConfigError(f"only {len(poles)} poles found in {cfg.region}, "
                          f"need {args.poles}; widen [search]")
    chosen = poles[:args.poles]
    depth = args.contour_depth if args.contour_depth is not None else cfg.contour_depth
    kmax = args.kmax if args.kmax is not None else cfg.contour_kmax
    contour = Contour.rectangle(depth, kmax)
    test = TestFunction.gaussian_bump(args.bump_center, args.bump_width)
    reports = [resonance_expansion(test, cfg.pot, chosen, contour, alpha=a, mode=mode)
               for a in alphas]
    final = alpha_extrapolate(reports) if len(reports) >= 3 else reports[-1]
    tol = cfg.tolerances.get("expansion_error", TOLERANCE_DEFAULTS["expansion_error"])
    lines = [
        "resonance expansion report",
        f"mode: {mode}",
        f"poles: {len(chosen)}",
    ]
    for i, p in enumerate(chosen, start=1):
        lines.append(f"  k_{i} = {_fmt(p.k_n.real)} {_fmt(p.k_n.imag)}i"
                     f"  z_{i} = {_fmt(p.z_n.real)} {_fmt(p.z_n.imag)}i")
    lines += [
        f"contour: depth {depth}, kmax {kmax}",
        f"alpha: {alphas}" + (" (extrapolated to 0)" if final.extrapolated else ""),
        f"error_l2: {_fmt(final.error_l2)}",
        f"error_max: {_fmt(final.error_max)}",
        f"tolerance: {_fmt(tol)}",
        f"status: {'pass' if final.error_l2 <= tol else 'fail'}",
    ]
    _write_text(cfg.out_dir / "expand_report.txt", lines, not args.no_timestamp)
    recon = final.reconstruction
    phi = test.evaluate(final.r)
    err = np.abs(recon - final.direct)
    rows = [(float(ri), float(abs(p)), float(abs(c)), float(e))
            for ri, p, c, e in zip(final.r, phi, recon, err)]
    _write_csv(cfg.out_dir / "expand.csv",
               ["r", "abs_phi", "abs_phi_rec", "abs_error"], rows, not args.no_timestamp)
    print(f"wrote {cfg.out_dir / 'expand_report.txt'} and expand.csv "
          f"(error_l2 {final.error_l2:.3e})")
    return 0 if final.error_l2 <= tol else 1


def _cmd_verify(cfg: RunConfig, args) -> int:
    indices = None
    if args.checks:
        indices = tuple(int(x) for x in args.checks.split(",") if x.strip())
    results = run_criteria(indices, cfg.pot, cfg.tolerances)
    lines = [res.line() for res in results]
    for line in lines:
        print(line)
    failures = [res for res in results if not res.passed]
    lines.append(f"result: {len(results) - len(failures)}/{len(results)} checks passed")
    print(lines[-1])
    _write_text(cfg.out_dir / "verify.txt", lines, not args.no_timestamp)
    return 1 if failures else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shellres",
        description="Shell-potential scattering: S-matrix, resonance poles, "
                    "Gamow states, and pole expansions of the continuum.",
    )
    parser.add_argument("--config", help="INI config file (defaults: reference potential)")
    parser.add_argument("--out-dir", help="override the [output] dir from the config")
    parser.add_argument("--no-timestamp", action="store_true",
                        help="omit the generated-at header for byte-identical reruns")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("smatrix", help="S-matrix values on a real wave-number grid")
    p.add_argument("--kmin", type=float, default=0.05)
    p.add_argument("--kmax", type=float, default=20.0)
    p.add_argument("--n", type=int, default=400)

    p = sub.add_parser("poles", help="resonance poles in the configured search region")
    p.add_argument("--anti", action="store_true", help="also emit antiresonance partners")

    p = sub.add_parser("gamow", help="sample one Gamow state on a radial grid")
    p.add_argument("--pole", type=int, default=1, help="1-based pole index by real part")
    p.add_argument("--rmin", type=float, default=0.0)
    p.add_argument("--rmax", type=float, default=None)
    p.add_argument("--n", type=int, default=401)

    p = sub.add_parser("expand", help="resonance expansion of a gaussian bump")
    p.add_argument("--mode", choices=["in-in", "out-out", "out-in"], default="in-in")
    p.add_argument("--poles", type=int, default=4)
    p.add_argument("--alpha", default="0.2,0.1,0.05",
                   help="comma-separated regulator values, largest first")
    p.add_argument("--kmax", type=float, default=None)
    p.add_argument("--contour-depth", type=float, default=None)
    p.add_argument("--bump-center", type=float, default=0.5)
    p.add_argument("--bump-width", type=float, default=0.12)

    p = sub.add_parser("verify", help="run the numbered verification checks")
    p.add_argument("--checks", help="comma-separated subset, e.g. 1,2,9")
    return parser


_COMMANDS = {
    "smatrix": _cmd_smatrix,
    "poles": _cmd_poles,
    "gamow": _cmd_gamow,
    "expand": _cmd_expand,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.out_dir:
            cfg = RunConfig(pot=cfg.pot, tolerances=cfg.tolerances, region=cfg.region,
                            contour_depth=cfg.contour_depth, contour_kmax=cfg.contour_kmax,
                            out_dir=Path(args.out_dir))
        return _COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ShellresError as exc:
        print(f"numerical failure ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
