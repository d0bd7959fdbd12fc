import csv
import re
from pathlib import Path

import numpy as np
import pytest

import reference_values as ref
from shellres.cli import RunConfig, load_config, main

FLOAT_17 = re.compile(r"^-?\d\.\d{16}e[+-]\d{2,3}$")


def _read_csv(path: Path):
    with open(path) as fh:
        rows = [row for row in csv.reader(fh) if not row[0].startswith("#")]
    return rows[0], rows[1:]


def test_load_config_defaults():
    cfg = load_config(None)
    assert cfg.pot.v0 == 10.0 and cfg.pot.a == 1.0 and cfg.pot.b == 2.0
    assert cfg.region.re_max == 8.0 and cfg.region.im_min == -3.0
    assert cfg.contour_depth == 0.7063 and cfg.contour_kmax == 40.0


def test_load_config_roundtrip(tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text(
        "[potential]\nv0 = 4.0\na = 0.8\nb = 2.5\n"
        "[units]\nscale = 2.0\n"
        "[search]\nre_max = 6.0\n"
        "[tolerances]\nexpansion_error = 1e-2\n"
        "[contour]\ndepth = 0.5\nkmax = 30\n"
        "[output]\ndir = out\n"
    )
    cfg = load_config(str(ini))
    assert cfg.pot.v0 == 4.0 and cfg.pot.scale == 2.0
    assert cfg.region.re_max == 6.0 and cfg.region.re_min == 0.0
    assert cfg.tolerances == {"expansion_error": 1e-2}
    assert cfg.contour_depth == 0.5 and cfg.out_dir == Path("out")


@pytest.mark.parametrize("body", [
    "[frobnicate]\nx = 1\n",
    "[potential]\njunk = 1\n",
    "[potential]\nv0 = abc\n",
    "[potential]\nb = 0.5\n",
    "[search]\nre_max = -1\n",
])
def test_bad_configs_exit_2(tmp_path, capsys, body):
    ini = tmp_path / "bad.ini"
    ini.write_text(body)
    rc = main(["--config", str(ini), "--out-dir", str(tmp_path), "poles"])
    assert rc == 2
    assert "config error" in capsys.readouterr().err


def test_missing_config_exits_2(tmp_path):
    rc = main(["--config", str(tmp_path / "nope.ini"), "poles"])
    assert rc == 2


def test_poles_csv_matches_reference(tmp_path):
    rc = main(["--no-timestamp", "--out-dir", str(tmp_path), "poles", "--anti"])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "poles.csv")
    assert header[:3] == ["n", "re_k", "im_k"]
    expected = [k for k in ref.POLES if k.real < 8.0]
    assert len(rows) == len(expected)
    for row, k in zip(rows, expected):
        assert abs(complex(float(row[1]), float(row[2])) - k) < 1e-10
        assert float(row[9]) < 1e-12
    for cell in rows[0][1:]:
        assert FLOAT_17.match(cell)
    _, arows = _read_csv(tmp_path / "poles_anti.csv")
    assert len(arows) == len(expected)
    for row, k in zip(arows, expected):
        assert abs(complex(float(row[1]), float(row[2])) - (-np.conj(k))) < 1e-10


def test_reruns_are_byte_identical(tmp_path):
    d1, d2 = tmp_path / "one", tmp_path / "two"
    for d in (d1, d2):
        assert main(["--no-timestamp", "--out-dir", str(d), "poles"]) == 0
    assert (d1 / "poles.csv").read_bytes() == (d2 / "poles.csv").read_bytes()


def test_timestamp_header_present_by_default(tmp_path):
    assert main(["--out-dir", str(tmp_path), "smatrix", "--n", "5"]) == 0
    first = (tmp_path / "smatrix.csv").read_text().splitlines()[0]
    assert first.startswith("# generated: ")


def test_smatrix_csv_unitarity(tmp_path):
    rc = main(["--no-timestamp", "--out-dir", str(tmp_path), "smatrix",
               "--kmin", "0.2", "--kmax", "10", "--n", "50"])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "smatrix.csv")
    assert header == ["k", "re_s", "im_s", "abs_s", "phase"]
    assert len(rows) == 50
    mods = np.array([float(r[3]) for r in rows])
    assert np.max(np.abs(mods - 1.0)) < 1e-10


def test_gamow_csv_tail(tmp_path):
    rc = main(["--no-timestamp", "--out-dir", str(tmp_path), "gamow",
               "--pole", "1", "--rmin", "2.0", "--rmax", "4.0", "--n", "11"])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "gamow.csv")
    assert header == ["r", "re_u", "im_u", "abs_u"]
    assert len(rows) == 11
    # beyond b the state is norm * e^{ikr}; |u| grows like e^{|Im k| r}
    r = np.array([float(row[0]) for row in rows])
    mag = np.array([float(row[3]) for row in rows])
    fit = np.polyfit(r, np.log(mag), 1)[0]
    assert fit == pytest.approx(-ref.POLES[0].imag, rel=1e-10)


def test_gamow_pole_index_out_of_range(tmp_path, capsys):
    rc = main(["--no-timestamp", "--out-dir", str(tmp_path), "gamow", "--pole", "99"])
    assert rc == 2
    assert "pole index" in capsys.readouterr().err


def test_expand_single_pole_passes(tmp_path, poles_ref):
    ims = sorted(abs(p.k_n.imag) for p in poles_ref)
    depth = 0.5 * (ims[0] + ims[1])
    rc = main(["--no-timestamp", "--out-dir", str(tmp_path), "expand",
               "--poles", "1", "--contour-depth", f"{depth}", "--kmax", "12",
               "--alpha", "0.05"])
    assert rc == 0
    report = (tmp_path / "expand_report.txt").read_text()
    assert "status: pass" in report
    assert "mode: in_in" in report
    header, rows = _read_csv(tmp_path / "expand.csv")
    assert header == ["r", "abs_phi", "abs_phi_rec", "abs_error"]
    errs = [float(r[3]) for r in rows]
    assert max(errs) < 1e-8


def test_expand_fails_on_impossible_tolerance(tmp_path, poles_ref):
    ims = sorted(abs(p.k_n.imag) for p in poles_ref)
    depth = 0.5 * (ims[0] + ims[1])
    ini = tmp_path / "strict.ini"
    ini.write_text("[tolerances]\nexpansion_error = 1e-30\n")
    rc = main(["--config", str(ini), "--no-timestamp", "--out-dir", str(tmp_path),
               "expand", "--poles", "1", "--contour-depth", f"{depth}",
               "--kmax", "12", "--alpha", "0.05"])
    assert rc == 1
    assert "status: fail" in (tmp_path / "expand_report.txt").read_text()


def test_expand_rejects_empty_alpha(tmp_path):
    rc = main(["--no-timestamp", "--out-dir", str(tmp_path), "expand",
               "--alpha", ",", "--poles", "1"])
    assert rc == 2


def test_verify_subset_passes(tmp_path, capsys):
    rc = main(["--no-timestamp", "--out-dir", str(tmp_path), "verify", "--checks", "1,2"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "result: 2/2 checks passed" in out
    text = (tmp_path / "verify.txt").read_text()
    assert text.count("PASS") == 2


def test_verify_free_particle_subset(tmp_path):
    ini = tmp_path / "free.ini"
    ini.write_text("[potential]\nv0 = 0.0\n")
    rc = main(["--config", str(ini), "--no-timestamp", "--out-dir", str(tmp_path),
               "verify", "--checks", "1,2,3"])
    assert rc == 0
