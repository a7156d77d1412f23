import json
import math
import subprocess
import sys

import numpy as np
import pytest

from busemann import cli
from busemann.halfplane import export, stadium


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestDist:
    def test_vertical_unit_distance(self, capsys):
        code, out, _ = run(capsys, "dist", "--p", "0,1", "--q", f"0,{math.e**2!r}")
        assert code == 0 and float(out) == pytest.approx(1.0, abs=1e-15)

    def test_rounded_input(self, capsys):
        code, out, _ = run(capsys, "dist", "--p", "0,1", "--q", "0,7.389056")
        assert code == 0 and abs(float(out) - 1.0) < 1e-7

    def test_json_and_negative_points(self, capsys):
        code, out, _ = run(capsys, "dist", "--p", "0,1", "--q", "-0.75,2", "--output", "json")
        d = json.loads(out)
        assert code == 0 and d["distance"] == pytest.approx(0.25 * (0.75 + math.log(4)), abs=1e-15)

    @pytest.mark.parametrize("argv", [
        ("dist", "--p", "0,0", "--q", "0,1"),
        ("dist", "--p", "0,1"),
        ("dist", "--p", "zero,1", "--q", "0,1"),
        ("dist", "--p", "0,1", "--q", "0,2", "--space", "nowhere"),
        ("dist", "--p", "0,1", "--q", "0,2", "--output", "csv"),
    ])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2


class TestOutputs:
    def test_sphere_csv_extremes(self, capsys):
        code, out, _ = run(capsys, "sphere", "--K", "1", "--n", "240", "--output", "csv")
        assert code == 0
        blocks = export.read_polyline_csv(out)
        pts = np.vstack(list(blocks.values()))
        assert sorted(blocks["poles"][:, 1]) == pytest.approx([math.exp(-2), math.exp(2)], abs=1e-12)
        assert pts[:, 1].min() == pytest.approx(math.exp(-2), abs=1e-12)
        assert pts[:, 1].max() == pytest.approx(math.exp(2), abs=1e-12)
        lam0 = 4.589353871891063
        assert pts[:, 0].max() == pytest.approx(0.5 * (lam0 - 1 / lam0), abs=1e-9)

    def test_geodesic_round_trip(self, capsys):
        code, out, _ = run(capsys, "geodesic", "--p", "0,1", "--q", "-0.75,2", "--n", "65")
        d = json.loads(out)
        assert code == 0 and (d["lambda"], d["a"]) == pytest.approx((2.0, -0.75), abs=1e-12)
        g = stadium.parabola_through((0, 1), (-0.75, 2))
        assert max(stadium.residual(g, p) for p in d["polyline"]) < 1e-12

    def test_json_determinism(self, capsys):
        argv = ("check-axioms", "--n", "40", "--seed", "3", "--output", "json")
        a, b = run(capsys, *argv)[1], run(capsys, *argv)[1]
        assert a == b and json.loads(a)

    def test_atomic_write_under_output_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("BUSEMANN_OUTPUT_DIR", str(tmp_path))
        code, out, _ = run(capsys, "sphere", "--K", "0.5", "--n", "48", "--output", "csv", "--out", "sub/s.csv")
        target = tmp_path / "sub" / "s.csv"
        assert code == 0 and out == "" and target.read_text().startswith("# arc:")
        assert [p.name for p in target.parent.iterdir()] == ["s.csv"]

    def test_csv_only_for_curves(self, capsys):
        code, _, err = run(capsys, "ulgh", "--no-check", "--output", "csv")
        assert code == 2 and "csv" in err

    def test_norm_eval(self, capsys):
        code, out, _ = run(capsys, "norm", "--eval", "3,4", "--output", "json")
        d = json.loads(out)
        assert code == 0 and d["F"] == pytest.approx(3.125) and d["F_dual"] == pytest.approx(8.0)


class TestChecks:
    def test_convexity_fails_on_stadium(self, capsys):
        code, out, _ = run(capsys, "check-convexity", "--trials", "50", "--output", "json")
        d = json.loads(out)
        assert code == 1 and d["verdict"] == "fail" and d["witness"]

    def test_convexity_passes_on_hyperbolic(self, capsys):
        assert run(capsys, "check-convexity", "--space", "hyperbolic", "--trials", "50")[0] == 0

    def test_starlike_from_negative_viewpoint(self, capsys):
        code, out, _ = run(capsys, "check-starlike", "--viewpoint", "-0.1,1", "--n", "90", "--output", "json")
        assert code == 0 and json.loads(out)["verdict"] == "pass"

    def test_ulgh_region(self, capsys):
        code, out, _ = run(capsys, "ulgh", "--no-check", "--output", "json")
        d = json.loads(out)
        assert code == 0 and d["region"]["eta"] == pytest.approx(0.5747748470, abs=1e-9)

    def test_embed_euclidean(self, capsys):
        code, out, _ = run(capsys, "embed", "--space", "euclidean", "--c0", "0,0", "--delta", "0.1",
                           "--eps1", "0.1", "--eps2", "0.4", "--r", "1", "--pairs", "50", "--output", "json")
        d = json.loads(out)
        assert code == 0 and d["m"] == len(d["landmarks"]) and d["coverage"] >= 0.99


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "busemann.cli", "dist", "--p", "0,1", "--q", "0,1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and float(proc.stdout) == 0.0
