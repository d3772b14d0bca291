"""End-to-end CLI coverage: exit codes, JSON shapes, file round trips."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from btzgeo import cli
from btzgeo.develop import btz_holonomy_generator, massive_holonomy_generator
from btzgeo.surfaces import BoundaryCurve, GraphSurface


def run_cli(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run_cli(capsys, argv)
    return code, json.loads(out)


def write_chart(path, angle, with_line, holonomy):
    path.write_text(json.dumps({
        "angle": angle,
        "radius": 1.0,
        "t_min": -1.0,
        "t_max": 1.0,
        "has_singular_line": with_line,
        "holonomy": holonomy.linear.tolist(),
    }))
    return path


class TestVerifyCommand:
    def test_single_suite_report(self, capsys):
        code, report = run_json(
            capsys, ["verify", "--suite", "lorentz", "--seed", "7", "--no-timing"]
        )
        assert code == 0
        assert report["command"] == "verify"
        assert report["suites"] == ["lorentz"]
        assert report["summary"]["status"] == "pass"
        assert report["summary"]["total"] == report["summary"]["passed"]
        for check in report["checks"]:
            assert check["status"] == "pass"
            assert check["time_s"] is None
            assert {"suite", "check", "residual", "tolerance", "seed"} <= set(check)

    def test_no_timing_is_byte_deterministic(self, capsys):
        argv = ["verify", "--suite", "lorentz", "--seed", "7", "--no-timing"]
        _, first = run_cli(capsys, argv)
        _, second = run_cli(capsys, argv)
        assert first == second

    def test_timing_present_by_default(self, capsys):
        code, report = run_json(capsys, ["verify", "--suite", "modular"])
        assert code == 0
        assert all(isinstance(c["time_s"], float) for c in report["checks"])

    def test_out_file(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        code = cli.main(
            ["verify", "--suite", "modular", "--no-timing", "--out", str(out)]
        )
        assert code == 0
        assert json.loads(out.read_text())["summary"]["status"] == "pass"
        assert capsys.readouterr().out == ""


class TestCausalCommands:
    def test_check_valid_curve(self, capsys, tmp_path):
        curve = tmp_path / "curve.csv"
        curve.write_text("0,0.5,0\n0.5,0.6,0\n1.0,0.7,0\n")
        code, report = run_json(capsys, ["causal", "check", "--curve", str(curve)])
        assert code == 0
        assert report["kind"] == "valid-chronological"
        assert report["first_violation"] is None
        assert report["n_samples"] == 3

    def test_check_violating_curve(self, capsys, tmp_path):
        curve = tmp_path / "curve.csv"
        curve.write_text("0,0.5,0\n-0.5,0.6,0\n")
        code, report = run_json(capsys, ["causal", "check", "--curve", str(curve)])
        assert code == 1
        assert report["kind"] == "violation"
        assert report["first_violation"] == 0

    def test_jplus_relations(self, capsys):
        cases = [
            (["0", "1", "0"], ["2", "1.5", "0"], "inside"),
            (["0", "1", "0"], ["-1", "1", "0"], "outside"),
            (["0", "0", "0"], ["0.5", "1", "0"], "boundary"),
        ]
        for point, target, want in cases:
            code, report = run_json(
                capsys,
                ["causal", "jplus", "--point", *point, "--target", *target],
            )
            assert code == 0
            assert report["relation"] == want

    def test_volumetime_at_regular_point(self, capsys):
        code, report = run_json(
            capsys,
            ["causal", "volumetime", "--point", "0.5", "1.0", "0.0",
             "--radius", "2.0", "--t-min", "-0.5", "--t-max", "2.0",
             "--n", "4000", "--seed", "3"],
        )
        assert code == 0
        assert math.isfinite(report["value"])
        assert report["past_volume"] > 0.0 and report["future_volume"] > 0.0

    def test_volumetime_degenerate_exit(self, capsys):
        code, report = run_json(
            capsys,
            ["causal", "volumetime", "--point", "0.0", "0.0", "0.0",
             "--t-min", "0.0", "--t-max", "2.0", "--weight1", "0.0",
             "--n", "2000"],
        )
        assert code == 1
        assert report["error"] == "degenerate-measure"
        assert report["side"] == "past"
        assert report["estimate"] == 0.0


class TestDevelopCommands:
    def test_sample_csv(self, capsys, tmp_path):
        out = tmp_path / "cloud.csv"
        code = cli.main(
            ["develop", "sample", "--n", "50", "--seed", "1", "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "tau,r,theta,t,x,y"
        assert len(lines) == 51
        rows = np.loadtxt(str(out), delimiter=",", skiprows=1)
        # image satisfies t - x = r identically for the null-line model
        assert np.max(np.abs(rows[:, 3] - rows[:, 4] - rows[:, 1])) < 1e-12

    def test_holonomy_report(self, capsys):
        code, report = run_json(capsys, ["develop", "holonomy", "--alpha", "0"])
        assert code == 0
        assert report["command"] == "develop holonomy"
        gamma = np.asarray(report["holonomy_matrix"])
        assert abs(np.trace(gamma) - 3.0) < 1e-12
        assert report["holonomy_class"] == "parabolic"


class TestSurfaceCommands:
    def test_extend_then_check_round_trip(self, capsys, tmp_path):
        boundary = tmp_path / "boundary.json"
        boundary.write_text(json.dumps({"constant": 1.0, "cos": [0.2], "sin": [0.1]}))
        surf_file = tmp_path / "surface.json"
        code, report = run_json(
            capsys,
            ["surface", "extend", "--boundary", str(boundary),
             "--R", "1.0", "--out", str(surf_file)],
        )
        assert code == 0
        assert report["certified"] is True
        assert report["min_r2_delta"] > 1.0

        code, report = run_json(
            capsys, ["surface", "check", "--surface", str(surf_file)]
        )
        assert code == 0
        assert report["spacelike"] is True
        assert report["punctured"] is True
        assert report["completeness_certificate"] >= 1.0

    def test_cap_then_check(self, capsys, tmp_path):
        boundary = tmp_path / "boundary.json"
        boundary.write_text(json.dumps({"constant": 0.5, "cos": [0.1], "sin": []}))
        surf_file = tmp_path / "cap.json"
        code, report = run_json(
            capsys,
            ["surface", "cap", "--boundary", str(boundary), "--out", str(surf_file)],
        )
        assert code == 0
        assert report["certified_min_delta"] > 1e-9

        code, report = run_json(
            capsys, ["surface", "check", "--surface", str(surf_file)]
        )
        assert code == 0
        assert report["spacelike"] is True
        assert "completeness_certificate" not in report

    def test_assemble_happy_and_mismatch(self, capsys, tmp_path):
        zero = lambda r, th: np.zeros(np.broadcast(r, th).shape)
        level = lambda c: lambda r, th: np.full(np.broadcast(r, th).shape, c)
        ring = GraphSurface.from_functions(
            0.0, 1.0, level(3.0), zero, zero, r_inner=0.5
        )
        disc = GraphSurface.from_functions(0.0, 0.5, level(3.0), zero, zero)
        shifted = GraphSurface.from_functions(0.0, 0.5, level(4.0), zero, zero)
        ring_file = tmp_path / "ring.json"
        disc_file = tmp_path / "disc.json"
        shifted_file = tmp_path / "shifted.json"
        cli._surface_to_file(ring, ring_file, n_r=32, n_theta=32)
        cli._surface_to_file(disc, disc_file, n_r=32, n_theta=32)
        cli._surface_to_file(shifted, shifted_file, n_r=32, n_theta=32)

        code, report = run_json(
            capsys,
            ["surface", "assemble", "--outer", str(ring_file),
             "--inner", str(disc_file)],
        )
        assert code == 0
        assert report["spacelike"] is True
        assert report["max_mismatch"] < 1e-9
        assert report["interface_radius"] == pytest.approx(0.5)

        code, report = run_json(
            capsys,
            ["surface", "assemble", "--outer", str(ring_file),
             "--inner", str(shifted_file)],
        )
        assert code == 1
        assert "error" in report


class TestExtendCommands:
    def test_adjoin_punctured_chart(self, capsys, tmp_path):
        chart = write_chart(
            tmp_path / "chart.json", 0.0, False, btz_holonomy_generator()
        )
        code, report = run_json(capsys, ["extend", "adjoin", "--chart", str(chart)])
        assert code == 0
        assert report["chart"]["has_singular_line"] is True

    def test_adjoin_massive_chart_fails(self, capsys, tmp_path):
        # a massive chart without its line is not BTZ-extendable (the chart
        # with the line would be returned unchanged by idempotence)
        chart = write_chart(
            tmp_path / "chart.json", math.pi, False, massive_holonomy_generator(math.pi)
        )
        code, report = run_json(capsys, ["extend", "adjoin", "--chart", str(chart)])
        assert code == 1
        assert "error" in report

    def test_remove_writes_surface(self, capsys, tmp_path):
        chart = write_chart(
            tmp_path / "chart.json", 0.0, True, btz_holonomy_generator()
        )
        surf_file = tmp_path / "end.json"
        code, report = run_json(
            capsys,
            ["extend", "remove", "--chart", str(chart),
             "--surface-out", str(surf_file)],
        )
        assert code == 0
        assert report["chart"]["has_singular_line"] is False
        data = json.loads(surf_file.read_text())
        assert data["punctured"] is True

    def test_remove_without_line_fails(self, capsys, tmp_path):
        chart = write_chart(
            tmp_path / "chart.json", 0.0, False, btz_holonomy_generator()
        )
        code, report = run_json(capsys, ["extend", "remove", "--chart", str(chart)])
        assert code == 1
        assert "error" in report

    def test_example_chain(self, capsys):
        code, report = run_json(
            capsys, ["extend", "example-chain", "--n", "500", "--seed", "2"]
        )
        assert code == 0
        assert report["status"] == "pass"
        assert report["cited_ok"] is True
        assert report["monotonicity_failures"] == 0
        assert report["stages"] == ["M0", "M1", "M2", "M3"]


class TestModularCommands:
    def test_build_report(self, capsys):
        code, report = run_json(capsys, ["modular", "build"])
        assert code == 0
        assert np.array_equal(
            np.asarray(report["generators"]["S"]), np.diag([1.0, -1.0, -1.0])
        )
        assert all(v < 1e-12 for v in report["relation_residuals"].values())
        kinds = {e["label"]: e["kind"] for e in report["edges"]}
        assert kinds == {"B": "massive", "A~C": "massive", "INF": "extremal"}

    def test_surface_with_csv(self, capsys, tmp_path):
        csv = tmp_path / "soup.csv"
        code, report = run_json(
            capsys, ["modular", "surface", "--t0", "1.0", "--csv", str(csv)]
        )
        assert code == 0
        assert report["angle_sum_ok"] is True
        assert report["euler"] == {"V": 3, "E": 3, "F": 2, "chi": 2}
        lines = csv.read_text().strip().split("\n")
        assert lines[0] == "face,corner,x,y"
        assert len(lines) == 7

    def test_rays_all_hit_once(self, capsys):
        code, report = run_json(capsys, ["modular", "rays", "--n", "100"])
        assert code == 0
        assert report["hits_once"] == 100
        assert report["status"] == "pass"


class TestConefield:
    def test_angular_width_diverges(self, capsys, tmp_path):
        out = tmp_path / "cones.csv"
        code, report = run_json(
            capsys,
            ["conefield", "--r-min", "0.001", "--r-max", "1.0",
             "--n-radii", "3", "--n-dirs", "32", "--out", str(out)],
        )
        assert code == 0
        widths = report["max_abs_v_theta"]
        assert widths[0] == pytest.approx(1000.0)
        assert widths[-1] == pytest.approx(1.0)
        assert widths == sorted(widths, reverse=True)
        assert report["on_line_v_theta"] == 0.0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "r,psi,v_t,v_r,v_theta,kind"
        assert len(lines) == 1 + 3 * 32 + 2
        assert lines[-1].split(",")[-1] in ("line-exit", "line-tangent")


class TestUsageErrors:
    def test_no_command(self):
        with pytest.raises(SystemExit) as exc:
            cli.main([])
        assert exc.value.code == 2

    def test_unknown_suite(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["verify", "--suite", "bogus"])
        assert exc.value.code == 2

    def test_missing_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["causal"])
        assert exc.value.code == 2


class TestModuleEntryPoint:
    def test_python_dash_m(self):
        out = subprocess.run(
            [sys.executable, "-m", "btzgeo", "verify", "--suite", "modular",
             "--seed", "7", "--no-timing"],
            capture_output=True, text=True,
        )
        assert out.returncode == 0
        report = json.loads(out.stdout)
        assert report["summary"]["status"] == "pass"

    def test_help_exits_zero(self):
        out = subprocess.run(
            [sys.executable, "-m", "btzgeo", "--help"],
            capture_output=True, text=True,
        )
        assert out.returncode == 0
        assert "btzgeo" in out.stdout
