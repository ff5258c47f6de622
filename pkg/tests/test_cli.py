"""Command-line interface: formats, exit codes, reproducibility, figures."""
import json
import math
import shlex

import numpy as np
import pytest

from ringwave.cli import EXIT_HORIZON, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, main, parse_theta


def run_to_file(tmp_path, name, args):
    out = tmp_path / name
    rc = main(args + ["--out", str(out)])
    return rc, out


def data_rows(text):
    return [line for line in text.splitlines() if line and not line.startswith("#")]


class TestThetaParsing:
    def test_literals(self):
        assert parse_theta("pi/2") == pytest.approx(math.pi / 2)
        assert parse_theta("-pi/2") == pytest.approx(-math.pi / 2)
        assert parse_theta("pi/4") == pytest.approx(math.pi / 4)
        assert parse_theta("pi") == pytest.approx(math.pi)
        assert parse_theta("-0.25") == -0.25

    def test_garbage_rejected(self):
        with pytest.raises(ValueError):
            parse_theta("two pi")


class TestProfile:
    def test_initial_square_profile(self, tmp_path):
        rc, out = run_to_file(
            tmp_path,
            "p.csv",
            ["profile", "--sites", "500", "--prep", "square", "--halfwidth", "5", "--times", "0"],
        )
        assert rc == EXIT_OK
        rows = data_rows(out.read_text())
        assert rows[0] == "t,j,P"
        values = {}
        for row in rows[1:]:
            t, j, p = row.split(",")
            values[int(j)] = float(p)
        assert len(values) == 500
        for j in range(-5, 6):
            assert values[j] == pytest.approx(1.0 / 11.0, abs=1e-13)
        assert values[100] == pytest.approx(0.0, abs=1e-28)

    def test_symmetric_spread_without_phase(self, tmp_path):
        rc, out = run_to_file(
            tmp_path,
            "p.csv",
            ["profile", "--prep", "square", "--halfwidth", "5", "--theta", "0", "--times", "0,10,20,30"],
        )
        assert rc == EXIT_OK
        by_time = {}
        for row in data_rows(out.read_text())[1:]:
            t, j, p = row.split(",")
            by_time.setdefault(float(t), {})[int(j)] = float(p)
        assert sorted(by_time) == [0.0, 10.0, 20.0, 30.0]
        for t, profile in by_time.items():
            for j in (1, 20, 60):
                assert profile[j] == pytest.approx(profile[-j], abs=1e-12)

    def test_drifting_peak_with_quarter_phase(self, tmp_path):
        rc, out = run_to_file(
            tmp_path,
            "p.csv",
            ["profile", "--prep", "square", "--halfwidth", "5", "--theta=-1.5707963", "--times", "20"],
        )
        assert rc == EXIT_OK
        profile = {}
        for row in data_rows(out.read_text())[1:]:
            _, j, p = row.split(",")
            profile[int(j)] = float(p)
        peak_site = max(profile, key=profile.get)
        assert abs(peak_site - 40) <= 2

    def test_horizon_violation_exit_code(self, tmp_path):
        rc, _ = run_to_file(
            tmp_path,
            "p.csv",
            ["profile", "--prep", "square", "--halfwidth", "5", "--times", "0,200"],
        )
        assert rc == EXIT_HORIZON
        rc, _ = run_to_file(
            tmp_path,
            "p.csv",
            ["profile", "--prep", "square", "--halfwidth", "5", "--times", "0,200", "--allow-wrap"],
        )
        assert rc == EXIT_OK

    def test_missing_halfwidth_is_usage_error(self, tmp_path):
        rc, _ = run_to_file(tmp_path, "p.csv", ["profile", "--prep", "square", "--times", "0"])
        assert rc == EXIT_USAGE

    def test_bad_flag_exits_2(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["profile", "--nonsense"])
        assert info.value.code == EXIT_USAGE
        capsys.readouterr()


class TestFidelity:
    def test_origin_receiver_first_row(self, tmp_path):
        rc, out = run_to_file(
            tmp_path,
            "f.csv",
            ["fidelity", "--prep", "atomic", "--receiver", "0", "--tmax", "5"],
        )
        assert rc == EXIT_OK
        rows = data_rows(out.read_text())
        assert rows[0] == "d,t,F"
        d, t, f = rows[1].split(",")
        assert (d, t) == ("0", "0") and float(f) == pytest.approx(1.0, abs=1e-12)

    def test_atomic_receiver_set_runs(self, tmp_path):
        rc, out = run_to_file(
            tmp_path,
            "f.csv",
            ["fidelity", "--prep", "atomic"]
            + [tok for d in (10, 30, 60, 80) for tok in ("--receiver", str(d))],
        )
        assert rc == EXIT_OK
        text = out.read_text()
        receivers = {row.split(",")[0] for row in data_rows(text)[1:]}
        assert receivers == {"10", "30", "60", "80"}

    def test_ballistic_peak_summary(self, tmp_path):
        rc, out = run_to_file(
            tmp_path,
            "f.csv",
            ["fidelity", "--prep", "square", "--halfwidth", "5", "--theta=-pi/2", "--receiver", "90"],
        )
        assert rc == EXIT_OK
        summaries = [l for l in out.read_text().splitlines() if l.startswith("# peak,9")]
        assert len(summaries) == 1
        _, d, t_star, f_star, rule = summaries[0].split(",")
        assert d == "90"
        assert float(f_star) == pytest.approx(0.8, abs=0.05)
        assert abs(float(t_star) - 45.0) / 45.0 < 0.05
        assert rule == "first-local-max"

    def test_analytic_bessel_column(self, tmp_path):
        rc, out = run_to_file(
            tmp_path,
            "f.csv",
            ["fidelity", "--prep", "atomic", "--receiver", "10", "--tmax", "20", "--analytic", "bessel"],
        )
        assert rc == EXIT_OK
        rows = data_rows(out.read_text())
        assert rows[0] == "d,t,F,F_bessel"
        worst = max(abs(float(r.split(",")[2]) - float(r.split(",")[3])) for r in rows[1:])
        assert worst < 1e-3

    def test_analytic_gaussian_requires_square(self, tmp_path):
        rc, _ = run_to_file(
            tmp_path, "f.csv", ["fidelity", "--prep", "atomic", "--receiver", "10", "--analytic", "gaussian"]
        )
        assert rc == EXIT_USAGE

    def test_explicit_window_beyond_horizon(self, tmp_path):
        args = ["fidelity", "--prep", "square", "--halfwidth", "5", "--receiver", "90", "--tmax", "200"]
        rc, _ = run_to_file(tmp_path, "f.csv", args)
        assert rc == EXIT_HORIZON
        rc, _ = run_to_file(tmp_path, "f.csv", args + ["--allow-wrap"])
        assert rc == EXIT_OK


class TestMaxcurve:
    def test_three_phase_curves(self, tmp_path):
        rc, out = run_to_file(
            tmp_path,
            "m.csv",
            ["maxcurve", "--prep", "square", "--halfwidth", "5", "--peak-rule", "global"]
            + [tok for d in (10, 30, 60, 90) for tok in ("--receiver", str(d))],
        )
        assert rc == EXIT_OK
        rows = data_rows(out.read_text())
        assert rows[0] == "theta,d,t_star,f_star"
        curves = {}
        for row in rows[1:]:
            theta, d, _, f_star = row.split(",")
            curves.setdefault(float(theta), {})[int(d)] = float(f_star)
        linear = curves[min(curves)]  # theta = -pi/2
        resting = curves[0.0]
        assert max(linear[d] for d in (30, 60, 90)) - min(linear[d] for d in (30, 60, 90)) < 0.05
        assert all(resting[a] > resting[b] for a, b in [(10, 30), (30, 60), (60, 90)])
        for curve in curves.values():
            assert curve[10] >= curve[90]

    def test_repeatable_theta_flag(self, tmp_path):
        rc, out = run_to_file(
            tmp_path,
            "m.csv",
            ["maxcurve", "--prep", "square", "--halfwidth", "5", "--theta", "0", "--theta=-pi/2",
             "--receiver", "30"],
        )
        assert rc == EXIT_OK
        thetas = {row.split(",")[0] for row in data_rows(out.read_text())[1:]}
        assert len(thetas) == 2


class TestReproducibility:
    def test_identical_reruns(self, tmp_path):
        args = ["fidelity", "--prep", "square", "--halfwidth", "5", "--theta=-pi/4", "--receiver", "30"]
        _, first = run_to_file(tmp_path, "a.csv", args)
        _, second = run_to_file(tmp_path, "b.csv", args)
        assert first.read_bytes().replace(b"a.csv", b"") == second.read_bytes().replace(b"b.csv", b"")

    def test_manifest_command_reproduces_file(self, tmp_path):
        for args, name in [
            (["profile", "--prep", "square", "--halfwidth", "5", "--theta=-pi/2", "--times", "0,15"], "p.csv"),
            (["fidelity", "--prep", "gaussian", "--gwidth", "3.5", "--receiver", "25"], "f.csv"),
            (["maxcurve", "--prep", "square", "--halfwidth", "3", "--receiver", "20"], "m.csv"),
        ]:
            rc, out = run_to_file(tmp_path, name, args)
            assert rc == EXIT_OK
            original = out.read_bytes()
            lines = original.decode().splitlines()
            assert lines[0].startswith("# ringwave ")  # manifest heads the file
            command = lines[1].removeprefix("# command: ")
            tokens = shlex.split(command)[1:]  # drop the program name
            assert main(tokens) == EXIT_OK
            assert out.read_bytes() == original

    def test_float_format_full_precision(self, tmp_path):
        _, out = run_to_file(
            tmp_path, "f.csv", ["fidelity", "--prep", "atomic", "--receiver", "3", "--tmax", "1"]
        )
        manifest = out.read_text().splitlines()[1]
        assert "--dt 0.050000000000000003" in manifest


class TestValidateCommand:
    def test_clean_run_passes(self, capsys):
        assert main(["validate"]) == EXIT_OK
        text = capsys.readouterr().out
        assert "validation: PASS" in text

    def test_json_is_single_object_with_suite_booleans(self, capsys):
        assert main(["validate", "--json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert isinstance(payload, dict)
        assert payload["passed"] is True
        for suite in ("spectrum", "oracle", "bessel", "parseval_unitarity", "peak_times"):
            assert payload[suite] is True

    def test_phase_flip_mutation_is_caught(self, capsys):
        assert main(["validate", "--json", "--inject-phase-flip"]) == EXIT_VALIDATION
        payload = json.loads(capsys.readouterr().out)
        assert payload["spectrum"] is False
        assert payload["oracle"] is False
        assert payload["passed"] is False
        assert payload["bessel"] is True


class TestFigures:
    def test_each_report_renders_a_figure(self, tmp_path):
        jobs = [
            (["profile", "--prep", "square", "--halfwidth", "5", "--times", "0,10"], "p"),
            (["fidelity", "--prep", "atomic", "--receiver", "10", "--tmax", "15", "--analytic", "bessel"], "f"),
            (["maxcurve", "--prep", "square", "--halfwidth", "5", "--receiver", "20", "--receiver", "40"], "m"),
        ]
        for args, stem in jobs:
            figure = tmp_path / f"{stem}.png"
            rc = main(args + ["--out", str(tmp_path / f"{stem}.csv"), "--plot", str(figure)])
            assert rc == EXIT_OK
            assert figure.exists() and figure.stat().st_size > 1000
