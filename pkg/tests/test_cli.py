import json

import pytest

from quadcruise.cli import (EXIT_CONFIG, EXIT_DIVERGED, EXIT_OK, main)
from quadcruise.simulation import LOG_COLUMNS

HOVER_CFG = """\
trajectory = hover
duration = 1.0
dt = 0.001
altitude = 1.0
"""


def write_cfg(tmp_path, text, name="scenario.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestGains:
    def test_default_pole_pair(self, capsys):
        assert main(["gains", "0.7", "4.3"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "Kp = 3.01" in out
        assert "Kd = 5" in out
        assert "tau_d = 1.66113" in out
        # the prediction trace runs long enough for the final value to be
        # the true steady state, so overshoot is against exactly 1.0
        assert "predicted overshoot = 8.036 %" in out
        assert "predicted 5%-settling = 1.932 s" in out

    def test_repeated_pole(self, capsys):
        assert main(["gains", "2", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "Kp = 4" in out
        assert "Kd = 4" in out

    def test_bad_pole_rejected(self, capsys):
        assert main(["gains", "0", "1"]) == EXIT_CONFIG
        assert capsys.readouterr().err.startswith("error:")


class TestSimulate:
    def test_happy_path_artifacts(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, HOVER_CFG)
        out = tmp_path / "out"
        rc = main(["simulate", "--scenario", str(cfg), "--out", str(out)])
        assert rc == EXIT_OK
        for name in ("log.csv", "metrics.txt", "plot.gnu", "manifest.json"):
            assert (out / name).exists()
        stdout = capsys.readouterr().out
        assert "tracking.rms_error_m" in stdout

    def test_csv_schema(self, tmp_path):
        cfg = write_cfg(tmp_path, HOVER_CFG)
        out = tmp_path / "out"
        main(["simulate", "--scenario", str(cfg), "--out", str(out)])
        lines = (out / "log.csv").read_text().splitlines()
        assert lines[0] == ",".join(LOG_COLUMNS)
        assert len(lines) == 1 + 1001  # header + samples for 1 s at 1 ms
        for line in lines[1:3]:
            assert len(line.split(",")) == len(LOG_COLUMNS)

    def test_reruns_are_byte_identical(self, tmp_path):
        cfg = write_cfg(tmp_path, HOVER_CFG)
        a, b = tmp_path / "a", tmp_path / "b"
        main(["simulate", "--scenario", str(cfg), "--out", str(a)])
        main(["simulate", "--scenario", str(cfg), "--out", str(b)])
        assert (a / "log.csv").read_bytes() == (b / "log.csv").read_bytes()
        assert (a / "metrics.txt").read_bytes() == (
            b / "metrics.txt").read_bytes()

    def test_manifest_records_config(self, tmp_path):
        cfg = write_cfg(tmp_path, HOVER_CFG)
        out = tmp_path / "out"
        main(["simulate", "--scenario", str(cfg), "--out", str(out)])
        doc = json.loads((out / "manifest.json").read_text())
        assert doc["tool"] == "quadcruise"
        assert doc["config"]["trajectory"] == "hover"
        assert doc["config"]["dt"] == 0.001
        assert len(doc["config_checksum"]) == 64
        assert doc["artifacts"]["log"] == "log.csv"

    def test_flag_overrides_config(self, tmp_path):
        cfg = write_cfg(tmp_path, HOVER_CFG)
        out = tmp_path / "out"
        main(["simulate", "--scenario", str(cfg), "--out", str(out),
              "--duration", "0.5"])
        doc = json.loads((out / "manifest.json").read_text())
        assert doc["config"]["duration"] == 0.5
        lines = (out / "log.csv").read_text().splitlines()
        assert len(lines) == 1 + 501

    def test_zero_dt_is_config_error(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, HOVER_CFG)
        rc = main(["simulate", "--scenario", str(cfg),
                   "--out", str(tmp_path / "out"), "--dt", "0"])
        assert rc == EXIT_CONFIG
        assert capsys.readouterr().err.startswith("error:")

    def test_missing_scenario_file(self, tmp_path, capsys):
        rc = main(["simulate", "--scenario", str(tmp_path / "nope.cfg"),
                   "--out", str(tmp_path / "out")])
        assert rc == EXIT_CONFIG
        assert capsys.readouterr().err.startswith("error:")

    def test_unknown_key_in_scenario(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, "druation = 5\n")
        rc = main(["simulate", "--scenario", str(cfg),
                   "--out", str(tmp_path / "out")])
        assert rc == EXIT_CONFIG
        assert "error:" in capsys.readouterr().err

    def test_divergence_exit_code(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, "duration = 10\ndt = 0.5\n"
                                  "attitude_step.roll = 0.2\n")
        rc = main(["simulate", "--scenario", str(cfg),
                   "--out", str(tmp_path / "out")])
        assert rc == EXIT_DIVERGED
        assert capsys.readouterr().err.startswith("error:")


class TestStepTest:
    def test_metric_report(self, tmp_path, capsys):
        out = tmp_path / "out"
        rc = main(["step-test", "--out", str(out), "--dt", "0.002"])
        assert rc == EXIT_OK
        text = (out / "metrics.txt").read_text()
        assert "step.x.rise_time_s" in text
        assert "step.x.overshoot_pct" in text
        assert "target.rise_time_max_s = 2.0" in text
        doc = json.loads((out / "manifest.json").read_text())
        assert doc["config"]["trajectory"] == "step"
        assert doc["config"]["step.x"] == 1.0


class TestCompare:
    def test_three_variant_table(self, tmp_path, capsys):
        rc = main(["compare", "--step-x", "0.2", "--duration", "6",
                   "--dt", "0.002", "--out", str(tmp_path / "out")])
        assert rc == EXIT_OK
        out = capsys.readouterr().out
        lines = out.splitlines()
        assert lines[0].startswith("variant")
        for name in ("nlpd/dec-on", "nlpd/dec-off", "linpd/dec-on"):
            assert any(line.startswith(name) for line in lines)


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.startswith("quadcruise ")


def test_module_entry_point():
    import quadcruise.__main__  # noqa: F401  (import must not execute main)
