"""
Test the holoscope command line end to end
"""
import json

import pytest

from cli.emit import read_series
from cli.main import run_command
from lib.result_cache import result_cache


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_entropy_of_strip(capsys):
    code, out, _ = run(capsys, "entropy", "--length", "1", "--eps", "0.01")
    assert code == 0
    assert out.startswith("S = 9.210340 ")


def test_entropy_black_brane_default_horizon(capsys):
    code, out, _ = run(capsys, "entropy", "--geometry", "black_brane", "--length", "1")
    assert code == 0
    assert out.startswith("S = 9.292990 ")


def test_mutual_information(capsys):
    code, out, _ = run(capsys, "mi", "--lengths", "1,1", "--gap", "0.1")
    assert code == 0
    assert out.startswith("I = 3.121295 (connected")


def test_mi_needs_two_intervals(capsys):
    code, _, err = run(capsys, "mi", "--lengths", "1,1,1", "--gap", "0.1")
    assert code == 2
    assert err.startswith("error:")


def test_tripartite(capsys):
    code, out, _ = run(capsys, "i3", "--intervals", "0:1,1.1:2.1,2.2:3.2")
    assert code == 0
    assert "-0.641448" in out


def test_transition(capsys):
    code, out, _ = run(capsys, "transition", "--lengths", "1,1", "--bracket", "0.1,1.0")
    assert code == 0
    assert "0.414214" in out


def test_transition_bad_bracket(capsys):
    code, _, err = run(capsys, "transition", "--lengths", "1,1", "--bracket", "0.5,1.0")
    assert code == 2
    assert "same phase" in err


def test_invalid_geometry_exits_2(capsys):
    code, _, err = run(capsys, "entropy", "--geometry", "black_brane", "--z-h", "-1", "--length", "1")
    assert code == 2
    assert err.startswith("error:")


@pytest.mark.parametrize("four_g_n", ["0", "-1"])
def test_non_positive_newton_constant_exits_2(capsys, four_g_n):
    code, out, err = run(capsys, "entropy", "--length", "1", "--four-g-n", four_g_n)
    assert code == 2
    assert out == ""
    assert "invalid configuration" in err


def test_node_count_without_doubling_room_exits_2(capsys):
    code, out, err = run(capsys, "entropy", "--length", "1", "--nodes", "40000")
    assert code == 2
    assert out == ""
    assert "invalid configuration" in err
    assert "node_count=40000" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "scan", "--lengths", "1,1")[0] == 2


def test_invalid_sweep_exits_2(capsys):
    code, _, err = run(capsys, "scan", "--lengths", "1,1", "--start", "0.1", "--stop", "1", "--steps", "0")
    assert code == 2
    assert "at least 2 steps" in err

    code, _, err = run(capsys, "scan", "--lengths", "1,1", "--parameter", "horizon",
                       "--start", "0.5", "--stop", "2", "--steps", "4")
    assert code == 2
    assert "black_brane" in err


def test_all_points_failing_exits_3(capsys):
    code, _, err = run(capsys, "scan", "--lengths", "1,1", "--start", "0.001", "--stop", "0.005", "--steps", "3")
    assert code == 3
    assert "sweep points failed" in err


def test_scan_is_deterministic(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    argv = ["scan", "--lengths", "1,1", "--start", "0.1", "--stop", "1.0", "--steps", "10", "--out", str(out)]
    assert run(capsys, *argv)[0] == 0
    first = out.read_bytes()
    assert run(capsys, *argv)[0] == 0
    assert out.read_bytes() == first

    records, metadata = read_series(out)
    assert len(records) == 10
    assert metadata["command"] == "scan"
    assert metadata["config"]["cutoff"] == 0.01
    assert metadata["config"]["central_charge"] == 6.0


def test_cached_scan_matches_uncached(tmp_path, capsys):
    plain, cached = tmp_path / "plain.csv", tmp_path / "cached.csv"
    argv = ["scan", "--geometry", "black_brane", "--lengths", "1,1",
            "--start", "0.1", "--stop", "0.5", "--steps", "5", "--measures", "mi,entropy"]
    cache = ["--cache", str(tmp_path / "cache.jsonl")]
    assert run(capsys, *argv, "--out", str(plain))[0] == 0
    assert run(capsys, *argv, *cache, "--out", str(cached))[0] == 0
    assert run(capsys, *argv, *cache, "--out", str(cached))[0] == 0

    assert read_series(plain)[0] == read_series(cached)[0]
    assert (tmp_path / "cache.jsonl").stat().st_size > 0
    assert not result_cache.connected


def test_scan_with_rate(tmp_path, capsys):
    out = tmp_path / "rate.csv"
    code, _, _ = run(capsys, "scan", "--parameter", "length", "--length", "1", "--start", "1",
                     "--stop", "2", "--steps", "21", "--measures", "entropy", "--rate", "entropy",
                     "--out", str(out))
    assert code == 0
    records, _ = read_series(out)
    for r in records[1:-1]:
        assert r.rate == pytest.approx(2.0 / r.parameter_value, rel=1e-3)


def test_json_output(tmp_path, capsys):
    out = tmp_path / "mi.json"
    code, _, _ = run(capsys, "mi", "--lengths", "1,1", "--gap", "0.1", "--format", "json", "--out", str(out))
    assert code == 0
    rows = json.loads(out.read_text())
    assert rows[0]["mi"] == pytest.approx(3.121295, abs=1e-6)
    meta = json.loads((tmp_path / "mi.json.meta.json").read_text())
    assert meta["command"] == "mi"
    assert meta["config"]["geometry"]["kind"] == "pure_ads"


def test_config_file_and_flag_override(tmp_path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({
        "geometry": {"kind": "black_brane", "z_h": 1.0},
        "cutoff": 0.1,
        "command": {"length": 1.0},
    }))
    code, out, _ = run(capsys, "entropy", "--config", str(config))
    assert code == 0
    assert out.startswith("S = 4.687820 ")

    code, out, _ = run(capsys, "entropy", "--config", str(config), "--eps", "0.01")
    assert code == 0
    assert out.startswith("S = 9.292990 ")


def test_config_file_rejects_unknown_keys(tmp_path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"geometry": {"kind": "pure_ads"}, "colour": "red"}))
    code, _, err = run(capsys, "entropy", "--config", str(config), "--length", "1")
    assert code == 2
    assert "invalid configuration" in err


def test_metadata_reports_central_charge(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "entropy", "--length", "1", "--four-g-n", "2", "--L", "2", "--out", str(out))
    assert code == 0
    _, metadata = read_series(out)
    assert metadata["config"]["central_charge"] == 6.0
    assert metadata["config"]["units"]["four_G_N"] == 2.0
