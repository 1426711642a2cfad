import json
import os
import subprocess
import sys

import pytest

from chikit import cli


def run_json(args, capsys):
    code = cli.run(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_shuffle_single(capsys):
    code, out, err = run_json(["shuffle", "--m", "2", "--n", "3"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["pass"] is True and data["summary"] == {"total": 1, "failed": 0}
    rep = data["reports"][0]
    assert set(rep) == {"statement", "paper_ref", "params", "pass", "details"}
    assert rep["params"]["m"] == 2 and rep["params"]["n"] == 3
    assert "PASS" in err


@pytest.mark.parametrize("args", [
    ["shuffle", "--m", "-1", "--n", "2"],
    ["nonsense"],
    ["shuffle", "--m", "2"],
    ["e1", "--p-max", "0"],
    ["shuffle", "--format", "xml"],
    ["shuffle", "--config", "/nonexistent/file"],
    ["co-leibniz", "--m", "0", "--n", "0"],
])
def test_usage_errors_exit_2(args, capsys):
    assert cli.run(args) == 2
    assert "error" in capsys.readouterr().err


def test_bad_config_key(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("frobnicate = 3\n")
    assert cli.run(["shuffle", "--config", str(cfg)]) == 2
    cfg.write_text("seed = abc\n")
    assert cli.run(["shuffle", "--config", str(cfg)]) == 2
    cfg.write_text("no equals sign\n")
    assert cli.run(["shuffle", "--config", str(cfg)]) == 2


def test_inject_failure_exit_1(capsys):
    code, out, _ = run_json(["shuffle", "--max-size", "3", "--inject-failure"], capsys)
    assert code == 1
    data = json.loads(out)
    failed = [r for r in data["reports"] if not r["pass"]]
    assert len(failed) == 1
    assert failed[0]["params"]["injected_failure"] is True
    assert data["config"]["inject_failure"] is True


@pytest.mark.parametrize("suite", ["coassoc", "theta-pullback", "brion", "e1", "constants",
                                   "leibniz", "dsq", "cone-claim"])
def test_inject_failure_every_suite(suite, capsys):
    args = [suite, "--max-size", "3", "--count", "20", "--p-max", "6", "--inject-failure"]
    assert cli.run(args) == 1


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# comment\nmax_size = 2\nseed = 5\nformat = json\n")
    code, out, _ = run_json(["shuffle", "--config", str(cfg), "--seed", "9"], capsys)
    assert code == 0
    conf = json.loads(out)["config"]
    assert conf["max_size"] == 2 and conf["seed"] == 9
    assert "threads" not in conf and "output" not in conf


def test_text_format_and_output_file(tmp_path, capsys):
    dest = tmp_path / "rep.txt"
    assert cli.run(["theta-pullback", "--max-size", "3", "--format", "text",
                    "--output", str(dest)]) == 0
    lines = dest.read_text().splitlines()
    assert lines[0].startswith("chi-kit ")
    assert sum(l.startswith("PASS") for l in lines) == 3
    assert lines[-1] == "overall: PASS (3/3 passed)"
    assert capsys.readouterr().out == ""


def test_statement_map(tmp_path, capsys):
    mp = tmp_path / "map.txt"
    mp.write_text("tot.e1_page = where the page lives\n")
    code, out, _ = run_json(["e1", "--p-max", "4", "--statement-map", str(mp)], capsys)
    data = json.loads(out)
    assert data["reports"][0]["paper_ref"] == "where the page lives"
    assert data["statement_table"] == {"tot.e1_page": "where the page lives"}


def test_timings_only_on_request(capsys):
    _, out, _ = run_json(["constants"], capsys)
    data = json.loads(out)
    assert "wall_ms" not in data and "elapsed_ms" not in data["reports"][0]
    _, out, _ = run_json(["constants", "--timings"], capsys)
    data = json.loads(out)
    assert data["wall_ms"] >= 0 and data["reports"][0]["elapsed_ms"] >= 0


def test_deterministic_across_threads(capsys):
    args = ["all", "--max-size", "3", "--count", "30", "--p-max", "8"]
    _, one, _ = run_json(args + ["--threads", "1"], capsys)
    _, two, _ = run_json(args + ["--threads", "2"], capsys)
    assert one == two
    assert json.loads(one)["pass"] is True


def test_thread_cap_env(monkeypatch, capsys):
    monkeypatch.setenv("CHI_KIT_THREADS", "1")
    assert cli.run(["theta-pullback", "--max-size", "2", "--threads", "8"]) == 0
    monkeypatch.setenv("CHI_KIT_THREADS", "many")
    assert cli.run(["theta-pullback", "--max-size", "2"]) == 2


def test_console_script_and_version():
    exe = [sys.executable, "-m", "chikit.cli"]
    out = subprocess.run(exe + ["--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("chi-kit ")
    res = subprocess.run(exe + ["ez-diagram", "--max-size", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["pass"] is True
