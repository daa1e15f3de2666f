from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from g2sugawara.cli import run

REQUIRED = {
    "schema_version",
    "command",
    "inputs",
    "ok",
    "residue_summary",
    "term_count_peak",
    "wall_time_ms",
    "engine_version",
    "order_used",
}


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def cert_of(*argv):
    code, out, _ = call(*argv)
    return code, json.loads(out)


@pytest.mark.parametrize(
    "argv",
    [
        ["structure-constants"],
        ["tensor-ops"],
        ["verify-chevalley"],
        ["verify-casimir", "--max-degree", "3"],
        ["verify-ss", "--vector", "s2"],
        ["verify-corollary"],
        ["miura"],
        ["hc-image", "--vector", "s3"],
        ["screenings", "--target", "w4"],
        ["screenings", "--target", "s2"],
        ["shift-commute", "--mu", "1,2", "--pairs", "b-pairs"],
        ["selftest", "--quick"],
    ],
)
def test_subcommands_succeed(argv):
    code, cert = cert_of(*argv)
    assert code == 0
    assert REQUIRED <= set(cert)
    assert cert["ok"] is True
    assert cert["schema_version"] == "1.0.0"
    assert cert["command"] == argv[0]


def test_mutation_exit_code():
    code, cert = cert_of("verify-ss", "--vector", "s6", "--probe", "g11-1", "--mutate")
    assert code == 1
    assert cert["ok"] is False
    assert cert["residue_summary"]
    assert cert["probes"][0]["residue"]


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["verify-ss"],
        ["verify-ss", "--vector", "s9"],
        ["verify-ss", "--vector", "s2", "--mutate"],
        ["screenings", "--target", "w9"],
        ["shift-commute", "--mu", "1,1"],
        ["shift-commute", "--mu", "1;2"],
        ["miura", "--threads", "0"],
        ["miura", "--output", "xml"],
    ],
)
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_gaudin_config_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"ell": 1, "z": ["0"], "lambda": [["1", "zz"]]}))
    code, _, err = call("gaudin", "--config", str(bad), "--vector", "s2")
    assert code == 2
    assert "lambda[0][1]" in err
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert call("gaudin", "--config", str(broken), "--vector", "s2")[0] == 2
    assert call("gaudin", "--config", str(tmp_path / "missing.json"), "--vector", "s2")[0] == 2


def test_gaudin_certificate(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"ell": 1, "z": ["0"], "lambda": [["2", "3"]]}))
    code, cert = cert_of("gaudin", "--config", str(cfg), "--vector", "s2")
    assert code == 0
    assert cert["operator_check"]["ok"] is True
    assert cert["order_used"] == "VERMA"
    bethe = tmp_path / "b.json"
    bethe.write_text(
        json.dumps({"ell": 1, "z": ["0"], "lambda": [["3", "0"]], "mu": ["2", "0"], "bethe": [{"w": "3/2", "label": 1}]})
    )
    code, cert = cert_of("gaudin", "--config", str(bethe), "--vector", "s3")
    assert code == 0
    assert cert["bethe_residuals"] == ["0/1"]
    bethe.write_text(
        json.dumps({"ell": 1, "z": ["0"], "lambda": [["3", "0"]], "mu": ["2", "0"], "bethe": [{"w": "2", "label": 1}]})
    )
    code, cert = cert_of("gaudin", "--config", str(bethe), "--vector", "s3")
    assert code == 1


def _strip_time(text: str) -> str:
    return "\n".join(line for line in text.splitlines() if "wall_time_ms" not in line)


def test_output_is_deterministic():
    first = call("hc-image", "--vector", "s4")[1]
    second = call("hc-image", "--vector", "s4")[1]
    assert _strip_time(first) == _strip_time(second)
    assert json.loads(first) == json.loads(json.dumps(json.loads(first), sort_keys=True))


def test_threads_do_not_change_content(monkeypatch):
    one = json.loads(call("verify-casimir", "--max-degree", "3", "--threads", "1")[1])
    two = json.loads(call("verify-casimir", "--max-degree", "3", "--threads", "2")[1])
    monkeypatch.setenv("G2S_THREADS", "2")
    env = json.loads(call("verify-casimir", "--max-degree", "3")[1])
    for cert in (one, two, env):
        cert.pop("wall_time_ms")
    assert one == two == env


def test_bad_thread_env(monkeypatch):
    monkeypatch.setenv("G2S_THREADS", "many")
    assert call("miura")[0] == 2


def test_text_output():
    code, out, _ = call("verify-ss", "--vector", "s3", "--output", "text")
    assert code == 0
    assert out.startswith("verify-ss: ok")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "g2sugawara", "verify-chevalley"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"] is True
    proc = subprocess.run([sys.executable, "-m", "g2sugawara", "nope"], capture_output=True, text=True, check=False)
    assert proc.returncode == 2
