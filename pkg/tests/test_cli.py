"""CLI: flags, exit codes, JSON reports, remote mode plumbing."""

from __future__ import annotations

import json

from loopstrata.cli import EXIT_CONFIG, EXIT_OK, EXIT_PROPERTY, EXIT_UNSUPPORTED, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_quotient_ok(capsys):
    code, out, _ = run_cli(capsys, "quotient", "--type", "A", "--rank", "1", "--x", "0", "--r", "0")
    assert code == EXIT_OK
    body = json.loads(out)
    assert body["result"]["quotient"]["total_dim"] == 3
    assert body["config"]["r"] == "0"


def test_exit_codes(capsys):
    code, _, err = run_cli(capsys, "quotient", "--type", "A", "--rank", "1", "--x", "zzz", "--r", "0")
    assert code == EXIT_CONFIG and "ConfigParse" in err
    code, _, err = run_cli(capsys, "quotient", "--type", "E", "--rank", "8", "--x", "0", "--r", "0")
    assert code == EXIT_UNSUPPORTED and "UnsupportedType" in err
    code, _, err = run_cli(capsys, "quotient", "--type", "C", "--rank", "2", "--twist", "triality", "--x", "0,0", "--r", "0")
    assert code == EXIT_UNSUPPORTED and "NotADiagramSymmetry" in err


def test_element_and_qmap(capsys):
    element = json.dumps(
        [
            {"alpha": [1], "level": "0", "basis_index": 0, "coeff": "1"},
            {"alpha": [-1], "level": "1", "basis_index": 0, "coeff": "1"},
        ]
    )
    code, out, _ = run_cli(
        capsys, "qmap", "--type", "A", "--rank", "1", "--x", "1/2", "--r", "1/2",
        "--element", element,
    )
    assert code == EXIT_OK
    assert json.loads(out)["result"]["q"] == {"p2|1": "-1"}


def test_json_output_and_determinism(tmp_path, capsys):
    path = tmp_path / "report.json"
    args = (
        "strata", "--type", "A", "--rank", "2", "--twist", "flip",
        "--x", "0", "--r", "1/2", "--samples", "6", "--json", str(path),
    )
    code, out1, _ = run_cli(capsys, *args)
    assert code == EXIT_OK
    saved = path.read_text()
    assert saved.strip() == out1.strip()
    code, out2, _ = run_cli(capsys, *args)
    assert out1 == out2  # byte-identical reports


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"cartan_type": "A", "rank": 1, "x": ["0"], "r": "0"}))
    code, out, _ = run_cli(capsys, "jumps", "--config", str(cfg), "--x", "1/2")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["jumps"] == ["0", "1/2"]


def test_verify_basecase_exit_code(capsys):
    code, out, _ = run_cli(
        capsys, "verify-basecase", "--type", "A", "--rank", "1",
        "--x", "1/2", "--r", "1/2", "--samples", "6",
    )
    assert code == EXIT_OK
    assert json.loads(out)["result"]["passed"] is True


def test_remote_mode_against_test_server(capsys, monkeypatch):
    """--server goes through HTTP; run it against the in-process app."""
    import httpx
    from fastapi.testclient import TestClient

    from loopstrata.service.app import app

    tc = TestClient(app)

    def fake_post(url, json=None, timeout=None):
        path = "/" + url.rstrip("/").rsplit("/", 1)[1]
        return tc.post(path, json=json)

    monkeypatch.setattr(httpx, "post", fake_post)
    code, out, _ = run_cli(
        capsys, "quotient", "--type", "A", "--rank", "1", "--x", "0", "--r", "0",
        "--server", "http://testserver",
    )
    assert code == EXIT_OK
    assert json.loads(out)["result"]["quotient"]["total_dim"] == 3
    code, _, err = run_cli(
        capsys, "quotient", "--type", "A", "--rank", "1", "--x", "bad", "--r", "0",
        "--server", "http://testserver",
    )
    assert code == EXIT_CONFIG
