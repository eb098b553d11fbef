"""Service endpoints: request models, reports, error mapping, determinism."""

from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from loopstrata.service.app import app
from loopstrata.service.models import SessionConfig
from loopstrata.service.ops import ConfigParse, build_session, run_command

client = TestClient(app)


def _cfg(**kw):
    base = {"cartan_type": "A", "rank": 1, "x": ["0"], "r": "0"}
    base.update(kw)
    return base


def test_health_lists_commands():
    r = client.get("/health")
    assert r.status_code == 200
    cmds = r.json()["commands"]
    for c in ("quotient", "jumps", "grade", "qmap", "strata", "destabilize", "deepen", "verify-basecase", "suite"):
        assert c in cmds


def test_quotient_endpoint():
    r = client.post("/quotient", json={"config": _cfg()})
    assert r.status_code == 200
    body = r.json()
    assert body["ok"] is True
    assert body["result"]["quotient"]["total_dim"] == 3
    assert body["config"]["cartan_type"] == "A"  # config embedded


def test_jumps_and_grade():
    r = client.post("/jumps", json={"config": _cfg(x=["1/2"])})
    assert r.json()["result"]["jumps"] == ["0", "1/2"]
    r = client.post("/grade", json={"config": _cfg(cartan_type="A", rank=2, twist="flip", x=["0"])})
    assert r.json()["result"]["components"] == {"0": 3, "1/2": 5}


def test_qmap_endpoint_running_example():
    req = {
        "config": _cfg(x=["1/2"], r="1/2"),
        "element": [
            {"alpha": [1], "level": "0", "basis_index": 0, "coeff": "1"},
            {"alpha": [-1], "level": "1", "basis_index": 0, "coeff": "1"},
        ],
    }
    r = client.post("/qmap", json=req)
    body = r.json()
    assert body["result"]["q"] == {"p2|1": "-1"}
    assert body["result"]["semisimple"] is True
    assert body["result"]["depth_bound"] is True


def test_destabilize_endpoint():
    req = {
        "config": _cfg(x=["1/2"], r="1/2"),
        "element": [{"alpha": [1], "level": "0", "basis_index": 0, "coeff": "1"}],
    }
    r = client.post("/destabilize", json=req)
    assert r.json()["result"] == {"y": ["1"], "sandwich": True}


def test_error_mapping():
    r = client.post("/quotient", json={"config": _cfg(x=["nope"])})
    assert r.status_code == 422
    assert r.json()["detail"]["error"] == "ConfigParse"
    r = client.post("/quotient", json={"config": _cfg(cartan_type="F", rank=4)})
    assert r.status_code == 400
    assert r.json()["detail"]["error"] == "UnsupportedType"
    r = client.post("/quotient", json={"config": _cfg(twist="flip")})  # A1 has no flip... A1 flip is identity
    assert r.status_code == 200
    r = client.post("/quotient", json={"config": _cfg(cartan_type="C", rank=2, twist="triality")})
    assert r.status_code == 400
    assert r.json()["detail"]["error"] == "NotADiagramSymmetry"
    r = client.post("/qmap", json={"config": _cfg()})
    assert r.status_code == 422  # missing element


def test_reports_are_deterministic():
    req = {"config": _cfg(cartan_type="A", rank=2, x=["1/3", "1/3"], r="1/3", sample_size=6)}
    a = client.post("/strata", json=req).text
    b = client.post("/strata", json=req).text
    assert a == b


def test_verify_basecase_endpoint_flags_ok():
    req = {"config": _cfg(x=["1/2"], r="1/2", sample_size=6)}
    r = client.post("/verify-basecase", json=req)
    body = r.json()
    assert body["ok"] is True
    assert body["result"]["passed"] is True
    assert body["result"]["counterexamples"] == []


def test_build_session_validation():
    with pytest.raises(ConfigParse):
        build_session(SessionConfig(cartan_type="A", rank=2, x=["0"]))  # short x
    with pytest.raises(ConfigParse):
        build_session(SessionConfig(twist="mystery"))
    ses = build_session(SessionConfig(cartan_type="A", rank=1, x=["0"], r="1/2"))
    assert ses.depth_cap == ses.r + 2


def test_run_command_unknown():
    with pytest.raises(ConfigParse):
        run_command("frobnicate", SessionConfig())
