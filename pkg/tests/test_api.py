import pytest
from fastapi.testclient import TestClient

from api.app import app
from satcsp_core.csp_format import write_csp
from satcsp_core.dimacs import parse_dimacs, write_dimacs

client = TestClient(app)


def test_health():
    r = client.get("/health")
    assert r.status_code == 200
    body = r.json()
    assert body["status"] == "ok"
    assert {"dual", "hidden", "literal", "direct", "log", "support"} <= set(body["encodings"])


def test_encode_returns_output_and_map(neq2):
    r = client.post("/encode", json={"source": "csp", "encoding": "support", "instance": write_csp(neq2)})
    assert r.status_code == 200
    body = r.json()
    assert parse_dimacs(body["output"]).num_vars == 4
    assert body["map"]["encoding"] == "support"


def test_solve_validates_against_oracle(xor_square):
    r = client.post("/solve", json={"solver": "dp", "instance": write_dimacs(xor_square), "validate": True})
    assert r.status_code == 200
    body = r.json()
    assert (body["status"], body["oracle_status"], body["valid"]) == ("unsat", "unsat", True)


def test_propagate_gac(chain3):
    r = client.post("/propagate", json={"method": "gac", "instance": write_csp(chain3)})
    assert r.status_code == 200
    assert r.json()["domains"] == {"0": ["1"], "1": ["2"], "2": ["3"]}


def test_gen_with_seed():
    r = client.post("/gen", json={"kind": "ksat", "vars": 4, "clauses": 2, "width": 2, "seed": 3})
    assert r.status_code == 200
    assert len(parse_dimacs(r.json()["instance"]).clauses) == 2


@pytest.mark.parametrize("path,payload", [
    ("/solve", {"solver": "dp", "instance": "p cnf 1 1\n5 0\n"}),
    ("/encode", {"source": "sat", "encoding": "direct", "instance": "p cnf 1 0\n"}),
    ("/propagate", {"method": "ac3", "instance": "{not json"}),
    ("/gen", {"kind": "ksat", "vars": 2, "width": 3, "seed": 1}),
])
def test_bad_input_is_422(path, payload):
    assert client.post(path, json=payload).status_code == 422
