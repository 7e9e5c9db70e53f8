import csv
import io
import json
from pathlib import Path

import pytest

from app_cli.cli import run_cli
from satcsp_core.csp_format import parse_csp, write_csp
from satcsp_core.dimacs import parse_dimacs, write_dimacs
from satcsp_core.types import Cnf

SHIPPED = Path(__file__).resolve().parents[1] / "satcsp_core" / "data" / "calibration.json"


@pytest.fixture
def files(tmp_path, xor_square, neq2, chain3):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)
    return {
        "xor": put("xor.cnf", write_dimacs(xor_square)),
        "chain": put("chain.cnf", write_dimacs(Cnf(2, ((1,), (-1, 2))))),
        "neq": put("neq.json", write_csp(neq2)),
        "lt": put("lt.json", write_csp(chain3)),
    }


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_encode_sat_to_csp_writes_sidecar(tmp_path, files):
    out = tmp_path / "xor.json"
    assert run_cli(["encode", "--from", "sat", "--to", "csp", "--encoding", "hidden", files["xor"], "-o", str(out)]) == 0
    p = parse_csp(out.read_text(encoding="utf-8"))
    assert len(p.variables) == 6
    side = json.loads((tmp_path / "xor.json.map.json").read_text(encoding="utf-8"))
    assert (side["direction"], side["encoding"]) == ("sat_to_csp", "hidden")


def test_encode_csp_to_sat_amo(tmp_path, files):
    plain, amo = tmp_path / "plain.cnf", tmp_path / "amo.cnf"
    base = ["encode", "--from", "csp", "--to", "sat", "--encoding", "direct", files["neq"]]
    assert run_cli(base + ["-o", str(plain)]) == 0
    assert run_cli(base + ["--amo", "pairwise", "-o", str(amo), "--map", str(tmp_path / "m.json")]) == 0
    f, g = (parse_dimacs(x.read_text(encoding="utf-8")) for x in (plain, amo))
    assert f.num_vars == g.num_vars == 4
    assert len(g.clauses) == len(f.clauses) + 2
    assert (tmp_path / "m.json").exists()


def test_encode_rejects_mismatched_encoding(tmp_path, files, capsys):
    code = run_cli(["encode", "--from", "sat", "--to", "csp", "--encoding", "log", files["xor"], "-o", str(tmp_path / "x")])
    assert code == 2
    assert "not a SAT->CSP encoding" in capsys.readouterr().err
    assert run_cli(["encode", "--from", "sat", "--to", "sat", "--encoding", "dual", files["xor"], "-o", "-"]) == 2


def test_solve_dp_with_oracle(files, capsys):
    assert run_cli(["solve", "--solver", "dp", "--validate", files["xor"]]) == 0
    out = _json_out(capsys)
    assert (out["status"], out["oracle_status"]) == ("unsat", "unsat")
    assert (out["decisions_total"], out["failed_leaves"], out["model"]) == (2, 2, None)


def test_solve_from_stdin(monkeypatch, capsys, xor_square):
    monkeypatch.setattr("sys.stdin", io.StringIO(write_dimacs(Cnf(2, ((1,), (-1, 2))))))
    assert run_cli(["solve", "--solver", "dp", "-"]) == 0
    out = _json_out(capsys)
    assert out["model"] == [1, 2] and out["decisions_total"] == 0


def test_solve_mac(files, capsys):
    assert run_cli(["solve", "--solver", "mac", files["neq"]]) == 0
    out = _json_out(capsys)
    assert out["status"] == "sat"
    assert out["solution"] == {"0": "1", "1": "2"}


def test_propagate(files, capsys):
    assert run_cli(["propagate", "--method", "up", files["chain"]]) == 0
    out = _json_out(capsys)
    assert (out["conflict"], out["forced"], out["fixpoint"]) == (False, [1, 2], [1, 2])

    assert run_cli(["propagate", "--method", "ac3", files["lt"]]) == 0
    out = _json_out(capsys)
    assert out["wipeout"] is False
    assert out["pruned"] == [[0, "2"], [0, "3"], [1, "1"], [1, "3"], [2, "1"], [2, "2"]]
    assert out["domains"] == {"0": ["1"], "1": ["2"], "2": ["3"]}


def test_gen_is_seeded(tmp_path):
    a, b = tmp_path / "a.cnf", tmp_path / "b.cnf"
    for out in (a, b):
        assert run_cli(["gen", "--kind", "ksat", "--vars", "5", "--clauses", "3", "--seed", "7", "-o", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()
    f = parse_dimacs(a.read_text(encoding="utf-8"))
    assert f.num_vars == 5 and len(f.clauses) == 3

    c = tmp_path / "c.json"
    assert run_cli(["gen", "--kind", "bincsp", "--vars", "3", "--constraints", "2", "--domain", "3",
                    "--seed", "1", "-o", str(c)]) == 0
    assert len(parse_csp(c.read_text(encoding="utf-8")).constraints) == 2


def test_gen_needs_seed(tmp_path, monkeypatch):
    monkeypatch.delenv("SATCSP_SEED", raising=False)
    monkeypatch.chdir(tmp_path)
    assert run_cli(["gen", "--kind", "ksat", "--vars", "5", "-o", "x.cnf"]) == 2


def test_verify_t1(tmp_path):
    report = tmp_path / "out" / "report.csv"
    code = run_cli(["verify", "--claims", "T1", "--max-vars", "2", "--max-clauses", "4", "--max-width", "2",
                    "--report", str(report)])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(report.read_text(encoding="utf-8"))))
    assert len(rows) == 1
    assert (rows[0]["claim_id"], rows[0]["instances"], rows[0]["pass"]) == ("T1", "165", "true")


def test_verify_with_frozen_calibration(tmp_path):
    report = tmp_path / "report.json"
    code = run_cli(["verify", "--claims", "T6", "--max-vars", "2", "--max-clauses", "2", "--max-width", "2",
                    "--calibration", str(SHIPPED), "--report", str(report)])
    assert code == 0
    (t6,) = json.loads(report.read_text(encoding="utf-8"))["claims"]
    assert t6["violations"] == 0
    assert "calibrated on T6" in t6["notes"][0]


def test_frozen_calibration_is_completed_in_process(tmp_path):
    report = tmp_path / "report.json"
    code = run_cli(["verify", "--claims", "T4,T6", "--max-vars", "2", "--max-clauses", "2", "--max-width", "2",
                    "--calibration", str(SHIPPED), "--report", str(report)])
    assert code in (0, 1)
    t4, t6 = json.loads(report.read_text(encoding="utf-8"))["claims"]
    assert "calibrated on T4" in t4["notes"][0]
    assert "calibrated on T6" in t6["notes"][0]


SMALL_VERIFY = ["verify", "--claims", "all", "--max-vars", "2", "--max-clauses", "3", "--max-width", "2",
                "--csp-vars", "2", "--max-domain", "2"]


def test_verify_reports_are_byte_identical(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    code_a = run_cli(SMALL_VERIFY + ["--report", str(first)])
    code_b = run_cli(SMALL_VERIFY + ["--report", str(second), "--jobs", "2"])
    assert code_a == code_b
    assert first.read_bytes() == second.read_bytes()


@pytest.mark.slow
def test_verify_all_on_default_family_exits_0(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli(["verify", "--claims", "all", "--report", str(first)]) == 0
    assert run_cli(["verify", "--claims", "all", "--report", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    rows = list(csv.DictReader(io.StringIO(first.read_text(encoding="utf-8"))))
    assert {r["claim_id"] for r in rows if r["pass"] != "true"} <= {"T3"}


def test_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.cnf"
    bad.write_text("p cnf 1 1\n2 0\n", encoding="utf-8")
    assert run_cli(["solve", "--solver", "dp", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err
    assert run_cli(["solve", "--solver", "dp", str(tmp_path / "missing.cnf")]) == 2
    assert run_cli(["verify", "--claims", "T99", "--report", "-"]) == 2
    assert run_cli(["solve", "--bogus"]) == 2
