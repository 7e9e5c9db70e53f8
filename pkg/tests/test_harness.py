from pathlib import Path

import pytest

from satcsp_core.claims import CLAIMS, ClaimSettings, claim_sort_key
from satcsp_core.dimacs import write_dimacs
from satcsp_core.errors import SatCspError
from satcsp_core.harness import (CALIBRATED, Calibration, SuiteCache, SuiteSpec, calibrate_branch_convention,
                                 candidate_settings, run_claim, verify_all, verify_claim)
from satcsp_core.types import Cnf, Csp

from conftest import D2, D3, allows

SHIPPED = Path(__file__).resolve().parents[1] / "satcsp_core" / "data" / "calibration.json"

TINY = SuiteSpec("exhaustive", max_vars=2, max_clauses=2, max_width=2, csp_vars=2, max_domain=2)
SMALL = SuiteSpec("exhaustive", max_vars=2, max_clauses=4, max_width=2, csp_vars=2, max_domain=2)


@pytest.fixture(scope="module")
def small_sat():
    return SuiteCache(SMALL).get("sat")


def _lt(d):
    return [(a, b) for a in d for b in d if a < b]


def test_t1_passes_with_strict_witness(small_sat):
    r = verify_claim(CLAIMS["T1"], small_sat)
    assert r.instances == len(small_sat) == 165
    assert r.violations == 0
    assert r.strict_witnesses > 0
    assert r.passed


def test_t2_holds_on_small_family(small_sat):
    r = verify_claim(CLAIMS["T2"], small_sat)
    assert r.violations == 0 and r.passed


def test_t6_holds_under_failed_leaves():
    suite = SuiteCache(TINY).get("sat")
    r = verify_claim(CLAIMS["T6"], suite)
    assert r.violations == 0
    assert "uncalibrated" in r.notes[0]


def test_t3_is_reported_not_asserted(small_sat):
    r = verify_claim(CLAIMS["T3"], small_sat)
    assert not CLAIMS["T3"].asserted
    assert r.notes[-1].startswith("observed relation:")


def test_t8_on_handpicked_witnesses(chain3):
    suite = [
        Csp.build([D2] * 3, [allows(0, 1, *_lt(D2)), allows(1, 2, *_lt(D2))]),
        Csp.build([("1",), D3], [allows(0, 1)]),
        chain3,
    ]
    r = verify_claim(CLAIMS["T8"], suite)
    assert r.violations == 0
    assert all(p.strict == 1 for p in r.parts)
    assert r.passed


def test_s1_holds_on_small_family():
    suite = SuiteCache(TINY).get("csp")
    r = verify_claim(CLAIMS["S1"], suite)
    assert r.instances == 38
    assert r.violations == 0 and r.passed


def test_witnesses_carry_payload_and_respect_cap(xor_square):
    suite = [Cnf(1, ((1,),)), xor_square]
    r = run_claim(CLAIMS["T1"], suite, ClaimSettings(), witness_cap=5)
    assert len(r.witnesses) == 1
    w = r.witnesses[0]
    assert (w.index, w.category) == (1, "strict")
    assert w.payload == write_dimacs(xor_square)

    capped = run_claim(CLAIMS["T1"], suite, ClaimSettings(), witness_cap=0)
    assert capped.witnesses == [] and capped.strict_witnesses == 1


def test_degenerate_instances_are_skipped():
    r = run_claim(CLAIMS["T6"], [Cnf(1, ((),)), Cnf(1, ((1,), (-1,)))], ClaimSettings())
    assert r.skipped == 2 and r.violations == 0


def test_worker_count_does_not_change_report(small_sat):
    one = run_claim(CLAIMS["T1"], small_sat, ClaimSettings(), jobs=1)
    two = run_claim(CLAIMS["T1"], small_sat, ClaimSettings(), jobs=2)
    assert one == two


def test_verify_rejects_wrong_input_class(xor_square, neq2):
    with pytest.raises(SatCspError):
        verify_claim(CLAIMS["T1"], [neq2])
    with pytest.raises(SatCspError):
        verify_claim(CLAIMS["S1"], [xor_square])


def test_verify_all_sorts_by_claim_id():
    suites = SuiteCache(TINY)
    reports = verify_all([CLAIMS["T2"], CLAIMS["S1"], CLAIMS["T1"]], suites)
    assert [r.claim_id for r in reports] == ["S1", "T1", "T2"]


# ---- calibration ----
def test_candidate_order():
    t6 = candidate_settings("T6")
    assert len(t6) == 16
    assert t6[0] == ClaimSettings("decisions_total", True, False, "none")
    assert len(candidate_settings("T9")) == 32


def test_calibration_selects_failed_leaves():
    cal = calibrate_branch_convention(SuiteCache(TINY), ["T6"])
    assert cal.selected["T6"] == ClaimSettings("failed_leaves", True, False, "none")
    assert cal.notes["T6"][-1] == "selected failed_leaves/positive-first/static/amo=none"
    assert cal.notes["T6"][0].startswith("candidate decisions_total/")


def test_calibration_rejects_uncalibrated_claim():
    with pytest.raises(SatCspError):
        calibrate_branch_convention(SuiteCache(TINY), ["T1"])


def test_calibration_json_and_delegation():
    cal = Calibration({"T4": ClaimSettings("nodes", False, True, "none")}, {"T4": ["selected x"]})
    back = Calibration.from_json(cal.to_json())
    assert back == cal
    settings, calibrated = back.settings_for(CLAIMS["T5"])
    assert calibrated and settings.convention == "nodes"
    assert back.settings_for(CLAIMS["T10"]) == (ClaimSettings(), False)


def test_dominance_claims_calibrate_on_their_own():
    assert {c.calibrated_by for c in CLAIMS.values()} == {None, "T4"}
    cal = calibrate_branch_convention(SuiteCache(TINY), ["T4", "T7", "T10"])
    assert set(cal.selected) == {"T4", "T7", "T10"}
    for cid in ("T4", "T7", "T10"):
        assert cal.notes[cid][0].startswith("candidate decisions_total/positive-first/static")


def test_calibration_file_errors(tmp_path):
    with pytest.raises(SatCspError):
        Calibration.from_json("[1, 2]")
    with pytest.raises(SatCspError):
        Calibration.load(tmp_path / "missing.json")


def test_shipped_calibration():
    cal = Calibration.load(SHIPPED)
    assert cal.selected["T6"].convention == "failed_leaves"
    assert cal.selected["T9"] == ClaimSettings("failed_leaves", True, True, "pairwise")
    assert set(cal.selected) <= set(CALIBRATED)


# ---- default exhaustive family ----
@pytest.fixture(scope="module")
def default_suites():
    return SuiteCache(SuiteSpec())


@pytest.fixture(scope="module")
def default_calibration(default_suites):
    return calibrate_branch_convention(default_suites)


@pytest.mark.slow
@pytest.mark.parametrize("cid", sorted((c.id for c in CLAIMS.values() if c.asserted), key=claim_sort_key))
def test_asserted_claims_pass_on_default_family(cid, default_suites, default_calibration):
    claim = CLAIMS[cid]
    suite = default_suites.get(claim.input_class)
    r = verify_claim(claim, suite, default_calibration)
    assert r.instances == (18066 if claim.input_class == "sat" else len(suite))
    assert r.violations == 0, r.witnesses[:3]
    assert r.passed
