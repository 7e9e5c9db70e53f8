import pytest

from satcsp_core.errors import EncodingError
from satcsp_core.generators import enumerate_cnfs
from satcsp_core.oracle import brute_force_csp, brute_force_sat
from satcsp_core.propagation import ac3
from satcsp_core.sat2csp import (SAT_TO_CSP, decode_sat_solution, encode_dual, encode_hidden,
                                 encode_literal, encode_nonbinary, satisfying_tuples)
from satcsp_core.sat_solver import check_model
from satcsp_core.types import Cnf


def test_satisfying_tuples_skip_the_falsifying_one():
    assert satisfying_tuples((1, -2)) == ("FF", "TF", "TT")
    assert len(satisfying_tuples((1, 2, 3))) == 7


def test_dual_example():
    p, m = encode_dual(Cnf(3, ((1, -2), (2, 3))))
    assert set(p.domain(0)) == {"TT", "TF", "FF"}
    assert set(p.domain(1)) == {"FT", "TF", "TT"}
    assert len(p.constraints) == 1
    c = p.constraints[0]
    assert c.scope == (0, 1) and c.semantics == "allows"
    # y is the second coordinate of d1 and the first of d2
    assert all(a[1] == b[0] for a, b in c.tuples)
    assert m.forward("clause") == {0: 0, 1: 1}


def test_dual_single_unit_clause():
    p, _ = encode_dual(Cnf(1, ((1,),)))
    assert p.domain(0) == ("T",)
    assert p.constraints == ()


def test_empty_clause_is_rejected():
    for encode in SAT_TO_CSP.values():
        with pytest.raises(EncodingError, match="trivially unsat"):
            encode(Cnf(1, ((),)))


def test_hidden_example():
    p, m = encode_hidden(Cnf(2, ((1, 2),)))
    assert p.domain(0) == p.domain(1) == ("F", "T")
    assert set(p.domain(2)) == {"FT", "TF", "TT"}
    assert sorted(c.scope for c in p.constraints) == [(2, 0), (2, 1)]
    assert m.forward("prop") == {1: 0, 2: 1}


def test_hidden_unit_clause_forces_value_under_ac():
    p, _ = encode_hidden(Cnf(1, ((-1,),)))
    assert p.domain(1) == ("F",)
    assert ac3(p).pruned == {(0, "T")}


def test_literal_example():
    p, _ = encode_literal(Cnf(2, ((1, 2), (-1, 2))))
    assert p.domain(0) == ("1", "2") and p.domain(1) == ("-1", "2")
    assert len(p.constraints) == 1
    assert p.constraints[0].semantics == "forbids"
    assert p.constraints[0].tuples == {("1", "-1")}


def test_literal_complementary_units_wipe_out():
    p, _ = encode_literal(Cnf(1, ((1,), (-1,))))
    assert ac3(p).wipeout


def test_nonbinary_clause_forbids_its_falsifying_tuple():
    p, _ = encode_nonbinary(Cnf(3, ((1, -2, 3),)))
    c = p.constraints[0]
    assert c.scope == (0, 1, 2)
    assert c.semantics == "forbids" and c.tuples == {("F", "T", "F")}


def test_nonbinary_unit_clause_restricts_domain():
    p, _ = encode_nonbinary(Cnf(1, ((1,),)))
    assert p.domain(0) == ("T",) and p.constraints == ()


def test_nonbinary_contradictory_units_empty_the_domain():
    p, _ = encode_nonbinary(Cnf(1, ((1,), (-1,))))
    assert p.domain(0) == ()


def test_decode_dual():
    _, m = encode_dual(Cnf(2, ((1, 2),)))
    assert decode_sat_solution(m, {0: "TF"}) == {1: True, 2: False}


def test_decode_literal_defaults_to_false():
    _, m = encode_literal(Cnf(2, ((-2, 1),)))
    assert decode_sat_solution(m, {0: "-2"}) == {1: False, 2: False}


def test_decode_dual_disagreement_is_a_bug():
    _, m = encode_dual(Cnf(2, ((1, 2), (1, -2))))
    with pytest.raises(EncodingError):
        decode_sat_solution(m, {0: "TT", 1: "FF"})


def _round_trips(name, family):
    for f in family:
        p, m = SAT_TO_CSP[name](f)
        truth = brute_force_sat(f)
        image = brute_force_csp(p)
        assert image.status == truth.status
        for sol in image.solutions:
            assert check_model(f, decode_sat_solution(m, sol))


@pytest.mark.parametrize("name", sorted(SAT_TO_CSP))
def test_encodings_preserve_satisfiability(name):
    _round_trips(name, enumerate_cnfs(2, 3, 2))


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(SAT_TO_CSP))
def test_every_solution_decodes_on_three_variables(name):
    _round_trips(name, enumerate_cnfs(3, 3, 3))
