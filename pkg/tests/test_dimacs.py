import pytest

from satcsp_core.dimacs import parse_dimacs, write_dimacs
from satcsp_core.errors import DimacsParseError
from satcsp_core.generators import gen_random
from satcsp_core.types import Cnf, GenSpec


def test_parse_single_clause():
    assert parse_dimacs("p cnf 2 1\n1 -2 0") == Cnf(2, ((1, -2),))


def test_parse_empty_formula():
    f = parse_dimacs("p cnf 1 0")
    assert f.num_vars == 1 and f.clauses == ()


def test_clauses_may_span_lines_and_share_lines():
    f = parse_dimacs("c comment\np cnf 3 2\n1 -2\n3 0 -1 0\n")
    assert f.clauses == ((1, -2, 3), (-1,))


def test_literal_beyond_header_is_rejected_with_line():
    with pytest.raises(DimacsParseError) as e:
        parse_dimacs("p cnf 2 1\n1 3 0")
    assert e.value.line == 2
    assert "literal 3 exceeds declared 2 variables" in str(e.value)


@pytest.mark.parametrize("text,line", [
    ("p cnf 2 2\n1 0\n", 1),
    ("p cnf 2 1\n1 2\n", 2),
    ("1 0\n", 1),
    ("p cnf x 1\n1 0\n", 1),
    ("p cnf 1 0\np cnf 1 0\n", 2),
    ("p cnf 2 1\n1 a 0\n", 2),
    ("c only a comment\n", 1),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(DimacsParseError) as e:
        parse_dimacs(text)
    assert e.value.line == line


def test_tautologies_dropped_and_counted():
    f = parse_dimacs("p cnf 2 2\n1 -1 0\n2 2 0\n")
    assert f.clauses == ((2,),)
    assert f.dropped_tautologies == 1


def test_write_examples():
    assert write_dimacs(Cnf(2, ((1, -2),))) == "p cnf 2 1\n1 -2 0\n"
    assert write_dimacs(Cnf(1)) == "p cnf 1 0\n"


def test_empty_clause_written_as_bare_zero():
    text = write_dimacs(Cnf(1, ((),)))
    assert text == "p cnf 1 1\n0\n"
    assert parse_dimacs(text).has_empty_clause


def test_round_trip_on_random_formulas():
    for seed in range(20):
        f = gen_random(GenSpec("ksat", 6, seed, num_clauses=12, width=3))
        assert parse_dimacs(write_dimacs(f)) == f
