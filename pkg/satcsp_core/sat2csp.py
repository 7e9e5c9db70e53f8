"""
SAT -> CSP encodings: dual, hidden variable, literal and non-binary.

Boolean values are the labels "F" < "T". A dual value is the string of a
satisfying tuple's coordinates in the clause's literal order, e.g. "TF".
"""
from __future__ import annotations
import logging
from itertools import combinations, product
from typing import Dict, List, Tuple

from .errors import EncodingError
from .types import (Assignment, Clause, Cnf, Csp, CspSolution, EncodingMap,
                    ExtensionalConstraint)

log = logging.getLogger(__name__)

BOOL = ("F", "T")


def _label(bits) -> str:
    return "".join("T" if b else "F" for b in bits)


def _require_clauses(f: Cnf) -> None:
    if f.has_empty_clause:
        raise EncodingError("trivially unsat input: the formula contains the empty clause")


def _scope(c: Clause) -> List[int]:
    return [abs(l) for l in c]


def satisfying_tuples(c: Clause) -> Tuple[str, ...]:
    """All 2^k - 1 satisfying tuples of a width-k clause, lexicographic with F < T."""
    return tuple(_label(bits) for bits in product((False, True), repeat=len(c))
                 if any(b == (l > 0) for b, l in zip(bits, c)))


def _dual_domains(f: Cnf) -> List[Tuple[str, ...]]:
    return [satisfying_tuples(c) for c in f.clauses]


def encode_dual(f: Cnf) -> Tuple[Csp, EncodingMap]:
    _require_clauses(f)
    domains = _dual_domains(f)
    scopes = [_scope(c) for c in f.clauses]
    constraints = []
    for i, j in combinations(range(len(f.clauses)), 2):
        shared = [(pi, scopes[j].index(v)) for pi, v in enumerate(scopes[i]) if v in scopes[j]]
        if not shared:
            continue
        allowed = frozenset((ti, tj) for ti in domains[i] for tj in domains[j]
                            if all(ti[pi] == tj[pj] for pi, pj in shared))
        constraints.append(ExtensionalConstraint((i, j), "allows", allowed))
    p = Csp.build(domains, constraints)
    m = EncodingMap("sat_to_csp", "dual",
                    {"clause": tuple((i, i) for i in range(len(f.clauses)))},
                    {"num_vars": f.num_vars, "scopes": scopes})
    log.debug("dual encoding: %d variables, %d constraints", len(p.variables), len(p.constraints))
    return p, m


def encode_hidden(f: Cnf) -> Tuple[Csp, EncodingMap]:
    _require_clauses(f)
    n = f.num_vars
    scopes = [_scope(c) for c in f.clauses]
    domains: List[Tuple[str, ...]] = [BOOL] * n + _dual_domains(f)
    constraints = []
    for i, c in enumerate(f.clauses):
        for pos, v in enumerate(scopes[i]):
            allowed = frozenset((t, t[pos]) for t in domains[n + i])
            constraints.append(ExtensionalConstraint((n + i, v - 1), "allows", allowed))
    p = Csp.build(domains, constraints)
    m = EncodingMap("sat_to_csp", "hidden",
                    {"prop": tuple((v, v - 1) for v in range(1, n + 1)),
                     "clause": tuple((i, n + i) for i in range(len(f.clauses)))},
                    {"num_vars": n, "scopes": scopes})
    return p, m


def encode_literal(f: Cnf) -> Tuple[Csp, EncodingMap]:
    _require_clauses(f)
    domains = [tuple(str(l) for l in c) for c in f.clauses]
    constraints = []
    for i, j in combinations(range(len(f.clauses)), 2):
        clash = frozenset((str(l), str(-l)) for l in f.clauses[i] if -l in f.clauses[j])
        if clash:
            constraints.append(ExtensionalConstraint((i, j), "forbids", clash))
    p = Csp.build(domains, constraints)
    m = EncodingMap("sat_to_csp", "literal",
                    {"clause": tuple((i, i) for i in range(len(f.clauses)))},
                    {"num_vars": f.num_vars})
    return p, m


def encode_nonbinary(f: Cnf) -> Tuple[Csp, EncodingMap]:
    """One forbids-constraint per clause holding its falsifying tuple; unit
    clauses restrict domains instead. Tuples through values removed that way
    are vacuous and left out."""
    _require_clauses(f)
    n = f.num_vars
    domains: List[List[str]] = [list(BOOL) for _ in range(n)]
    for c in f.clauses:
        if len(c) == 1:
            l = c[0]
            keep = "T" if l > 0 else "F"
            domains[abs(l) - 1] = [a for a in domains[abs(l) - 1] if a == keep]
    constraints = []
    for c in f.clauses:
        if len(c) == 1:
            continue
        falsifying = tuple("F" if l > 0 else "T" for l in c)
        live = all(a in domains[abs(l) - 1] for l, a in zip(c, falsifying))
        constraints.append(ExtensionalConstraint(tuple(abs(l) - 1 for l in c), "forbids",
                                                 frozenset([falsifying]) if live else frozenset()))
    p = Csp.build(domains, constraints)
    m = EncodingMap("sat_to_csp", "nonbinary",
                    {"prop": tuple((v, v - 1) for v in range(1, n + 1))},
                    {"num_vars": n})
    return p, m


SAT_TO_CSP = {
    "dual": encode_dual,
    "hidden": encode_hidden,
    "literal": encode_literal,
    "nonbinary": encode_nonbinary,
}


def _set(out: Assignment, v: int, val: bool) -> None:
    if out.get(v, val) != val:
        raise EncodingError(f"solution disagrees on variable {v}: encoder or solver bug")
    out[v] = val


def decode_sat_solution(m: EncodingMap, sol: CspSolution) -> Assignment:
    n = int(m.metadata["num_vars"])
    out: Assignment = {}
    if m.encoding == "dual":
        scopes = m.metadata["scopes"]
        for i, x in m.forward("clause").items():
            for v, ch in zip(scopes[i], sol[x]):
                _set(out, v, ch == "T")
    elif m.encoding in ("hidden", "nonbinary"):
        for v, x in m.forward("prop").items():
            out[v] = sol[x] == "T"
    elif m.encoding == "literal":
        for i, x in m.forward("clause").items():
            l = int(sol[x])
            _set(out, abs(l), l > 0)
    else:
        raise EncodingError(f"not a SAT->CSP encoding: {m.encoding!r}")
    return {v: out.get(v, False) for v in range(1, n + 1)}
