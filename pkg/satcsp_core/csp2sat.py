"""
CSP -> SAT encodings: direct, log and support.

Selector variables are numbered in (variable, value) order following each
variable's stored domain order; log bits in (variable, bit) order, bit 0 least
significant.
"""
from __future__ import annotations
import logging
from itertools import combinations, product
from math import prod
from typing import Dict, Iterator, List, Literal, Optional, Tuple

from .config import load_config
from .csp_solver import check_solution
from .errors import EncodingError, UnsupportedConstraintError
from .types import Assignment, BitLayout, Clause, Cnf, Csp, CspSolution, EncodingMap, negate

log = logging.getLogger(__name__)

AmoMode = Literal["none", "pairwise"]


def _budget(tuple_budget: Optional[int]) -> int:
    return int(tuple_budget if tuple_budget is not None else load_config()["TUPLE_BUDGET"])


def forbidden_tuples(p: Csp, ci: int, tuple_budget: int) -> Iterator[Tuple[str, ...]]:
    """Nogoods of constraint ci in domain-index order; allows-constraints are
    complemented over the original domain product."""
    c = p.constraints[ci]
    if c.semantics == "forbids":
        yield from p.sorted_tuples(c)
        return
    size = prod(len(p.domain(x)) for x in c.scope)
    if size > tuple_budget:
        raise EncodingError(f"constraint {ci} over {list(c.scope)}: domain product {size} exceeds tuple budget {tuple_budget}")
    for t in product(*(p.domain(x) for x in c.scope)):
        if t not in c.tuples:
            yield t


def _selectors(p: Csp) -> Dict[Tuple[int, str], int]:
    sel: Dict[Tuple[int, str], int] = {}
    for v in p.variables:
        for a in v.domain:
            sel[(v.id, a)] = len(sel) + 1
    return sel


def _alo(p: Csp, sel) -> List[Clause]:
    return [tuple(sel[(v.id, a)] for a in v.domain) for v in p.variables]


def _amo(p: Csp, sel) -> List[Clause]:
    return [(negate(sel[(v.id, a)]), negate(sel[(v.id, b)])) for v in p.variables for a, b in combinations(v.domain, 2)]


def _selector_map(p: Csp, sel, encoding: str, amo: str) -> EncodingMap:
    return EncodingMap("csp_to_sat", encoding,
                       {"selector": tuple(sel.items())},
                       {"amo": amo, "domains": [list(v.domain) for v in p.variables]})


def encode_direct(p: Csp, amo: AmoMode = "none", tuple_budget: Optional[int] = None) -> Tuple[Cnf, EncodingMap]:
    if amo not in ("none", "pairwise"):
        raise EncodingError(f"unknown amo mode {amo!r}")
    budget = _budget(tuple_budget)
    sel = _selectors(p)
    clauses = _alo(p, sel)
    for ci, c in enumerate(p.constraints):
        for t in forbidden_tuples(p, ci, budget):
            clauses.append(tuple(-sel[(x, a)] for x, a in zip(c.scope, t)))
    if amo == "pairwise":
        clauses.extend(_amo(p, sel))
    f = Cnf.build(len(sel), clauses)
    log.debug("direct encoding: %d vars, %d clauses (amo=%s)", f.num_vars, len(f.clauses), amo)
    return f, _selector_map(p, sel, "direct", amo)


def encode_log(p: Csp, tuple_budget: Optional[int] = None) -> Tuple[Cnf, EncodingMap]:
    budget = _budget(tuple_budget)
    layout = BitLayout.for_csp(p)
    clauses: List[Clause] = []
    for v in p.variables:
        # d = 0 leaves index 0 excluded with no bits: the empty clause
        for idx in range(layout.sizes[v.id], 1 << layout.widths[v.id]):
            clauses.append(tuple(layout.falsifying_literals(v.id, idx)))
    idx_of = p.value_index
    for ci, c in enumerate(p.constraints):
        for t in forbidden_tuples(p, ci, budget):
            lits: List[int] = []
            for x, a in zip(c.scope, t):
                lits.extend(layout.falsifying_literals(x, idx_of[x][a]))
            clauses.append(tuple(lits))
    f = Cnf.build(layout.num_sat_vars, clauses)
    bits = tuple(((v.id, j), layout.bit_var(v.id, j)) for v in p.variables for j in range(layout.widths[v.id]))
    m = EncodingMap("csp_to_sat", "log", {"bit": bits},
                    {"widths": list(layout.widths), "offsets": list(layout.offsets),
                     "sizes": list(layout.sizes), "domains": [list(v.domain) for v in p.variables]})
    return f, m


def encode_support(p: Csp) -> Tuple[Cnf, EncodingMap]:
    if not p.is_binary:
        raise UnsupportedConstraintError("the support encoding needs binary constraints")
    sel = _selectors(p)
    clauses = _alo(p, sel) + _amo(p, sel)
    for c in p.constraints:
        x, y = c.scope
        for a in p.domain(x):
            clauses.append((-sel[(x, a)], *(sel[(y, b)] for b in p.domain(y) if c.permits((a, b)))))
        for b in p.domain(y):
            clauses.append((-sel[(y, b)], *(sel[(x, a)] for a in p.domain(x) if c.permits((a, b)))))
    return Cnf.build(len(sel), clauses), _selector_map(p, sel, "support", "pairwise")


def csp_to_sat(p: Csp, encoding: str, amo: AmoMode = "none", tuple_budget: Optional[int] = None) -> Tuple[Cnf, EncodingMap]:
    if encoding == "direct":
        return encode_direct(p, amo, tuple_budget)
    if encoding == "log":
        return encode_log(p, tuple_budget)
    if encoding == "support":
        return encode_support(p)
    raise EncodingError(f"not a CSP->SAT encoding: {encoding!r}")


def decode_csp_solution(m: EncodingMap, model: Assignment, p: Optional[Csp] = None) -> CspSolution:
    """Selector encodings take the lowest-index true selector per variable; log reads the bits.
    When p is given the decoded solution is checked against it."""
    domains = m.metadata["domains"]
    out: CspSolution = {}
    if m.encoding in ("direct", "support"):
        sel = m.forward("selector")
        for x, dom in enumerate(domains):
            chosen = next((a for a in dom if model.get(sel[(x, a)], False)), None)
            if chosen is None:
                raise EncodingError(f"model selects no value for variable {x}")
            out[x] = chosen
    elif m.encoding == "log":
        bit = m.forward("bit")
        for x, dom in enumerate(domains):
            idx = sum(1 << j for j in range(int(m.metadata["widths"][x])) if model.get(bit[(x, j)], False))
            if idx >= len(dom):
                raise EncodingError(f"variable {x} decodes to excluded index {idx}: encoder bug")
            out[x] = dom[idx]
    else:
        raise EncodingError(f"not a CSP->SAT encoding: {m.encoding!r}")
    if p is not None and not check_solution(p, out):
        raise EncodingError("decoded assignment violates the original CSP")
    return out
