"""
Instance generators.

enumerate_tiny walks complete raw families (no isomorph elimination) in a
canonical order; gen_random draws reproducible instances from numpy's PCG64
generator (numpy.random.default_rng(seed)).
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Callable, Iterator, List, Literal, Optional, Tuple, Union

import numpy as np

from .config import load_config
from .errors import FamilyTooLargeError, GeneratorError
from .types import Clause, Cnf, Csp, ExtensionalConstraint, GenSpec, Semantics

log = logging.getLogger(__name__)

Instance = Union[Cnf, Csp]

# binary templates over value indices (i of the first variable, j of the second)
TEMPLATES: Tuple[Tuple[str, Semantics, Callable[[int, int], bool]], ...] = (
    ("eq", "allows", lambda i, j: i == j),
    ("neq", "forbids", lambda i, j: i == j),
    ("lt", "allows", lambda i, j: i < j),
    ("gt", "allows", lambda i, j: i > j),
    ("le", "forbids", lambda i, j: i > j),
    ("ge", "forbids", lambda i, j: i < j),
    ("nogood00", "forbids", lambda i, j: i == 0 and j == 0),
    ("parity", "allows", lambda i, j: (i + j) % 2 == 0),
)


def value_labels(d: int) -> Tuple[str, ...]:
    return tuple(str(i + 1) for i in range(d))


@dataclass(frozen=True)
class TinyFamily:
    kind: Literal["sat", "csp"]
    max_vars: int
    max_clauses: int = 1
    max_width: int = 1
    max_domain: int = 1


# ---------- SAT family ----------
def clause_universe(num_vars: int, max_width: int) -> List[Clause]:
    """Ordered by (width, variables, signs) with the positive literal first."""
    out: List[Clause] = []
    for k in range(1, min(max_width, num_vars) + 1):
        for vs in combinations(range(1, num_vars + 1), k):
            for neg in product((False, True), repeat=k):
                out.append(tuple(-v if n else v for v, n in zip(vs, neg)))
    return out


def universe_size(num_vars: int, max_width: int) -> int:
    return sum(comb(num_vars, k) * 2**k for k in range(1, min(max_width, num_vars) + 1))


def sat_family_size(max_vars: int, max_clauses: int, max_width: int) -> int:
    return sum(comb(universe_size(v, max_width), c)
               for v in range(1, max_vars + 1) for c in range(1, max_clauses + 1))


def enumerate_cnfs(max_vars: int, max_clauses: int, max_width: int) -> Iterator[Cnf]:
    for v in range(1, max_vars + 1):
        universe = clause_universe(v, max_width)
        for c in range(1, max_clauses + 1):
            for clauses in combinations(universe, c):
                yield Cnf(v, clauses)


# ---------- CSP family ----------
def template_constraint(t: int, x: int, y: int, dx: int, dy: int) -> ExtensionalConstraint:
    _, semantics, pred = TEMPLATES[t]
    lx, ly = value_labels(dx), value_labels(dy)
    tuples = frozenset((lx[i], ly[j]) for i in range(dx) for j in range(dy) if pred(i, j))
    return ExtensionalConstraint((x, y), semantics, tuples)


def csp_family_size(max_vars: int, max_domain: int) -> int:
    k = len(TEMPLATES) + 1
    return sum(max_domain**n * k**comb(n, 2) for n in range(1, max_vars + 1))


def enumerate_csps(max_vars: int, max_domain: int) -> Iterator[Csp]:
    for n in range(1, max_vars + 1):
        pairs = list(combinations(range(n), 2))
        for sizes in product(range(1, max_domain + 1), repeat=n):
            domains = [value_labels(d) for d in sizes]
            for choice in product(range(len(TEMPLATES) + 1), repeat=len(pairs)):
                cons = [template_constraint(t - 1, x, y, sizes[x], sizes[y])
                        for t, (x, y) in zip(choice, pairs) if t]
                yield Csp.build(domains, cons)


# ---------- dispatch ----------
def family_size(fam: TinyFamily) -> int:
    if fam.kind == "sat":
        return sat_family_size(fam.max_vars, fam.max_clauses, fam.max_width)
    return csp_family_size(fam.max_vars, fam.max_domain)


def enumerate_tiny(fam: TinyFamily, cap: Optional[int] = None) -> Iterator[Instance]:
    cap = load_config()["FAMILY_CAP"] if cap is None else cap
    size = family_size(fam)
    if size > cap:
        raise FamilyTooLargeError(size, cap)
    log.info("enumerating %s family of %d instances", fam.kind, size)
    if fam.kind == "sat":
        return enumerate_cnfs(fam.max_vars, fam.max_clauses, fam.max_width)
    return enumerate_csps(fam.max_vars, fam.max_domain)


def gen_random(spec: GenSpec) -> Instance:
    rng = np.random.default_rng(spec.seed)
    if spec.kind == "ksat":
        n, k = spec.num_vars, spec.width
        if k > n:
            raise GeneratorError(f"clause width {k} exceeds {n} variables")
        clauses = []
        for _ in range(spec.num_clauses):
            vs = rng.choice(n, size=k, replace=False) + 1
            signs = rng.integers(0, 2, size=k)
            clauses.append(tuple(int(v) if s else -int(v) for v, s in zip(vs, signs)))
        return Cnf.build(n, clauses)
    n, d, m = spec.num_vars, spec.domain, spec.num_constraints
    pairs = list(combinations(range(n), 2))
    if m > len(pairs):
        raise GeneratorError(f"{m} constraints need {m} distinct pairs, only {len(pairs)} exist")
    labels = value_labels(d)
    # model B: exact number of nogoods per constrained pair (round half to even)
    nogoods = round(spec.tightness * d * d)
    cons = []
    for pi in sorted(int(i) for i in rng.choice(len(pairs), size=m, replace=False)):
        picks = sorted(int(i) for i in rng.choice(d * d, size=nogoods, replace=False))
        cons.append(ExtensionalConstraint(pairs[pi], "forbids",
                                          frozenset((labels[i // d], labels[i % d]) for i in picks)))
    return Csp.build([labels] * n, cons)


def random_suite(kind: Literal["ksat", "binary_csp"], count: int, seed: int, **sizes) -> Iterator[Instance]:
    """count instances from consecutive seeds seed, seed+1, ..."""
    for i in range(count):
        yield gen_random(GenSpec(kind=kind, seed=(seed + i) % 2**64, **sizes))
