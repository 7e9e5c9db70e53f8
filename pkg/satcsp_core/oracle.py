# exhaustive ground truth for SAT and CSP instances
from __future__ import annotations
from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Generic, List, Optional, TypeVar

from .config import load_config
from .errors import OracleCapError
from .types import Assignment, Cnf, Csp, CspSolution, Status

T = TypeVar("T")


@dataclass
class OracleResult(Generic[T]):
    status: Status
    count: int
    solutions: List[T] = field(default_factory=list)

    @property
    def first(self) -> Optional[T]:
        return self.solutions[0] if self.solutions else None


def brute_force_sat(f: Cnf, cap: Optional[int] = None, max_vars: Optional[int] = None) -> OracleResult[Assignment]:
    """Enumerate assignments in lexicographic order (x1 most significant, F < T)."""
    cfg = load_config()
    cap = cfg["MODEL_CAP"] if cap is None else cap
    max_vars = cfg["MAX_ORACLE_VARS"] if max_vars is None else max_vars
    if f.num_vars > max_vars:
        raise OracleCapError(f"{f.num_vars} variables exceed the oracle cap of {max_vars}")
    n = f.num_vars
    count = 0
    models: List[Assignment] = []
    for bits in product((False, True), repeat=n):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in f.clauses):
            count += 1
            if len(models) < cap:
                models.append({v: bits[v - 1] for v in range(1, n + 1)})
    return OracleResult("sat" if count else "unsat", count, models)


def brute_force_csp(p: Csp, cap: Optional[int] = None, max_product: Optional[int] = None) -> OracleResult[CspSolution]:
    cfg = load_config()
    cap = cfg["MODEL_CAP"] if cap is None else cap
    max_product = cfg["MAX_ORACLE_PRODUCT"] if max_product is None else max_product
    size = prod(len(v.domain) for v in p.variables)
    if size > max_product:
        raise OracleCapError(f"domain product {size} exceeds the oracle cap of {max_product}")
    count = 0
    sols: List[CspSolution] = []
    for values in product(*(v.domain for v in p.variables)):
        if all(c.permits(tuple(values[x] for x in c.scope)) for c in p.constraints):
            count += 1
            if len(sols) < cap:
                sols.append(dict(enumerate(values)))
    return OracleResult("sat" if count else "unsat", count, sols)
