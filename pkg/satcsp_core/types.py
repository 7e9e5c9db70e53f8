from __future__ import annotations
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, List, Literal, Optional, Tuple

from .errors import ModelError

# ---------- SAT side ----------
# A literal is a nonzero DIMACS integer: abs() is the variable, the sign the polarity.
Lit = int
Clause = Tuple[int, ...]
Assignment = Dict[int, bool]
Status = Literal["sat", "unsat"]

CONVENTIONS = ("decisions_total", "decisions_positive", "nodes", "failed_leaves")


def var_of(lit: Lit) -> int:
    return abs(lit)


def negate(lit: Lit) -> Lit:
    return -lit


def lit_value(lit: Lit, a: Assignment) -> Optional[bool]:
    v = a.get(abs(lit))
    if v is None:
        return None
    return v if lit > 0 else not v


def normalize_clause(lits: Iterable[int]) -> Optional[Clause]:
    """Dedupe keeping first occurrence; None for a tautology."""
    seen: List[int] = []
    for l in lits:
        if -l in seen:
            return None
        if l not in seen:
            seen.append(l)
    return tuple(seen)


@dataclass(frozen=True)
class Cnf:
    num_vars: int
    clauses: Tuple[Clause, ...] = ()
    dropped_tautologies: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.num_vars < 0:
            raise ModelError("num_vars must be non-negative")
        for i, c in enumerate(self.clauses):
            if len(set(c)) != len(c):
                raise ModelError(f"clause {i} repeats a literal")
            for l in c:
                if l == 0 or abs(l) > self.num_vars:
                    raise ModelError(f"clause {i}: literal {l} outside 1..{self.num_vars}")
                if -l in c:
                    raise ModelError(f"clause {i} is tautological")

    @classmethod
    def build(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> "Cnf":
        kept: List[Clause] = []
        dropped = 0
        for c in clauses:
            n = normalize_clause(c)
            if n is None:
                dropped += 1
            else:
                kept.append(n)
        return cls(num_vars, tuple(kept), dropped)

    @property
    def has_empty_clause(self) -> bool:
        return any(len(c) == 0 for c in self.clauses)


@dataclass
class SearchStats:
    status: Status = "unsat"
    decisions_total: int = 0
    decisions_positive: int = 0
    decisions_negative: int = 0
    nodes: int = 0
    failed_leaves: int = 0
    propagations: int = 0
    model: Optional[Assignment] = None

    def metric(self, convention: str) -> int:
        return int(getattr(self, convention))


@dataclass(frozen=True)
class BranchPlan:
    """Static variable order plus polarity. Empty order means ascending index."""
    order: Tuple[int, ...] = ()
    positive_first: bool = True

    def resolved(self, num_vars: int) -> Tuple[int, ...]:
        if not self.order:
            return tuple(range(1, num_vars + 1))
        if sorted(self.order) != list(range(1, num_vars + 1)):
            raise ModelError("branch order must list every variable exactly once")
        return self.order


# ---------- CSP side ----------
Semantics = Literal["allows", "forbids"]
CspSolution = Dict[int, str]


@dataclass(frozen=True)
class CspVariable:
    """A CSP variable over a finite, ordered domain of string values.

    An empty domain is accepted here: the non-binary encoding turns two
    contradictory unit clauses into one. Solvers and propagators report such a
    problem as a root wipeout rather than rejecting it.
    """
    id: int
    domain: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.domain)) != len(self.domain):
            raise ModelError(f"variable {self.id} has duplicate values")


@dataclass(frozen=True)
class ExtensionalConstraint:
    scope: Tuple[int, ...]
    semantics: Semantics
    tuples: FrozenSet[Tuple[str, ...]] = frozenset()

    def __post_init__(self):
        if len(self.scope) < 2:
            raise ModelError("constraint arity must be at least 2")
        if len(set(self.scope)) != len(self.scope):
            raise ModelError(f"scope {self.scope} repeats a variable")
        if self.semantics not in ("allows", "forbids"):
            raise ModelError(f"unknown semantics {self.semantics!r}")
        for t in self.tuples:
            if len(t) != len(self.scope):
                raise ModelError(f"tuple {t} does not match scope {self.scope}")

    @property
    def arity(self) -> int:
        return len(self.scope)

    def permits(self, values: Tuple[str, ...]) -> bool:
        listed = values in self.tuples
        return listed if self.semantics == "allows" else not listed

    def reordered(self, scope: Tuple[int, ...]) -> "ExtensionalConstraint":
        pos = [self.scope.index(v) for v in scope]
        return ExtensionalConstraint(scope, self.semantics, frozenset(tuple(t[p] for p in pos) for t in self.tuples))


def _merge(a: ExtensionalConstraint, b: ExtensionalConstraint) -> ExtensionalConstraint:
    b = b.reordered(a.scope)
    if a.semantics == b.semantics == "allows":
        return ExtensionalConstraint(a.scope, "allows", a.tuples & b.tuples)
    if a.semantics == b.semantics == "forbids":
        return ExtensionalConstraint(a.scope, "forbids", a.tuples | b.tuples)
    allows, forbids = (a, b) if a.semantics == "allows" else (b, a)
    return ExtensionalConstraint(a.scope, "allows", allows.tuples - forbids.tuples)


@dataclass(frozen=True)
class Csp:
    variables: Tuple[CspVariable, ...]
    constraints: Tuple[ExtensionalConstraint, ...] = ()

    def __post_init__(self):
        for i, v in enumerate(self.variables):
            if v.id != i:
                raise ModelError(f"variable at position {i} has id {v.id}")
        seen = set()
        for c in self.constraints:
            for pos, x in enumerate(c.scope):
                if not 0 <= x < len(self.variables):
                    raise ModelError(f"scope {c.scope} references unknown variable {x}")
                dom = self.variables[x].domain
                for t in c.tuples:
                    if t[pos] not in dom:
                        raise ModelError(f"value {t[pos]!r} not in domain of variable {x}")
            key = frozenset(c.scope)
            if key in seen:
                raise ModelError(f"two constraints over {sorted(key)}; use Csp.build to merge")
            seen.add(key)

    @classmethod
    def build(cls, domains: Iterable[Iterable[str]], constraints: Iterable[ExtensionalConstraint] = ()) -> "Csp":
        variables = tuple(CspVariable(i, tuple(d)) for i, d in enumerate(domains))
        merged: Dict[FrozenSet[int], ExtensionalConstraint] = {}
        for c in constraints:
            key = frozenset(c.scope)
            merged[key] = _merge(merged[key], c) if key in merged else c
        return cls(variables, tuple(merged.values()))

    @property
    def is_binary(self) -> bool:
        return all(c.arity == 2 for c in self.constraints)

    def domain(self, var: int) -> Tuple[str, ...]:
        return self.variables[var].domain

    @cached_property
    def value_index(self) -> Tuple[Dict[str, int], ...]:
        return tuple({a: i for i, a in enumerate(v.domain)} for v in self.variables)

    @cached_property
    def constraints_on(self) -> Tuple[Tuple[int, ...], ...]:
        on: List[List[int]] = [[] for _ in self.variables]
        for ci, c in enumerate(self.constraints):
            for x in c.scope:
                on[x].append(ci)
        return tuple(tuple(x) for x in on)

    def sorted_tuples(self, c: ExtensionalConstraint) -> List[Tuple[str, ...]]:
        idx = self.value_index
        return sorted(c.tuples, key=lambda t: tuple(idx[x][a] for x, a in zip(c.scope, t)))


@dataclass(frozen=True)
class DomainState:
    domains: Tuple[Tuple[str, ...], ...]

    @classmethod
    def initial(cls, p: Csp) -> "DomainState":
        return cls(tuple(v.domain for v in p.variables))

    @property
    def wipeout(self) -> bool:
        return any(len(d) == 0 for d in self.domains)

    def assign(self, var: int, value: str) -> "DomainState":
        return self.restrict(var, (value,))

    def restrict(self, var: int, values: Tuple[str, ...]) -> "DomainState":
        doms = list(self.domains)
        doms[var] = values
        return DomainState(tuple(doms))

    def pruned_from(self, before: "DomainState") -> FrozenSet[Tuple[int, str]]:
        return frozenset((x, a) for x, d in enumerate(before.domains) for a in d if a not in self.domains[x])


@dataclass
class CspSearchStats:
    status: Status = "unsat"
    branches: int = 0
    nodes: int = 0
    failed_leaves: int = 0
    revisions: int = 0
    solution: Optional[CspSolution] = None

    def metric(self, convention: str) -> int:
        if convention in ("decisions_total", "decisions_positive"):
            return self.branches
        return int(getattr(self, convention))


@dataclass
class CspBranchPlan:
    order: Tuple[int, ...] = ()
    value_order: Dict[int, Tuple[str, ...]] = field(default_factory=dict)
    unit_first: bool = False
    branch_vars: Optional[FrozenSet[int]] = None

    def resolved(self, n: int) -> Tuple[int, ...]:
        if not self.order:
            return tuple(range(n))
        if sorted(self.order) != list(range(n)):
            raise ModelError("CSP branch order must list every variable exactly once")
        return self.order

    def values(self, var: int, current: Tuple[str, ...]) -> Tuple[str, ...]:
        pref = self.value_order.get(var)
        if not pref:
            return current
        rank = {a: i for i, a in enumerate(pref)}
        return tuple(sorted(current, key=lambda a: rank.get(a, len(rank))))


# ---------- encodings ----------
Direction = Literal["sat_to_csp", "csp_to_sat"]


@dataclass
class EncodingMap:
    """original <-> encoded correspondences, grouped by entity class.

    Classes: "prop" (prop var -> csp var), "clause" (clause index -> csp var),
    "selector" ((csp var, value) -> sat var), "bit" ((csp var, bit) -> sat var).
    """
    direction: Direction
    encoding: str
    var_map: Dict[str, Tuple[Tuple[Any, Any], ...]] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for cls_, pairs in self.var_map.items():
            left = [p[0] for p in pairs]; right = [p[1] for p in pairs]
            if len(set(left)) != len(left) or len(set(right)) != len(right):
                raise ModelError(f"encoding map class {cls_!r} is not injective")

    def forward(self, cls_: str) -> Dict[Any, Any]:
        return {a: b for a, b in self.var_map.get(cls_, ())}

    def backward(self, cls_: str) -> Dict[Any, Any]:
        return {b: a for a, b in self.var_map.get(cls_, ())}


@dataclass(frozen=True)
class BitLayout:
    """Per CSP variable: bit width and first SAT var; value index in stored domain order, little-endian."""
    widths: Tuple[int, ...]
    offsets: Tuple[int, ...]
    sizes: Tuple[int, ...]

    @classmethod
    def for_csp(cls, p: Csp) -> "BitLayout":
        widths, offsets, nxt = [], [], 1
        for v in p.variables:
            w = (len(v.domain) - 1).bit_length() if v.domain else 0
            widths.append(w); offsets.append(nxt); nxt += w
        return cls(tuple(widths), tuple(offsets), tuple(len(v.domain) for v in p.variables))

    @property
    def num_sat_vars(self) -> int:
        return sum(self.widths)

    def bit_var(self, var: int, bit: int) -> int:
        return self.offsets[var] + bit

    def falsifying_literals(self, var: int, index: int) -> List[int]:
        """Literals that are all false exactly when var takes the value at `index`."""
        out = []
        for j in range(self.widths[var]):
            b = self.bit_var(var, j)
            out.append(-b if (index >> j) & 1 else b)
        return out

    def decode(self, var: int, model: Assignment) -> int:
        return sum(1 << j for j in range(self.widths[var]) if model.get(self.bit_var(var, j), False))


# ---------- generators ----------
GenKind = Literal["ksat", "binary_csp"]


@dataclass(frozen=True)
class GenSpec:
    kind: GenKind
    num_vars: int
    seed: int
    num_clauses: int = 1
    width: int = 3
    num_constraints: int = 1
    domain: int = 2
    tightness: float = 0.5

    def __post_init__(self):
        if self.kind not in ("ksat", "binary_csp"):
            raise ModelError(f"unknown generator kind {self.kind!r}")
        sizes = (self.num_vars, self.num_clauses, self.width) if self.kind == "ksat" \
            else (self.num_vars, self.num_constraints, self.domain)
        if min(sizes) < 1:
            raise ModelError("all generator sizes must be >= 1")
        if not 0.0 <= self.tightness <= 1.0:
            raise ModelError("tightness must lie in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ModelError("seed must be a 64-bit unsigned integer")
