"""
Claim registry: the UP/AC and DP/FC/MAC relationships checked by the harness.

Each claim evaluates one instance into PartOutcome records, one per part.
Both sides of a branch-count part run under the matched-heuristic contract:
a static order over the original variables and values, transported to the
encoded side so the CSP solver tries values in the order DP reaches them.

  hidden      prop variables first in index order, branching only on them,
              value order T/F mirroring DP polarity
  dual        clause variables in clause order; tuples agreeing with DP's first
              polarity on the lowest-index variable first
  literal     clause variables in clause order; literals DP makes true first,
              then by variable index
  direct      selectors in ascending SAT index, i.e. (variable, value) order
  log         bits in ascending SAT index; CSP values ranked by bit pattern,
              bit 0 first, DP's first polarity before the other
"""
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Literal, Optional, Tuple, Union

from .csp2sat import encode_direct, encode_log, encode_support
from .csp_solver import fc_solve, mac_solve
from .errors import SatCspError
from .propagation import ac3
from .sat2csp import BOOL, encode_dual, encode_hidden, encode_literal, satisfying_tuples
from .sat_solver import dp_solve, unit_propagate
from .types import (BranchPlan, Cnf, Csp, CspBranchPlan, CspSearchStats, EncodingMap,
                    SearchStats, var_of)

Quantifier = Literal["dominance", "equivalence", "incomparability"]
Metric = Literal["conflict_detection", "pruned_set", "branch_count"]
PartKind = Literal["implies", "iff", "at_most", "equal", "incomparable"]
InputClass = Literal["sat", "csp"]


@dataclass(frozen=True)
class ClaimSettings:
    """Counting convention and heuristic knobs frozen by calibration."""
    convention: str = "failed_leaves"
    positive_first: bool = True
    unit_first: bool = False
    amo: str = "none"

    def label(self) -> str:
        pol = "positive-first" if self.positive_first else "negative-first"
        rule = "unit-first" if self.unit_first else "static"
        return f"{self.convention}/{pol}/{rule}/amo={self.amo}"


@dataclass
class PartOutcome:
    part: str
    kind: PartKind
    lhs: Union[bool, int]
    rhs: Union[bool, int]
    mismatch: bool = False  # correspondence failure alongside the main comparison
    degenerate: bool = False
    detail: str = ""

    def category(self) -> str:
        """One of skip, violation, strict, lt, gt, ok."""
        if self.degenerate:
            return "skip"
        if self.mismatch:
            return "violation"
        l, r = self.lhs, self.rhs
        if self.kind == "implies":
            if l and not r:
                return "violation"
            return "strict" if r and not l else "ok"
        if self.kind in ("iff", "equal"):
            return "violation" if l != r else "ok"
        if self.kind == "at_most":
            if l > r:
                return "violation"
            return "strict" if l < r else "ok"
        if l < r:
            return "lt"
        return "gt" if l > r else "ok"


Evaluator = Callable[[Union[Cnf, Csp], ClaimSettings], List[PartOutcome]]


@dataclass(frozen=True)
class TheoremClaim:
    id: str
    description: str
    quantifier: Quantifier
    metric: Metric
    input_class: InputClass
    lhs: str
    rhs: str
    evaluate: Evaluator = field(repr=False, compare=False)
    calibrated_by: Optional[str] = None  # claim whose calibrated settings apply
    asserted: bool = True  # False: the relation is only observed and reported


# ---------- matched plans ----------
def _dp_plan(s: ClaimSettings) -> BranchPlan:
    return BranchPlan(positive_first=s.positive_first)


def _first_bool(s: ClaimSettings) -> str:
    return "T" if s.positive_first else "F"


def _hidden_plan(f: Cnf, m: EncodingMap, s: ClaimSettings) -> CspBranchPlan:
    n = f.num_vars
    values = BOOL[::-1] if s.positive_first else BOOL
    return CspBranchPlan(value_order={x: values for x in range(n)}, unit_first=s.unit_first,
                         branch_vars=frozenset(range(n)))


def _dual_plan(f: Cnf, m: EncodingMap, s: ClaimSettings) -> CspBranchPlan:
    """Tuples ranked by the DP subtree that first reaches them: variables in index
    order, each agreeing with DP's first polarity before disagreeing."""
    first = _first_bool(s)
    scopes = m.metadata["scopes"]
    order: Dict[int, Tuple[str, ...]] = {}
    for i, x in m.forward("clause").items():
        positions = sorted(range(len(scopes[i])), key=scopes[i].__getitem__)
        order[x] = tuple(sorted(satisfying_tuples(f.clauses[i]),
                                key=lambda t: [t[pos] != first for pos in positions]))
    return CspBranchPlan(value_order=order, unit_first=s.unit_first)


def _literal_plan(f: Cnf, m: EncodingMap, s: ClaimSettings) -> CspBranchPlan:
    """Literals DP makes true on its first branch come first, then by variable index."""
    def rank(l: int) -> Tuple[bool, int]:
        return (l > 0) != s.positive_first, var_of(l)

    order = {x: tuple(str(l) for l in sorted(f.clauses[i], key=rank)) for i, x in m.forward("clause").items()}
    return CspBranchPlan(value_order=order, unit_first=s.unit_first)


def _branch_part(part: str, kind: PartKind, lhs: Union[SearchStats, CspSearchStats],
                 rhs: Union[SearchStats, CspSearchStats], s: ClaimSettings) -> PartOutcome:
    def branched(st) -> int:
        return st.decisions_total if isinstance(st, SearchStats) else st.branches

    out = PartOutcome(part, kind, lhs.metric(s.convention), rhs.metric(s.convention))
    out.degenerate = branched(lhs) == 0 and branched(rhs) == 0
    if lhs.status != rhs.status:
        out.mismatch = True
        out.detail = f"status {lhs.status} vs {rhs.status}"
    return out


# ---------- SAT-side claims ----------
def _trivial(f: Cnf, part: str, kind: PartKind) -> List[PartOutcome]:
    return [PartOutcome(part, kind, True, True, degenerate=True, detail="empty clause")]


def _dual_pruning_expected(f: Cnf, m: EncodingMap, forced: Tuple[int, ...]) -> FrozenSet[Tuple[int, str]]:
    """Dual values contradicting a forced literal, transported through the clause map."""
    fixed = {abs(l): "T" if l > 0 else "F" for l in forced}
    scopes = m.metadata["scopes"]
    out = set()
    for i, x in m.forward("clause").items():
        for pos, v in enumerate(scopes[i]):
            if v in fixed:
                out.update((x, t) for t in satisfying_tuples(f.clauses[i]) if t[pos] != fixed[v])
    return frozenset(out)


def eval_t1(f: Cnf, s: ClaimSettings) -> List[PartOutcome]:
    if f.has_empty_clause:
        return _trivial(f, "up_vs_ac_dual", "implies")
    up = unit_propagate(f)
    p, m = encode_dual(f)
    r = ac3(p)
    out = PartOutcome("up_vs_ac_dual", "implies", up.conflict, r.wipeout)
    if not up.conflict and not r.wipeout:
        missing = _dual_pruning_expected(f, m, up.forced) - r.pruned
        if missing:
            out.mismatch = True
            out.detail = f"forced literals not transported: {sorted(missing)}"
    return [out]


def eval_t2(f: Cnf, s: ClaimSettings) -> List[PartOutcome]:
    if f.has_empty_clause:
        return _trivial(f, "up_vs_ac_hidden", "iff")
    up = unit_propagate(f)
    p, m = encode_hidden(f)
    r = ac3(p)
    out = PartOutcome("up_vs_ac_hidden", "iff", up.conflict, r.wipeout)
    if not up.conflict and not r.wipeout:
        prop = m.forward("prop")
        expected = frozenset((prop[abs(l)], "F" if l > 0 else "T") for l in up.forced)
        observed = frozenset((x, a) for x, a in r.pruned if x < f.num_vars)
        if expected != observed:
            out.mismatch = True
            out.detail = f"forced {sorted(expected)} vs pruned {sorted(observed)}"
    return [out]


def eval_t3(f: Cnf, s: ClaimSettings) -> List[PartOutcome]:
    if f.has_empty_clause:
        return _trivial(f, "up_vs_ac_literal", "iff")
    up = unit_propagate(f)
    p, _ = encode_literal(f)
    return [PartOutcome("up_vs_ac_literal", "iff", up.conflict, ac3(p).wipeout)]


PlanFor = Callable[[Cnf, EncodingMap, ClaimSettings], CspBranchPlan]


def _dp_vs(f: Cnf, s: ClaimSettings, part: str, kind: PartKind,
           encode, solve, plan: PlanFor) -> List[PartOutcome]:
    if f.has_empty_clause:
        return _trivial(f, part, kind)
    p, m = encode(f)
    return [_branch_part(part, kind, dp_solve(f, _dp_plan(s)), solve(p, plan(f, m, s)), s)]


def eval_t4(f: Cnf, s: ClaimSettings) -> List[PartOutcome]:
    return _dp_vs(f, s, "dp_vs_fc_dual", "at_most", encode_dual, fc_solve, _dual_plan)


def eval_t5(f: Cnf, s: ClaimSettings) -> List[PartOutcome]:
    return _dp_vs(f, s, "dp_vs_mac_dual", "incomparable", encode_dual, mac_solve, _dual_plan)


def eval_t6(f: Cnf, s: ClaimSettings) -> List[PartOutcome]:
    return _dp_vs(f, s, "dp_vs_mac_hidden", "equal", encode_hidden, mac_solve, _hidden_plan)


def eval_t7(f: Cnf, s: ClaimSettings) -> List[PartOutcome]:
    return _dp_vs(f, s, "dp_vs_mac_literal", "at_most", encode_literal, mac_solve, _literal_plan)


# ---------- CSP-side claims ----------
def _falsified(m: EncodingMap, fixpoint) -> FrozenSet[Tuple[int, str]]:
    return frozenset(key for key, v in m.forward("selector").items() if fixpoint.get(v) is False)


def _log_falsified(p: Csp, m: EncodingMap, fixpoint) -> FrozenSet[Tuple[int, str]]:
    """Values with a bit UP fixed against their pattern."""
    out = set()
    for (x, j), b in m.forward("bit").items():
        val = fixpoint.get(b)
        if val is None:
            continue
        out.update((x, a) for idx, a in enumerate(p.domain(x)) if bool((idx >> j) & 1) != val)
    return frozenset(out)


def eval_t8(p: Csp, s: ClaimSettings) -> List[PartOutcome]:
    fd, md = encode_direct(p, amo=s.amo)
    fl, ml = encode_log(p)
    up_direct = unit_propagate(fd)
    up_log = unit_propagate(fl)
    r = ac3(p)
    log_part = PartOutcome("up_log_vs_up_direct", "implies", up_log.conflict, up_direct.conflict)
    direct_part = PartOutcome("up_direct_vs_ac", "implies", up_direct.conflict, r.wipeout)
    if not up_log.conflict and not up_direct.conflict:
        missing = _log_falsified(p, ml, up_log.fixpoint) - _falsified(md, up_direct.fixpoint)
        if missing:
            log_part.mismatch = True
            log_part.detail = f"log UP removes values direct UP keeps: {sorted(missing)}"
    if not up_direct.conflict and not r.wipeout:
        extra = _falsified(md, up_direct.fixpoint) - r.pruned
        if extra:
            direct_part.mismatch = True
            direct_part.detail = f"UP removes values AC keeps: {sorted(extra)}"
    return [log_part, direct_part]


def _csp_plan(s: ClaimSettings) -> CspBranchPlan:
    return CspBranchPlan(unit_first=s.unit_first)


def _log_plan(p: Csp, m: EncodingMap, s: ClaimSettings) -> CspBranchPlan:
    """Values in the order DP on the log encoding reaches their bit patterns:
    bit 0 first, each bit trying DP's first polarity before the other."""
    widths = m.metadata["widths"]
    order: Dict[int, Tuple[str, ...]] = {}
    for v in p.variables:
        bits = range(widths[v.id])
        ranked = sorted(range(len(v.domain)),
                        key=lambda idx: [bool((idx >> j) & 1) != s.positive_first for j in bits])
        order[v.id] = tuple(v.domain[idx] for idx in ranked)
    return CspBranchPlan(value_order=order, unit_first=s.unit_first)


def eval_t9(p: Csp, s: ClaimSettings) -> List[PartOutcome]:
    f, _ = encode_direct(p, amo=s.amo)
    dp = dp_solve(f, _dp_plan(s))
    return [
        _branch_part("dp_direct_vs_fc", "equal", dp, fc_solve(p, _csp_plan(s)), s),
        _branch_part("mac_vs_dp_direct", "at_most", mac_solve(p, _csp_plan(s)), dp, s),
    ]


def eval_t10(p: Csp, s: ClaimSettings) -> List[PartOutcome]:
    f, m = encode_log(p)
    dp = dp_solve(f, _dp_plan(s))
    plan = _log_plan(p, m, s)
    return [
        _branch_part("fc_vs_dp_log", "at_most", fc_solve(p, plan), dp, s),
        _branch_part("mac_vs_dp_log", "at_most", mac_solve(p, plan), dp, s),
    ]


def eval_s1(p: Csp, s: ClaimSettings) -> List[PartOutcome]:
    f, m = encode_support(p)
    up = unit_propagate(f)
    r = ac3(p)
    out = PartOutcome("up_support_vs_ac", "iff", up.conflict, r.wipeout)
    if not up.conflict and not r.wipeout:
        falsified = _falsified(m, up.fixpoint)
        if falsified != r.pruned:
            out.mismatch = True
            out.detail = f"UP falsified {sorted(falsified)} vs AC pruned {sorted(r.pruned)}"
    return [out]


CLAIMS: Dict[str, TheoremClaim] = {c.id: c for c in (
    TheoremClaim("T1", "UP conflict implies AC wipeout on the dual encoding (strict)",
                 "dominance", "conflict_detection", "sat", "UP(F)", "AC(dual(F))", eval_t1),
    TheoremClaim("T2", "AC on the hidden variable encoding does the same work as UP",
                 "equivalence", "pruned_set", "sat", "UP(F)", "AC(hidden(F))", eval_t2),
    TheoremClaim("T3", "AC on the literal encoding compared with UP",
                 "equivalence", "conflict_detection", "sat", "UP(F)", "AC(literal(F))", eval_t3,
                 asserted=False),
    TheoremClaim("T4", "DP strictly dominates FC on the dual encoding",
                 "dominance", "branch_count", "sat", "DP(F)", "FC(dual(F))", eval_t4),
    TheoremClaim("T5", "DP is incomparable to MAC on the dual encoding",
                 "incomparability", "branch_count", "sat", "DP(F)", "MAC(dual(F))", eval_t5,
                 calibrated_by="T4"),
    TheoremClaim("T6", "DP explores as many branches as MAC on the hidden variable encoding",
                 "equivalence", "branch_count", "sat", "DP(F)", "MAC(hidden(F))", eval_t6),
    TheoremClaim("T7", "DP strictly dominates MAC on the literal encoding",
                 "dominance", "branch_count", "sat", "DP(F)", "MAC(literal(F))", eval_t7),
    TheoremClaim("T8", "UP on the direct encoding sits between UP on the log encoding and AC",
                 "dominance", "conflict_detection", "csp", "UP(log(P)) / UP(direct(P))",
                 "UP(direct(P)) / AC(P)", eval_t8),
    TheoremClaim("T9", "DP on the direct encoding matches FC and is dominated by MAC",
                 "equivalence", "branch_count", "csp", "DP(direct(P))", "FC(P) / MAC(P)", eval_t9),
    TheoremClaim("T10", "DP on the log encoding is strictly dominated by FC and MAC",
                 "dominance", "branch_count", "csp", "FC(P) / MAC(P)", "DP(log(P))", eval_t10),
    TheoremClaim("S1", "UP on the support encoding does exactly the work of AC",
                 "equivalence", "pruned_set", "csp", "UP(support(P))", "AC(P)", eval_s1),
)}


def claim_sort_key(claim_id: str) -> Tuple[str, int]:
    return claim_id[0], int(claim_id[1:])


def resolve_claims(selector: str) -> List[TheoremClaim]:
    """'all', a single id, or a comma-separated list of ids."""
    if selector == "all":
        ids = list(CLAIMS)
    else:
        ids = [x.strip().upper() for x in selector.split(",") if x.strip()]
    unknown = [i for i in ids if i not in CLAIMS]
    if unknown:
        raise SatCspError(f"unknown claim id(s): {', '.join(unknown)}")
    return [CLAIMS[i] for i in sorted(set(ids), key=claim_sort_key)]
