# unit propagation and an instrumented DPLL (no learning, no restarts)
from __future__ import annotations
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from .errors import PartialAssignmentError
from .types import Assignment, BranchPlan, Cnf, SearchStats, lit_value, var_of


@dataclass(frozen=True)
class UPResult:
    fixpoint: Assignment
    conflict: bool
    forced_count: int
    forced: Tuple[int, ...] = ()


def unit_propagate(f: Cnf, a: Optional[Assignment] = None) -> UPResult:
    """Clause-order sweep, restarting from the first clause after every forced literal."""
    cur: Assignment = dict(a or {})
    forced = []
    while True:
        for c in f.clauses:
            last_free = 0
            free = 0
            satisfied = False
            for l in c:
                v = cur.get(var_of(l))
                if v is None:
                    free += 1
                    last_free = l
                elif v == (l > 0):
                    satisfied = True
                    break
            if satisfied:
                continue
            if free == 0:
                return UPResult(cur, True, len(forced), tuple(forced))
            if free == 1:
                cur[var_of(last_free)] = last_free > 0
                forced.append(last_free)
                break
        else:
            return UPResult(cur, False, len(forced), tuple(forced))


def _all_satisfied(f: Cnf, a: Assignment) -> bool:
    return all(any(lit_value(l, a) for l in c) for c in f.clauses)


def dp_solve(f: Cnf, h: Optional[BranchPlan] = None) -> SearchStats:
    """Chronological DPLL over an explicit stack; the assignment is undone from a trail."""
    h = h or BranchPlan()
    order = h.resolved(f.num_vars)
    polarity = (True, False) if h.positive_first else (False, True)
    stats = SearchStats()
    a: Assignment = {}
    trail: List[int] = []

    def enter() -> bool:
        stats.nodes += 1
        r = unit_propagate(f, a)
        stats.propagations += r.forced_count
        for l in r.forced:
            a[var_of(l)] = l > 0
            trail.append(var_of(l))
        if r.conflict:
            stats.failed_leaves += 1
            return False
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            del a[trail.pop()]

    # frame: branching variable, its untried values, trail length before the decision
    stack: List[Tuple[int, Iterator[bool], int]] = []
    ok = enter()
    while True:
        if ok:
            if _all_satisfied(f, a):
                stats.status = "sat"
                stats.model = {v: a.get(v, False) for v in range(1, f.num_vars + 1)}
                return stats
            v = next(x for x in order if x not in a)
            stack.append((v, iter(polarity), len(trail)))
        if not stack:
            return stats
        v, vals, mark = stack[-1]
        undo(mark)
        val = next(vals, None)
        if val is None:
            stack.pop()
            ok = False
            continue
        stats.decisions_total += 1
        if val:
            stats.decisions_positive += 1
        else:
            stats.decisions_negative += 1
        a[v] = val
        trail.append(v)
        ok = enter()


def check_model(f: Cnf, a: Assignment) -> bool:
    missing = [v for v in range(1, f.num_vars + 1) if v not in a]
    if missing:
        raise PartialAssignmentError(f"assignment leaves variables {missing} unassigned")
    return _all_satisfied(f, a)
