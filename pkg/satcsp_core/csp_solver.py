# d-way FC and MAC search over binary extensional CSPs
from __future__ import annotations
from typing import Callable, Iterable, Iterator, List, Optional, Tuple

from .errors import ModelError, PartialAssignmentError, UnsupportedConstraintError
from .propagation import ac3
from .types import Csp, CspBranchPlan, CspSearchStats, CspSolution, DomainState

# (state with x assigned, x, assigned so far) -> (consistent, state after propagation)
Propagator = Callable[[DomainState, int, CspSolution], Tuple[bool, DomainState]]


def check_solution(p: Csp, sol: CspSolution) -> bool:
    missing = [v.id for v in p.variables if v.id not in sol]
    if missing:
        raise PartialAssignmentError(f"solution leaves variables {missing} unassigned")
    for v in p.variables:
        if sol[v.id] not in v.domain:
            raise ModelError(f"value {sol[v.id]!r} is outside the domain of variable {v.id}")
    return all(c.permits(tuple(sol[x] for x in c.scope)) for c in p.constraints)


def _require_binary(p: Csp, who: str) -> None:
    if not p.is_binary:
        raise UnsupportedConstraintError(f"{who} supports binary constraints only")


def _pick(candidates: Iterable[int], state: DomainState, unit_first: bool) -> Optional[int]:
    cands = list(candidates)
    if not cands:
        return None
    if unit_first:
        for x in cands:
            if len(state.domains[x]) == 1:
                return x
    return cands[0]


def _search(p: Csp, h: CspBranchPlan, root: DomainState, propagate: Propagator,
            stats: CspSearchStats) -> Optional[CspSolution]:
    order = h.resolved(len(p.variables))
    branching = h.branch_vars
    assigned: CspSolution = {}

    def completion(state: DomainState) -> Optional[CspSolution]:
        if any(not state.domains[x] for x in order if x not in assigned):
            return None
        sol = {x: assigned[x] if x in assigned else state.domains[x][0] for x in order}
        return sol if check_solution(p, sol) else None

    def expand(state: DomainState) -> Tuple[Optional[CspSolution], int]:
        free = [x for x in order if x not in assigned]
        if not free:
            return dict(assigned), -1
        x = _pick((y for y in free if branching is None or y in branching), state, h.unit_first)
        if x is None:
            # every branching variable is set: try the first-value completion before labelling the rest
            done = completion(state)
            if done is not None:
                return done, -1
            x = _pick(free, state, h.unit_first)
        return None, x

    # frame: state before labelling x, x, values of x not tried yet
    stack: List[Tuple[DomainState, int, Iterator[str]]] = []
    state: Optional[DomainState] = root
    while True:
        if state is not None:
            found, x = expand(state)
            if found is not None:
                return found
            stack.append((state, x, iter(h.values(x, state.domains[x]))))
            state = None
        if not stack:
            return None
        parent, x, values = stack[-1]
        assigned.pop(x, None)
        a = next(values, None)
        if a is None:
            stack.pop()
            continue
        stats.branches += 1
        stats.nodes += 1
        ok, nxt = propagate(parent.assign(x, a), x, assigned)
        if not ok:
            stats.failed_leaves += 1
            continue
        assigned[x] = a
        state = nxt


def _finish(stats: CspSearchStats, sol: Optional[CspSolution]) -> CspSearchStats:
    if sol is not None:
        stats.status = "sat"
        stats.solution = dict(sorted(sol.items()))
    return stats


def fc_solve(p: Csp, h: Optional[CspBranchPlan] = None) -> CspSearchStats:
    """Classic binary forward checking: only unassigned neighbours of the
    just-assigned variable are revised against its value."""
    _require_binary(p, "fc_solve")
    h = h or CspBranchPlan()
    stats = CspSearchStats(nodes=1)
    root = DomainState.initial(p)
    if root.wipeout:
        stats.failed_leaves = 1
        return stats

    def forward(state: DomainState, x: int, assigned: CspSolution) -> Tuple[bool, DomainState]:
        a = state.domains[x][0]
        doms = list(state.domains)
        for ci in p.constraints_on[x]:
            c = p.constraints[ci]
            y = c.scope[1] if c.scope[0] == x else c.scope[0]
            if y in assigned:
                continue
            stats.revisions += 1
            if c.scope[0] == x:
                keep = tuple(b for b in doms[y] if c.permits((a, b)))
            else:
                keep = tuple(b for b in doms[y] if c.permits((b, a)))
            doms[y] = keep
            if not keep:
                return False, state
        return True, DomainState(tuple(doms))

    return _finish(stats, _search(p, h, root, forward, stats))


def mac_solve(p: Csp, h: Optional[CspBranchPlan] = None) -> CspSearchStats:
    _require_binary(p, "mac_solve")
    h = h or CspBranchPlan()
    stats = CspSearchStats(nodes=1)
    r = ac3(p)
    stats.revisions += r.revisions
    if r.wipeout:
        stats.failed_leaves = 1
        return stats

    def maintain(state: DomainState, x: int, assigned: CspSolution) -> Tuple[bool, DomainState]:
        res = ac3(p, state)
        stats.revisions += res.revisions
        return (not res.wipeout), res.state

    return _finish(stats, _search(p, h, r.state, maintain, stats))
