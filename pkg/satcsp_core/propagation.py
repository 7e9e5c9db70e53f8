# AC-3 (binary) and GAC (any arity) over extensional constraints
from __future__ import annotations
from collections import deque
from dataclasses import dataclass
from math import prod
from typing import FrozenSet, List, Optional, Set, Tuple

from .errors import UnsupportedConstraintError
from .types import Csp, DomainState, ExtensionalConstraint


@dataclass(frozen=True)
class PropagationResult:
    state: DomainState
    wipeout: bool
    pruned: FrozenSet[Tuple[int, str]]
    revisions: int = 0


def _finish(before: DomainState, doms: List[List[str]], revisions: int) -> PropagationResult:
    after = DomainState(tuple(tuple(d) for d in doms))
    return PropagationResult(after, after.wipeout, after.pruned_from(before), revisions)


def ac3(p: Csp, s: Optional[DomainState] = None) -> PropagationResult:
    """Arc queue seeded in (constraint, direction) order and served FIFO."""
    if not p.is_binary:
        raise UnsupportedConstraintError("ac3 handles binary constraints only; use gac for higher arity")
    s = s or DomainState.initial(p)
    doms = [list(d) for d in s.domains]
    if any(not d for d in doms):
        return _finish(s, doms, 0)
    queue = deque((ci, d) for ci in range(len(p.constraints)) for d in (0, 1))
    queued = set(queue)
    revisions = 0
    while queue:
        arc = queue.popleft()
        queued.discard(arc)
        ci, d = arc
        c = p.constraints[ci]
        x, y = c.scope[d], c.scope[1 - d]
        revisions += 1
        if d == 0:
            keep = [a for a in doms[x] if any(c.permits((a, b)) for b in doms[y])]
        else:
            keep = [a for a in doms[x] if any(c.permits((b, a)) for b in doms[y])]
        if len(keep) == len(doms[x]):
            continue
        doms[x] = keep
        if not keep:
            break
        for cj in p.constraints_on[x]:
            if cj == ci:
                continue
            other = (cj, 1 if p.constraints[cj].scope[0] == x else 0)
            if other not in queued:
                queue.append(other)
                queued.add(other)
    return _finish(s, doms, revisions)


def _supported(c: ExtensionalConstraint, pos: int, a: str, sets: List[Set[str]]) -> bool:
    scope = c.scope
    if c.semantics == "allows":
        return any(t[pos] == a and all(t[i] in sets[x] for i, x in enumerate(scope)) for t in c.tuples)
    # forbids: a support exists unless every live tuple through a is listed
    live = prod(len(sets[x]) for i, x in enumerate(scope) if i != pos)
    blocked = sum(1 for t in c.tuples
                  if t[pos] == a and all(t[i] in sets[x] for i, x in enumerate(scope) if i != pos))
    return blocked < live


def gac(p: Csp, s: Optional[DomainState] = None) -> PropagationResult:
    s = s or DomainState.initial(p)
    doms = [list(d) for d in s.domains]
    if any(not d for d in doms):
        return _finish(s, doms, 0)
    sets = [set(d) for d in doms]
    queue = deque(range(len(p.constraints)))
    queued = set(queue)
    revisions = 0
    while queue:
        ci = queue.popleft()
        queued.discard(ci)
        c = p.constraints[ci]
        changed: List[int] = []
        stable = False
        while not stable:
            stable = True
            for pos, x in enumerate(c.scope):
                revisions += 1
                keep = [a for a in doms[x] if _supported(c, pos, a, sets)]
                if len(keep) == len(doms[x]):
                    continue
                doms[x] = keep
                sets[x] = set(keep)
                if not keep:
                    return _finish(s, doms, revisions)
                changed.append(x)
                stable = False
        for x in changed:
            for cj in p.constraints_on[x]:
                if cj != ci and cj not in queued:
                    queue.append(cj)
                    queued.add(cj)
    return _finish(s, doms, revisions)
