# text-in / data-out operations shared by the CLI and the HTTP service
from __future__ import annotations
from typing import Literal, Tuple

from .csp2sat import csp_to_sat
from .csp_format import parse_csp, write_csp
from .csp_solver import check_solution, fc_solve, mac_solve
from .dimacs import parse_dimacs, write_dimacs
from .errors import SatCspError
from .generators import gen_random
from .oracle import brute_force_csp, brute_force_sat
from .propagation import ac3, gac
from .sat2csp import SAT_TO_CSP
from .sat_solver import check_model, dp_solve, unit_propagate
from .types import Assignment, BranchPlan, Cnf, CspBranchPlan, EncodingMap, GenSpec

CSP_TO_SAT = ("direct", "log", "support")
ENCODINGS = (*SAT_TO_CSP, *CSP_TO_SAT)


def _signed(a: Assignment) -> list:
    return [v if a[v] else -v for v in sorted(a)]


def encode_text(src: Literal["sat", "csp"], encoding: str, text: str, amo: str = "none") -> Tuple[str, EncodingMap]:
    if src == "sat":
        if encoding not in SAT_TO_CSP:
            raise SatCspError(f"{encoding} is not a SAT->CSP encoding ({', '.join(SAT_TO_CSP)})")
        p, m = SAT_TO_CSP[encoding](parse_dimacs(text))
        return write_csp(p), m
    if encoding not in CSP_TO_SAT:
        raise SatCspError(f"{encoding} is not a CSP->SAT encoding ({', '.join(CSP_TO_SAT)})")
    f, m = csp_to_sat(parse_csp(text), encoding, amo=amo)
    return write_dimacs(f), m


def solve_text(solver: Literal["dp", "fc", "mac"], text: str, unit_first: bool = False,
               positive_first: bool = True, validate: bool = False) -> Tuple[dict, bool]:
    """Stats document plus whether the result checked out (model valid, oracle agrees)."""
    if solver == "dp":
        f = parse_dimacs(text)
        st = dp_solve(f, BranchPlan(positive_first=positive_first))
        out = {"solver": "dp", "status": st.status, "decisions_total": st.decisions_total,
               "decisions_positive": st.decisions_positive, "decisions_negative": st.decisions_negative,
               "nodes": st.nodes, "failed_leaves": st.failed_leaves, "propagations": st.propagations,
               "model": _signed(st.model) if st.model is not None else None}
        ok = st.model is None or check_model(f, st.model)
        if validate:
            out["oracle_status"] = brute_force_sat(f).status
    elif solver in ("fc", "mac"):
        p = parse_csp(text)
        st = (fc_solve if solver == "fc" else mac_solve)(p, CspBranchPlan(unit_first=unit_first))
        out = {"solver": solver, "status": st.status, "branches": st.branches, "nodes": st.nodes,
               "failed_leaves": st.failed_leaves, "revisions": st.revisions,
               "solution": {str(k): v for k, v in st.solution.items()} if st.solution is not None else None}
        ok = st.solution is None or check_solution(p, st.solution)
        if validate:
            out["oracle_status"] = brute_force_csp(p).status
    else:
        raise SatCspError(f"unknown solver {solver!r}")
    if validate:
        ok = ok and out["oracle_status"] == out["status"]
    return out, ok


def propagate_text(method: Literal["up", "ac3", "gac"], text: str) -> dict:
    if method == "up":
        r = unit_propagate(parse_dimacs(text))
        return {"method": "up", "conflict": r.conflict, "forced": list(r.forced), "fixpoint": _signed(r.fixpoint)}
    if method not in ("ac3", "gac"):
        raise SatCspError(f"unknown propagation method {method!r}")
    p = parse_csp(text)
    r = ac3(p) if method == "ac3" else gac(p)
    return {"method": method, "wipeout": r.wipeout, "revisions": r.revisions,
            "pruned": [[x, v] for x, v in sorted(r.pruned)],
            "domains": {str(i): list(d) for i, d in enumerate(r.state.domains)}}


def generate_text(spec: GenSpec) -> str:
    inst = gen_random(spec)
    return write_dimacs(inst) if isinstance(inst, Cnf) else write_csp(inst)
