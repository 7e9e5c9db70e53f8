from __future__ import annotations
import json, logging, typing as t

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from satcsp_core.config import load_config, setup_logging
from satcsp_core.csp_format import write_encoding_map
from satcsp_core.errors import SatCspError
from satcsp_core.service import ENCODINGS, encode_text, generate_text, propagate_text, solve_text
from satcsp_core.types import GenSpec

CFG = load_config()
setup_logging(CFG)
log = logging.getLogger("satcsp.api")

app = FastAPI(title="SAT/CSP Lab API")

ALLOWED_ORIGINS = [
    "http://localhost:3000",
    "http://127.0.0.1:3000",
]

app.add_middleware(
    CORSMiddleware,
    allow_origins=ALLOWED_ORIGINS,
    allow_methods=["*"],
    allow_headers=["*"],
    allow_credentials=False,
)


@app.get("/")
def root():
    return {"status": "ok", "service": "satcsp-lab"}


# ---- Schemas ----
class EncodeReq(BaseModel):
    source: t.Literal["sat", "csp"]
    encoding: str
    instance: str       # DIMACS text or CSP document text
    amo: t.Literal["none", "pairwise"] = "none"


class SolveReq(BaseModel):
    solver: t.Literal["dp", "fc", "mac"]
    instance: str
    order: t.Literal["static", "unit-first"] = "static"
    negative_first: bool = False
    validate_oracle: bool = Field(False, alias="validate")


class PropagateReq(BaseModel):
    method: t.Literal["up", "ac3", "gac"]
    instance: str


class GenReq(BaseModel):
    kind: t.Literal["ksat", "bincsp"]
    vars: int
    seed: int | None = None
    clauses: int = 1
    width: int = 3
    constraints: int = 1
    domain: int = 2
    tightness: float = 0.5


def _unprocessable(e: SatCspError) -> HTTPException:
    log.info("rejected request: %s", e)
    return HTTPException(422, str(e))


# ---- Health ----
@app.get("/health")
def health():
    return {
        "status": "ok",
        "encodings": list(ENCODINGS),
        "tuple_budget": CFG["TUPLE_BUDGET"],
        "max_oracle_vars": CFG["MAX_ORACLE_VARS"],
    }


@app.post("/encode")
def encode(req: EncodeReq):
    try:
        text, m = encode_text(req.source, req.encoding, req.instance, amo=req.amo)
    except SatCspError as e:
        raise _unprocessable(e)
    return {"output": text, "map": json.loads(write_encoding_map(m))}


@app.post("/solve")
def solve(req: SolveReq):
    try:
        out, ok = solve_text(req.solver, req.instance, unit_first=req.order == "unit-first",
                             positive_first=not req.negative_first, validate=req.validate_oracle)
    except SatCspError as e:
        raise _unprocessable(e)
    out["valid"] = ok
    return out


@app.post("/propagate")
def propagate(req: PropagateReq):
    try:
        return propagate_text(req.method, req.instance)
    except SatCspError as e:
        raise _unprocessable(e)


@app.post("/gen")
def gen(req: GenReq):
    seed = req.seed if req.seed is not None else CFG.get("SEED")
    if seed is None:
        raise HTTPException(422, "seed is required (or set SATCSP_SEED)")
    try:
        if req.kind == "ksat":
            spec = GenSpec("ksat", req.vars, seed, num_clauses=req.clauses, width=req.width)
        else:
            spec = GenSpec("binary_csp", req.vars, seed, num_constraints=req.constraints,
                           domain=req.domain, tightness=req.tightness)
        return {"kind": req.kind, "seed": seed, "instance": generate_text(spec)}
    except SatCspError as e:
        raise _unprocessable(e)
