# app_cli/cli.py
from __future__ import annotations
import argparse, json, logging, sys
from pathlib import Path
from typing import List, Optional, Sequence

from satcsp_core.claims import resolve_claims
from satcsp_core.config import load_config, setup_logging
from satcsp_core.csp_format import write_encoding_map
from satcsp_core.errors import SatCspError
from satcsp_core.harness import (CALIBRATED, Calibration, SuiteCache, SuiteSpec,
                                 calibrate_branch_convention, verify_all)
from satcsp_core.reporting import emit_report, format_for
from satcsp_core.service import ENCODINGS, encode_text, generate_text, propagate_text, solve_text
from satcsp_core.types import GenSpec

log = logging.getLogger("satcsp")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SatCspError(f"cannot read {path}: {e}") from e


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")


def _emit(data: dict) -> None:
    print(json.dumps(data, indent=2, ensure_ascii=False))


# ---- encode ----
def cmd_encode(a: argparse.Namespace) -> int:
    if a.src == a.dst:
        raise SatCspError(f"--from {a.src} --to {a.dst}: source and target must differ")
    text, m = encode_text(a.src, a.encoding, _read(a.input), amo=a.amo)
    _write(a.output, text)
    if a.map or a.output != "-":
        _write(a.map or f"{a.output}.map.json", write_encoding_map(m))
    return 0


# ---- solve ----
def cmd_solve(a: argparse.Namespace) -> int:
    out, ok = solve_text(a.solver, _read(a.input), unit_first=a.order == "unit-first",
                         positive_first=not a.negative_first, validate=a.validate)
    _emit(out)
    if not ok:
        log.error("solver result failed validation")
    return 0 if ok else 1


# ---- propagate ----
def cmd_propagate(a: argparse.Namespace) -> int:
    _emit(propagate_text(a.method, _read(a.input)))
    return 0


# ---- gen ----
def cmd_gen(a: argparse.Namespace, cfg: dict) -> int:
    seed = a.seed if a.seed is not None else cfg.get("SEED")
    if seed is None:
        raise SatCspError("gen needs --seed (or SATCSP_SEED)")
    if a.kind == "ksat":
        spec = GenSpec("ksat", a.vars, seed, num_clauses=a.clauses, width=a.width)
    else:
        spec = GenSpec("binary_csp", a.vars, seed, num_constraints=a.constraints,
                       domain=a.domain, tightness=a.tightness)
    _write(a.output, generate_text(spec))
    return 0


# ---- verify ----
def cmd_verify(a: argparse.Namespace, cfg: dict) -> int:
    claims = resolve_claims(a.claims)
    sizes = dict(max_vars=a.max_vars, max_clauses=a.max_clauses, max_width=a.max_width,
                 csp_vars=a.csp_vars, max_domain=a.max_domain)
    seed = a.seed if a.seed is not None else (cfg.get("SEED") or 0)
    spec = SuiteSpec(mode=a.suite, count=a.count, seed=seed, ksat_vars=a.ksat_vars,
                     ksat_clauses=a.ksat_clauses, ksat_width=a.ksat_width,
                     csp_constraints=a.csp_constraints, csp_domain=a.csp_domain,
                     tightness=a.tightness, **sizes)
    suites = SuiteCache(spec)
    calibration = Calibration.load(a.calibration) if a.calibration else Calibration()
    needed = sorted({c.calibrated_by or c.id for c in claims if c.metric == "branch_count"}
                    & set(CALIBRATED) - set(calibration.selected))
    if needed:
        # ids the frozen file does not cover are calibrated in-process on the exhaustive suite
        calib_suites = suites if a.suite == "exhaustive" else SuiteCache(SuiteSpec("exhaustive", **sizes))
        fresh = calibrate_branch_convention(calib_suites, needed, jobs=a.jobs)
        calibration.selected.update(fresh.selected)
        calibration.notes.update(fresh.notes)
    reports = verify_all(claims, suites, calibration, jobs=a.jobs, amo=a.amo)
    fmt = a.format or format_for(a.report)
    _write(a.report, emit_report(reports, fmt))
    asserted = {c.id for c in claims if c.asserted}
    failed = [r.claim_id for r in reports if r.claim_id in asserted and not r.passed]
    for r in reports:
        log.info("%s: %s", r.claim_id, "pass" if r.passed else "FAIL")
    if failed:
        print(f"claims not confirmed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="satcsp", description="SAT/CSP encodings, propagation and search lab")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    e = sub.add_parser("encode", help="translate between DIMACS and CSP documents")
    e.add_argument("--from", dest="src", choices=["sat", "csp"], required=True)
    e.add_argument("--to", dest="dst", choices=["csp", "sat"], required=True)
    e.add_argument("--encoding", choices=ENCODINGS, required=True)
    e.add_argument("--amo", choices=["none", "pairwise"], default="none")
    e.add_argument("--map", help="EncodingMap sidecar path (default OUT.map.json)")
    e.add_argument("input")
    e.add_argument("-o", "--output", required=True)

    s = sub.add_parser("solve", help="run DP, FC or MAC and print search statistics")
    s.add_argument("--solver", choices=["dp", "fc", "mac"], required=True)
    s.add_argument("--order", choices=["static", "unit-first"], default="static")
    s.add_argument("--negative-first", action="store_true", help="DP tries False before True")
    s.add_argument("--validate", action="store_true", help="cross-check the status with the brute-force oracle")
    s.add_argument("input", help="instance file, or - for stdin")

    p = sub.add_parser("propagate", help="unit propagation, AC-3 or GAC to fixpoint")
    p.add_argument("--method", choices=["up", "ac3", "gac"], required=True)
    p.add_argument("input")

    g = sub.add_parser("gen", help="random k-SAT or model-B binary CSP")
    g.add_argument("--kind", choices=["ksat", "bincsp"], required=True)
    g.add_argument("--vars", type=int, required=True)
    g.add_argument("--clauses", type=int, default=1)
    g.add_argument("--width", type=int, default=3)
    g.add_argument("--constraints", type=int, default=1)
    g.add_argument("--domain", type=int, default=2)
    g.add_argument("--tightness", type=float, default=0.5)
    g.add_argument("--seed", type=int)
    g.add_argument("-o", "--output", required=True)

    v = sub.add_parser("verify", help="check claims over a suite and write a report")
    v.add_argument("--claims", default="all", help="all, or ids such as T1 or T6,T9")
    v.add_argument("--suite", choices=["exhaustive", "random"], default="exhaustive")
    v.add_argument("--max-vars", type=int, default=3)
    v.add_argument("--max-clauses", type=int, default=4)
    v.add_argument("--max-width", type=int, default=3)
    v.add_argument("--csp-vars", type=int, default=3)
    v.add_argument("--max-domain", type=int, default=3)
    v.add_argument("--count", type=int, default=100, help="random suite size per input class")
    v.add_argument("--seed", type=int)
    v.add_argument("--ksat-vars", type=int, default=10)
    v.add_argument("--ksat-clauses", type=int, default=43)
    v.add_argument("--ksat-width", type=int, default=3)
    v.add_argument("--csp-constraints", type=int, default=3)
    v.add_argument("--csp-domain", type=int, default=3)
    v.add_argument("--tightness", type=float, default=0.3)
    v.add_argument("--amo", choices=["none", "pairwise"])
    v.add_argument("--calibration", help="frozen calibration JSON (skips in-process calibration)")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--format", choices=["csv", "structured"])
    v.add_argument("--report", required=True)
    return ap


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    cfg = load_config()
    setup_logging(cfg, a.verbose)
    try:
        if a.command == "encode":
            return cmd_encode(a)
        if a.command == "solve":
            return cmd_solve(a)
        if a.command == "propagate":
            return cmd_propagate(a)
        if a.command == "gen":
            return cmd_gen(a, cfg)
        return cmd_verify(a, cfg)
    except SatCspError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run_cli(argv))


if __name__ == "__main__":
    main()
