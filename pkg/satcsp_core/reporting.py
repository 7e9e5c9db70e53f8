# satcsp_core/reporting.py
from __future__ import annotations
import csv, io, json
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any, Literal, Sequence

from .claims import claim_sort_key
from .errors import SatCspError
from .harness import TheoremReport

ReportFormat = Literal["csv", "structured"]

CSV_COLUMNS = ("claim_id", "instances", "skipped", "violations", "strict_witnesses",
               "incomparability_witnesses", "convention", "pass")


# -------- utils: make any report object JSON-safe ----------
def _to_basic(x: Any) -> Any:
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): _to_basic(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_to_basic(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return [_to_basic(v) for v in sorted(x, key=repr)]
    if is_dataclass(x):
        return _to_basic(asdict(x))
    return str(x)


def csv_row(r: TheoremReport) -> dict:
    lt, gt = r.incomparability
    return {
        "claim_id": r.claim_id,
        "instances": r.instances,
        "skipped": r.skipped,
        "violations": r.violations,
        "strict_witnesses": r.strict_witnesses,
        "incomparability_witnesses": f"{lt}/{gt}",
        "convention": r.convention,
        "pass": "true" if r.passed else "false",
    }


def structured(r: TheoremReport) -> dict:
    data = _to_basic(r)
    lt, gt = r.incomparability
    data.update({"skipped": r.skipped, "violations": r.violations,
                 "strict_witnesses": r.strict_witnesses,
                 "incomparability_witnesses": {"lt": lt, "gt": gt}, "pass": r.passed})
    return data


def emit_report(reports: Sequence[TheoremReport], fmt: ReportFormat = "csv") -> str:
    """Render reports sorted by claim id; no timestamps, so equal runs give equal bytes."""
    if not reports:
        raise SatCspError("no reports to emit")
    ordered = sorted(reports, key=lambda r: claim_sort_key(r.claim_id))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in ordered:
            w.writerow(csv_row(r))
        return buf.getvalue()
    if fmt == "structured":
        return json.dumps({"claims": [structured(r) for r in ordered]}, ensure_ascii=False, indent=2) + "\n"
    raise SatCspError(f"unknown report format {fmt!r}")


def write_report(reports: Sequence[TheoremReport], out_path: str, fmt: ReportFormat = "csv") -> str:
    """Writes the report to out_path (parent folders created) and returns the path."""
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(emit_report(reports, fmt), encoding="utf-8")
    return str(out)


def format_for(path: str) -> ReportFormat:
    return "structured" if path.lower().endswith(".json") else "csv"
