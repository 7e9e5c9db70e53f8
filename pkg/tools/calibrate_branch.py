# tools/calibrate_branch.py
# Freeze the branch-counting convention for each branch-count claim (T4, T6, T7, T9, T10) into
# satcsp_core/data/calibration.json; `satcsp verify --calibration FILE` reads it back.
from __future__ import annotations
import argparse, sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path: sys.path.insert(0, str(ROOT))

from satcsp_core.config import load_config, setup_logging  # noqa: E402
from satcsp_core.errors import SatCspError  # noqa: E402
from satcsp_core.harness import CALIBRATED, SuiteCache, SuiteSpec, calibrate_branch_convention  # noqa: E402

DATA = ROOT / "satcsp_core" / "data"
CAL_PATH = DATA / "calibration.json"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--claims", default=",".join(CALIBRATED))
    ap.add_argument("--max-vars", type=int, default=3)
    ap.add_argument("--max-clauses", type=int, default=4)
    ap.add_argument("--max-width", type=int, default=3)
    ap.add_argument("--csp-vars", type=int, default=3)
    ap.add_argument("--max-domain", type=int, default=3)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("-o", "--output", default=str(CAL_PATH))
    ap.add_argument("-v", "--verbose", action="store_true")
    a = ap.parse_args(argv)
    setup_logging(load_config(), a.verbose)

    spec = SuiteSpec("exhaustive", max_vars=a.max_vars, max_clauses=a.max_clauses, max_width=a.max_width,
                     csp_vars=a.csp_vars, max_domain=a.max_domain)
    ids = [x.strip().upper() for x in a.claims.split(",") if x.strip()]
    try:
        cal = calibrate_branch_convention(SuiteCache(spec), ids, jobs=a.jobs)
    except SatCspError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    out = Path(a.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(cal.to_json(), encoding="utf-8")
    print(f"Wrote {out}")
    for cid, s in sorted(cal.selected.items()):
        print(f"{cid}: {s.label()}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
