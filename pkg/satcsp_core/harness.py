"""
Claim verification and branch-convention calibration.

verify_claim runs a claim over a suite and folds the per-instance outcomes into
a TheoremReport. calibrate_branch_convention searches the candidate settings
(counting convention, DP polarity, CSP variable rule, AMO) for each branch-count
claim and freezes the first one under which the claim passes.
"""
from __future__ import annotations
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from functools import partial
from itertools import product
from pathlib import Path
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple, Union

from .claims import CLAIMS, ClaimSettings, PartOutcome, TheoremClaim, claim_sort_key
from .config import load_config
from .csp_format import write_csp
from .dimacs import write_dimacs
from .errors import SatCspError
from .generators import TinyFamily, enumerate_tiny, random_suite
from .types import CONVENTIONS, Cnf, Csp

log = logging.getLogger(__name__)

Instance = Union[Cnf, Csp]
WitnessCategory = Literal["violation", "strict", "lt", "gt"]


@dataclass
class Witness:
    index: int
    part: str
    category: WitnessCategory
    lhs: Union[bool, int]
    rhs: Union[bool, int]
    payload: str
    detail: str = ""


@dataclass
class PartTally:
    part: str
    kind: str
    instances: int = 0
    skipped: int = 0
    violations: int = 0
    strict: int = 0
    lt: int = 0
    gt: int = 0
    lhs_only: int = 0  # boolean parts: lhs true, rhs false
    rhs_only: int = 0

    def passed(self) -> bool:
        if self.violations:
            return False
        if self.kind in ("implies", "at_most"):
            return self.strict > 0
        if self.kind == "incomparable":
            return self.lt > 0 and self.gt > 0
        return True


@dataclass
class TheoremReport:
    claim_id: str
    description: str
    quantifier: str
    instances: int
    convention: str
    parts: List[PartTally] = field(default_factory=list)
    witnesses: List[Witness] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def skipped(self) -> int:
        return max((p.skipped for p in self.parts), default=0)

    @property
    def violations(self) -> int:
        return sum(p.violations for p in self.parts)

    @property
    def strict_witnesses(self) -> int:
        return sum(p.strict for p in self.parts)

    @property
    def incomparability(self) -> Tuple[int, int]:
        return sum(p.lt for p in self.parts), sum(p.gt for p in self.parts)

    @property
    def passed(self) -> bool:
        return bool(self.parts) and all(p.passed() for p in self.parts)


# ---------- calibration record ----------
@dataclass
class Calibration:
    selected: Dict[str, ClaimSettings] = field(default_factory=dict)
    notes: Dict[str, List[str]] = field(default_factory=dict)

    def settings_for(self, claim: TheoremClaim) -> Tuple[ClaimSettings, bool]:
        """Settings for the claim and whether they came from calibration."""
        for key in (claim.id, claim.calibrated_by):
            if key and key in self.selected:
                return self.selected[key], True
        return ClaimSettings(), False

    def to_json(self) -> str:
        data = {"selected": {k: asdict(v) for k, v in sorted(self.selected.items())},
                "notes": dict(sorted(self.notes.items()))}
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Calibration":
        try:
            data = json.loads(text)
            selected = {k: ClaimSettings(**v) for k, v in data.get("selected", {}).items()}
        except (ValueError, TypeError, AttributeError) as e:
            raise SatCspError(f"invalid calibration file: {e}") from e
        return cls(selected, {k: list(v) for k, v in data.get("notes", {}).items()})

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Calibration":
        try:
            return cls.from_json(Path(path).read_text(encoding="utf-8"))
        except OSError as e:
            raise SatCspError(f"cannot read calibration file {path}: {e}") from e


# ---------- suites ----------
@dataclass(frozen=True)
class SuiteSpec:
    mode: Literal["exhaustive", "random"] = "exhaustive"
    max_vars: int = 3
    max_clauses: int = 4
    max_width: int = 3
    csp_vars: int = 3
    max_domain: int = 3
    count: int = 100
    seed: int = 0
    ksat_vars: int = 10
    ksat_clauses: int = 43
    ksat_width: int = 3
    csp_constraints: int = 3
    csp_domain: int = 3
    tightness: float = 0.3

    def build(self, input_class: str) -> List[Instance]:
        if self.mode == "exhaustive":
            if input_class == "sat":
                fam = TinyFamily("sat", self.max_vars, self.max_clauses, self.max_width)
            else:
                fam = TinyFamily("csp", self.csp_vars, max_domain=self.max_domain)
            return list(enumerate_tiny(fam))
        if input_class == "sat":
            return list(random_suite("ksat", self.count, self.seed, num_vars=self.ksat_vars,
                                     num_clauses=self.ksat_clauses, width=self.ksat_width))
        return list(random_suite("binary_csp", self.count, self.seed, num_vars=self.csp_vars,
                                 num_constraints=self.csp_constraints, domain=self.csp_domain,
                                 tightness=self.tightness))


class SuiteCache:
    """Builds each input class's suite once per run."""

    def __init__(self, spec: SuiteSpec):
        self.spec = spec
        self._built: Dict[str, List[Instance]] = {}

    def get(self, input_class: str) -> List[Instance]:
        if input_class not in self._built:
            self._built[input_class] = self.spec.build(input_class)
            log.info("%s %s suite: %d instances", self.spec.mode, input_class, len(self._built[input_class]))
        return self._built[input_class]


# ---------- verification ----------
def payload_of(inst: Instance) -> str:
    return write_dimacs(inst) if isinstance(inst, Cnf) else write_csp(inst)


def _evaluate(claim_id: str, settings: ClaimSettings, inst: Instance) -> List[PartOutcome]:
    return CLAIMS[claim_id].evaluate(inst, settings)


def _outcomes(claim: TheoremClaim, suite: Sequence[Instance], settings: ClaimSettings,
              jobs: int) -> Iterable[List[PartOutcome]]:
    fn = partial(_evaluate, claim.id, settings)
    if jobs <= 1:
        return map(fn, suite)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map keeps suite order, so reports do not depend on the worker count
        return list(pool.map(fn, suite, chunksize=max(1, len(suite) // (jobs * 8))))


def run_claim(claim: TheoremClaim, suite: Sequence[Instance], settings: ClaimSettings,
              jobs: int = 1, witness_cap: Optional[int] = None) -> TheoremReport:
    cap = load_config()["WITNESS_CAP"] if witness_cap is None else witness_cap
    report = TheoremReport(claim.id, claim.description, claim.quantifier, len(suite), settings.label())
    tallies: Dict[str, PartTally] = {}
    kept: Dict[Tuple[str, str], int] = {}
    for index, outcomes in enumerate(_outcomes(claim, suite, settings, jobs)):
        for o in outcomes:
            t = tallies.setdefault(o.part, PartTally(o.part, o.kind))
            t.instances += 1
            cat = o.category()
            if cat == "skip":
                t.skipped += 1
                continue
            if cat == "ok":
                continue
            if cat == "violation":
                t.violations += 1
                if isinstance(o.lhs, bool) and not o.mismatch:
                    t.lhs_only += int(o.lhs)
                    t.rhs_only += int(o.rhs)
            else:
                setattr(t, cat, getattr(t, cat) + 1)
            if kept.get((o.part, cat), 0) < cap:
                kept[(o.part, cat)] = kept.get((o.part, cat), 0) + 1
                report.witnesses.append(Witness(index, o.part, cat, o.lhs, o.rhs, payload_of(suite[index]), o.detail))
    report.parts = list(tallies.values())
    if report.skipped:
        log.info("%s: %d degenerate instance(s) skipped", claim.id, report.skipped)
    return report


def _describe_relation(report: TheoremReport) -> str:
    part = report.parts[0]
    lhs_only, rhs_only = part.lhs_only, part.rhs_only
    if part.violations == 0:
        relation = "equivalent on this suite"
    elif lhs_only and not rhs_only:
        relation = "rhs detects a subset of lhs conflicts"
    elif rhs_only and not lhs_only:
        relation = "rhs detects a superset of lhs conflicts"
    else:
        relation = "incomparable on this suite"
    return f"observed relation: {relation} ({part.violations} disagreement(s))"


def verify_claim(claim: TheoremClaim, suite: Sequence[Instance], calibration: Optional[Calibration] = None,
                 jobs: int = 1, witness_cap: Optional[int] = None, amo: Optional[str] = None) -> TheoremReport:
    """Check one claim on a suite of instances of its input class. amo, when given,
    overrides the direct encoding's at-most-one setting."""
    for inst in suite:
        if (claim.input_class == "sat") != isinstance(inst, Cnf):
            raise SatCspError(f"{claim.id} needs {claim.input_class.upper()} instances")
        if isinstance(inst, Csp) and not inst.is_binary:
            raise SatCspError(f"{claim.id} needs binary CSP instances")
    settings, calibrated = (calibration or Calibration()).settings_for(claim)
    if amo is not None:
        settings = replace(settings, amo=amo)
    report = run_claim(claim, suite, settings, jobs, witness_cap)
    if claim.metric == "branch_count":
        source = claim.calibrated_by or claim.id
        report.notes.append(f"convention {settings.label()} "
                            + (f"(calibrated on {source})" if calibrated else "(default, uncalibrated)"))
        if not calibrated:
            log.warning("%s runs with the default convention; no calibration for %s", claim.id, source)
        if calibration:
            report.notes.extend(calibration.notes.get(claim.id, []))
    if not claim.asserted:
        report.notes.append(_describe_relation(report))
    return report


def verify_all(claims: Sequence[TheoremClaim], suites: SuiteCache, calibration: Optional[Calibration] = None,
               jobs: int = 1, amo: Optional[str] = None) -> List[TheoremReport]:
    reports = [verify_claim(c, suites.get(c.input_class), calibration, jobs, amo=amo) for c in claims]
    return sorted(reports, key=lambda r: claim_sort_key(r.claim_id))


# ---------- calibration ----------
CALIBRATED = ("T4", "T6", "T7", "T9", "T10")


def candidate_settings(claim_id: str) -> List[ClaimSettings]:
    """Convention, then polarity, then variable rule, then AMO (T9 only)."""
    amos = ("none", "pairwise") if claim_id == "T9" else ("none",)
    return [ClaimSettings(conv, pf, uf, amo)
            for conv, pf, uf, amo in product(CONVENTIONS, (True, False), (False, True), amos)]


def _counterexamples(report: TheoremReport) -> List[Witness]:
    found = [w for w in report.witnesses if w.category == "violation"]
    return sorted(found, key=lambda w: (len(w.payload), w.index))


def calibrate_branch_convention(suites: SuiteCache, claim_ids: Sequence[str] = CALIBRATED,
                                jobs: int = 1) -> Calibration:
    """Freeze, per claim, the first candidate under which the claim passes; if none
    does, the one with fewest violations, with its counterexamples in the notes."""
    cal = Calibration()
    for cid in claim_ids:
        if cid not in CALIBRATED:
            raise SatCspError(f"{cid} is not a calibrated branch-count claim")
        claim = CLAIMS[cid]
        suite = suites.get(claim.input_class)
        notes: List[str] = []
        best: Optional[Tuple[Tuple[int, bool], ClaimSettings, TheoremReport]] = None
        for s in candidate_settings(cid):
            report = run_claim(claim, suite, s, jobs)
            log.debug("%s candidate %s: %d violation(s)", cid, s.label(), report.violations)
            notes.append(f"candidate {s.label()}: {report.violations} violation(s)"
                         + ("" if report.passed or report.violations else ", no strict witness"))
            rank = (report.violations, not report.passed)
            if best is None or rank < best[0]:
                best = (rank, s, report)
            if report.passed:
                break
        assert best is not None
        (violations, _), chosen, report = best
        cal.selected[cid] = chosen
        if not report.passed:
            notes.append(f"no candidate passed; froze {chosen.label()} with {violations} violation(s)")
            for w in _counterexamples(report):
                notes.append(f"counterexample #{w.index} ({w.part}: {w.lhs} vs {w.rhs}):\n{w.payload}")
            log.warning("%s: no passing convention; using %s", cid, chosen.label())
        else:
            notes.append(f"selected {chosen.label()}")
            log.info("%s calibrated to %s", cid, chosen.label())
        cal.notes[cid] = notes
    return cal
