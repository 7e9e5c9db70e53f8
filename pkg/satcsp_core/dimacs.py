# DIMACS CNF reading and writing
from __future__ import annotations
import logging
from typing import Iterable, List, Optional, TextIO, Union

from .errors import DimacsParseError
from .types import Cnf

log = logging.getLogger(__name__)


def _lines(text: Union[str, TextIO, Iterable[str]]) -> Iterable[str]:
    if isinstance(text, str):
        return text.splitlines()
    return text


def parse_dimacs(text: Union[str, TextIO, Iterable[str]]) -> Cnf:
    """Parse DIMACS CNF. Clauses keep file order; duplicate literals are removed
    and tautologies dropped (count kept on Cnf.dropped_tautologies)."""
    nvar: Optional[int] = None
    nclause = 0
    header_line = 0
    clauses: List[List[int]] = []
    pending: List[int] = []
    pending_line = 0
    line_no = 0
    for line_no, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if nvar is not None:
                raise DimacsParseError(line_no, "duplicate header line")
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise DimacsParseError(line_no, f"malformed header {line!r}")
            try:
                nvar, nclause = int(fields[2]), int(fields[3])
            except ValueError:
                raise DimacsParseError(line_no, f"malformed header {line!r}") from None
            if nvar < 0 or nclause < 0:
                raise DimacsParseError(line_no, "negative counts in header")
            header_line = line_no
            continue
        if nvar is None:
            raise DimacsParseError(line_no, "clause before 'p cnf' header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsParseError(line_no, f"bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(pending)
                pending = []
                continue
            if abs(lit) > nvar:
                raise DimacsParseError(line_no, f"literal {abs(lit)} exceeds declared {nvar} variables")
            if not pending:
                pending_line = line_no
            pending.append(lit)
    if nvar is None:
        raise DimacsParseError(line_no, "missing 'p cnf' header")
    if pending:
        raise DimacsParseError(pending_line, "clause missing terminating 0")
    if len(clauses) != nclause:
        raise DimacsParseError(header_line, f"header declares {nclause} clauses, found {len(clauses)}")
    cnf = Cnf.build(nvar, clauses)
    if cnf.dropped_tautologies:
        log.warning("dropped %d tautological clause(s)", cnf.dropped_tautologies)
    return cnf


def write_dimacs(f: Cnf) -> str:
    out = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    for c in f.clauses:
        out.append(" ".join([*(str(l) for l in c), "0"]))
    return "\n".join(out) + "\n"
