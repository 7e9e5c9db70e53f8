# CSP instance documents and EncodingMap sidecars (JSON, pydantic-validated)
from __future__ import annotations
import json
from typing import Any, Dict, List, Literal

from pydantic import BaseModel, ConfigDict, ValidationError

from .errors import CspFormatError, ModelError
from .types import Csp, EncodingMap, ExtensionalConstraint


class VariableDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    id: int
    domain: List[str]


class ConstraintDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    scope: List[int]
    semantics: Literal["allows", "forbids"]
    tuples: List[List[str]]


class CspDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    variables: List[VariableDoc]
    constraints: List[ConstraintDoc] = []


class EncodingMapDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")
    direction: Literal["sat_to_csp", "csp_to_sat"]
    encoding: str
    var_map: Dict[str, List[List[Any]]]
    metadata: Dict[str, Any] = {}


def _dump(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def csp_to_doc(p: Csp) -> CspDoc:
    return CspDoc(
        variables=[VariableDoc(id=v.id, domain=list(v.domain)) for v in p.variables],
        constraints=[ConstraintDoc(scope=list(c.scope), semantics=c.semantics,
                                   tuples=[list(t) for t in p.sorted_tuples(c)])
                     for c in p.constraints],
    )


def doc_to_csp(doc: CspDoc) -> Csp:
    for i, v in enumerate(doc.variables):
        if v.id != i:
            raise CspFormatError(f"variable ids must be 0..n-1 in order; position {i} has id {v.id}")
    try:
        return Csp.build(
            [v.domain for v in doc.variables],
            [ExtensionalConstraint(tuple(c.scope), c.semantics, frozenset(tuple(t) for t in c.tuples))
             for c in doc.constraints],
        )
    except ModelError as e:
        raise CspFormatError(str(e)) from e


def parse_csp(text: str) -> Csp:
    try:
        doc = CspDoc.model_validate_json(text)
    except ValidationError as e:
        raise CspFormatError(f"invalid CSP document: {e.error_count()} error(s): {e.errors()[0]['msg']}") from e
    return doc_to_csp(doc)


def write_csp(p: Csp) -> str:
    return _dump(csp_to_doc(p).model_dump())


def _tupled(x: Any) -> Any:
    return tuple(_tupled(y) for y in x) if isinstance(x, list) else x


def _listed(x: Any) -> Any:
    if isinstance(x, (list, tuple)):
        return [_listed(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _listed(v) for k, v in x.items()}
    return x


def write_encoding_map(m: EncodingMap) -> str:
    doc = EncodingMapDoc(direction=m.direction, encoding=m.encoding,
                         var_map={k: _listed(v) for k, v in m.var_map.items()},
                         metadata=_listed(m.metadata))
    return _dump(doc.model_dump())


def parse_encoding_map(text: str) -> EncodingMap:
    try:
        doc = EncodingMapDoc.model_validate_json(text)
    except ValidationError as e:
        raise CspFormatError(f"invalid encoding map: {e.errors()[0]['msg']}") from e
    var_map: Dict[str, tuple] = {k: tuple((_tupled(a), _tupled(b)) for a, b in pairs)
                                 for k, pairs in doc.var_map.items()}
    try:
        return EncodingMap(doc.direction, doc.encoding, var_map, dict(doc.metadata))
    except ModelError as e:
        raise CspFormatError(str(e)) from e
