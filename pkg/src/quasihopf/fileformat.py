"""JSON documents for algebras, quasi-Hopf algebras, (co)module algebras and morphisms.

Every document has ``schema_version``, ``kind``, ``payload`` and an optional
``field`` (``"rational"`` or ``"gf:<p>"``).  Scalars are integer lists:
``[num, den]`` over the rationals, ``[residue]`` over GF(p).  Sparse
tensors are lists of ``[i_1, ..., i_n, *scalar]``; matrices are dense,
row-major lists of scalars.  Unknown fields are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import jsonschema

from .algebra import BasedAlgebra, Element, Space, tensor
from .fields import Field, parse_field
from .linalg import LinearMap
from .quasi_hopf import QuasiHopfAlgebra
from .representations import ComoduleAlgebra, ModuleAlgebra

SCHEMA_VERSION = "1"
KINDS = ("algebra", "quasi_hopf", "module_algebra", "comodule_algebra", "morphism")
PROPERTIES = ("linear", "algebra", "comodule_algebra", "module_algebra")


class FormatError(ValueError):
    """Malformed, inconsistent or unreadable document."""


_int = {"type": "integer"}
_scalar = {"type": "array", "items": _int, "minItems": 1, "maxItems": 2}
_matrix = {"type": "array", "items": {"type": "array", "items": _scalar}}
_sparse = {"type": "array", "items": {"type": "array", "items": _int, "minItems": 2}}

_algebra = {
    "type": "object",
    "additionalProperties": False,
    "required": ["basis", "mult", "unit"],
    "properties": {
        "name": {"type": "string"},
        "basis": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "mult": _sparse,
        "unit": _sparse,
    },
}

_quasi_hopf = {
    "type": "object",
    "additionalProperties": False,
    "required": ["algebra", "coproduct", "counit", "phi", "antipode", "alpha", "beta"],
    "properties": {
        "algebra": _algebra,
        "coproduct": _matrix,
        "counit": _matrix,
        "phi": _sparse,
        "phi_inv": _sparse,
        "antipode": _matrix,
        "antipode_inv": _matrix,
        "alpha": _sparse,
        "beta": _sparse,
    },
}

_module_algebra = {
    "type": "object",
    "additionalProperties": False,
    "required": ["algebra", "action"],
    "properties": {"hopf": _quasi_hopf, "algebra": _algebra, "action": _matrix},
}

_comodule_algebra = {
    "type": "object",
    "additionalProperties": False,
    "required": ["algebra", "coaction", "phi_rho"],
    "properties": {
        "hopf": _quasi_hopf,
        "algebra": _algebra,
        "coaction": _matrix,
        "phi_rho": _sparse,
        "phi_rho_inv": _sparse,
    },
}

_morphism = {
    "type": "object",
    "additionalProperties": False,
    "required": ["property", "matrix"],
    "properties": {
        "name": {"type": "string"},
        "property": {"enum": list(PROPERTIES)},
        "matrix": _matrix,
        "src_dim": _int,
        "dst_dim": _int,
        "source": {"type": "object"},
        "target": {"type": "object"},
    },
}

DOCUMENT_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "kind", "payload"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "field": {"type": "string", "pattern": "^(rational|gf:[0-9]+)$"},
        "kind": {"enum": list(KINDS)},
        "payload": {"type": "object"},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": k}}},
         "then": {"properties": {"payload": s}}}
        for k, s in [("algebra", _algebra), ("quasi_hopf", _quasi_hopf),
                     ("module_algebra", _module_algebra),
                     ("comodule_algebra", _comodule_algebra), ("morphism", _morphism)]
    ],
}


@dataclass(frozen=True, eq=False)
class Morphism:
    matrix: LinearMap
    property: str = "linear"
    name: str | None = None
    source: Any = None
    target: Any = None


# ---------------------------------------------------------------- reading


def read_document(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from exc


def validate_document(doc: Any) -> None:
    try:
        jsonschema.validate(doc, DOCUMENT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise FormatError(f"schema violation at {where}: {exc.message}") from None


def resolve_field(doc: dict, override: str | Field | None = None) -> Field:
    try:
        if override is not None:
            return parse_field(override)
        return parse_field(doc.get("field"))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load(source: str | Path | dict, field: str | Field | None = None,
         hopf: QuasiHopfAlgebra | None = None):
    """Parse a document (path or dict) into the matching library object.

    ``hopf`` binds a module or comodule algebra to an already loaded
    quasi-Hopf algebra; an embedded copy must then describe the same
    structure.  Without either, a :class:`Partial` is returned.
    """
    doc = read_document(source) if not isinstance(source, dict) else source
    validate_document(doc)
    fld = resolve_field(doc, field)
    payload = doc["payload"]
    try:
        if hopf is not None and doc["kind"] in ("module_algebra", "comodule_algebra"):
            embedded = payload.get("hopf")
            if embedded is not None and (
                    _quasi_hopf_payload(_quasi_hopf_of(embedded, fld))
                    != _quasi_hopf_payload(hopf)):
                raise FormatError("embedded quasi-Hopf algebra differs from the one supplied")
            payload = {**payload, "hopf": hopf}
        return _LOADERS[doc["kind"]](payload, fld)
    except (ZeroDivisionError, IndexError, KeyError, TypeError) as exc:
        raise FormatError(f"inconsistent {doc['kind']} document: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"inconsistent {doc['kind']} document: {exc}") from exc


def _scalar_of(data, field: Field):
    return field.deserialize(data)


def _matrix_of(rows, field: Field, src_dim: int, dst_dim: int, what: str) -> LinearMap:
    if len(rows) != dst_dim or any(len(r) != src_dim for r in rows):
        raise FormatError(f"{what} must be a {dst_dim}x{src_dim} matrix")
    return LinearMap([[_scalar_of(x, field) for x in r] for r in rows], field, src_dim)


def _sparse_of(entries, space: Space, what: str) -> Element:
    legs = len(space.factors) or 1
    dims = [f.dim for f in space.factors] or [1]
    field = space.field
    terms: dict = {}
    for entry in entries:
        if len(entry) not in (legs + 1, legs + 2):
            raise FormatError(f"{what}: entry {entry} needs {legs} indices and a scalar")
        idx, scal = entry[:legs], entry[legs:]
        for i, d in zip(idx, dims):
            if not 0 <= i < d:
                raise FormatError(f"{what}: index {i} out of range in {entry}")
        key = space.join(tuple(idx)) if space.factors else 0
        terms[key] = terms.get(key, 0) + _scalar_of(scal, field)
    return Element(space, terms)


def _algebra_of(p: dict, field: Field) -> BasedAlgebra:
    labels = p["basis"]
    n = len(labels)
    triples = []
    for entry in p["mult"]:
        if len(entry) not in (4, 5):
            raise FormatError(f"mult entry {entry} needs three indices and a scalar")
        i, j, k = entry[:3]
        if not all(0 <= x < n for x in (i, j, k)):
            raise FormatError(f"mult entry {entry} out of range")
        triples.append((i, j, k, _scalar_of(entry[3:], field)))
    unit = Space(labels, field)
    unit_el = _sparse_of(p["unit"], unit, "unit")
    return BasedAlgebra.from_triples(labels, triples, unit_el.coords, field, name=p.get("name"))


def _quasi_hopf_of(p: dict, field: Field) -> QuasiHopfAlgebra:
    H = _algebra_of(p["algebra"], field)
    d = H.dim
    H3 = tensor(H, H, H)
    return QuasiHopfAlgebra(
        H=H,
        comul=_matrix_of(p["coproduct"], field, d, d * d, "coproduct"),
        counit=_matrix_of(p["counit"], field, d, 1, "counit"),
        phi=_sparse_of(p["phi"], H3, "phi"),
        phi_inv=_sparse_of(p["phi_inv"], H3, "phi_inv") if "phi_inv" in p else None,
        antipode=_matrix_of(p["antipode"], field, d, d, "antipode"),
        antipode_inv=(_matrix_of(p["antipode_inv"], field, d, d, "antipode_inv")
                      if "antipode_inv" in p else None),
        alpha=_sparse_of(p["alpha"], H, "alpha"),
        beta=_sparse_of(p["beta"], H, "beta"),
    )


@dataclass(frozen=True, eq=False)
class Partial:
    """A module/comodule algebra read without its quasi-Hopf algebra."""

    kind: str
    payload: dict
    field: Field

    def bind(self, Hq: QuasiHopfAlgebra):
        return _LOADERS[self.kind]({**self.payload, "hopf": Hq}, self.field)


def _hopf_from(p: dict, field: Field):
    h = p.get("hopf")
    if h is None or isinstance(h, QuasiHopfAlgebra):
        return h
    return _quasi_hopf_of(h, field)


def _module_algebra_of(p: dict, field: Field):
    Hq = _hopf_from(p, field)
    if Hq is None:
        return Partial("module_algebra", p, field)
    A = _algebra_of(p["algebra"], field)
    return ModuleAlgebra(Hq, A, _matrix_of(p["action"], field, Hq.dim * A.dim, A.dim, "action"))


def _comodule_algebra_of(p: dict, field: Field):
    Hq = _hopf_from(p, field)
    if Hq is None:
        return Partial("comodule_algebra", p, field)
    B = _algebra_of(p["algebra"], field)
    BHH = tensor(B, Hq.H, Hq.H)
    return ComoduleAlgebra(
        H=Hq,
        B=B,
        coaction=_matrix_of(p["coaction"], field, B.dim, B.dim * Hq.dim, "coaction"),
        phi_rho=_sparse_of(p["phi_rho"], BHH, "phi_rho"),
        phi_rho_inv=_sparse_of(p["phi_rho_inv"], BHH, "phi_rho_inv")
        if "phi_rho_inv" in p else None,
    )


def _morphism_of(p: dict, field: Field) -> Morphism:
    rows = p["matrix"]
    src = p.get("src_dim", len(rows[0]) if rows else None)
    dst = p.get("dst_dim", len(rows))
    if src is None:
        raise FormatError("empty matrix needs src_dim")
    matrix = _matrix_of(rows, field, src, dst, "matrix")
    # both ends must share one quasi-Hopf algebra object
    source = load(p["source"], field) if "source" in p else None
    hopf = _hopf_of(source)
    target = load(p["target"], field, hopf=hopf) if "target" in p else None
    if isinstance(source, Partial) and _hopf_of(target) is not None:
        source = load(p["source"], field, hopf=_hopf_of(target))
    return Morphism(matrix, p["property"], p.get("name"), source, target)


def _hopf_of(obj) -> QuasiHopfAlgebra | None:
    if isinstance(obj, QuasiHopfAlgebra):
        return obj
    h = getattr(obj, "H", None)
    return h if isinstance(h, QuasiHopfAlgebra) else None


_LOADERS = {
    "algebra": _algebra_of,
    "quasi_hopf": _quasi_hopf_of,
    "module_algebra": _module_algebra_of,
    "comodule_algebra": _comodule_algebra_of,
    "morphism": _morphism_of,
}


# ---------------------------------------------------------------- writing


def _document(kind: str, payload: dict, field: Field) -> dict:
    return {"schema_version": SCHEMA_VERSION, "field": field.spec, "kind": kind,
            "payload": payload}


def _dense(m: LinearMap) -> list:
    return [[m.field.serialize(x) for x in row] for row in m.rows]


def _sparse(x: Element) -> list:
    out = []
    ser = x.field.serialize
    for key, c in x.items():
        out.append(list(key) + ser(c))
    return out


def _algebra_payload(A: BasedAlgebra) -> dict:
    p: dict = {}
    if A.name:
        p["name"] = A.name
    ser = A.field.serialize
    p["basis"] = list(A.labels)
    p["mult"] = [[i, j, k] + ser(c) for i, j, k, c in A.triples()]
    p["unit"] = [[i] + ser(c) for i, c in enumerate(A.unit_coords) if c]
    return p


def _quasi_hopf_payload(Hq: QuasiHopfAlgebra) -> dict:
    p = {
        "algebra": _algebra_payload(Hq.H),
        "coproduct": _dense(Hq.comul),
        "counit": _dense(Hq.counit),
        "phi": _sparse(Hq.phi),
        "phi_inv": _sparse(Hq.phi_inv),
        "antipode": _dense(Hq.antipode),
    }
    if Hq.antipode_inv is not None:
        p["antipode_inv"] = _dense(Hq.antipode_inv)
    p["alpha"] = _sparse(Hq.alpha)
    p["beta"] = _sparse(Hq.beta)
    return p


def dump_algebra(A: BasedAlgebra) -> dict:
    return _document("algebra", _algebra_payload(A), A.field)


def dump_quasi_hopf(Hq: QuasiHopfAlgebra) -> dict:
    return _document("quasi_hopf", _quasi_hopf_payload(Hq), Hq.field)


def dump_module_algebra(MA: ModuleAlgebra, embed_hopf: bool = True) -> dict:
    p = {}
    if embed_hopf:
        p["hopf"] = _quasi_hopf_payload(MA.H)
    p["algebra"] = _algebra_payload(MA.A)
    p["action"] = _dense(MA.action)
    return _document("module_algebra", p, MA.A.field)


def dump_comodule_algebra(CA: ComoduleAlgebra, embed_hopf: bool = True) -> dict:
    p = {}
    if embed_hopf:
        p["hopf"] = _quasi_hopf_payload(CA.H)
    p["algebra"] = _algebra_payload(CA.B)
    p["coaction"] = _dense(CA.coaction)
    p["phi_rho"] = _sparse(CA.phi_rho)
    p["phi_rho_inv"] = _sparse(CA.phi_rho_inv)
    return _document("comodule_algebra", p, CA.B.field)


def dump_morphism(f: LinearMap, property: str = "linear", name: str | None = None,
                  source: dict | None = None, target: dict | None = None) -> dict:
    if property not in PROPERTIES:
        raise ValueError(f"unknown morphism property {property!r}")
    p: dict = {}
    if name:
        p["name"] = name
    p["property"] = property
    p["src_dim"] = f.src_dim
    p["dst_dim"] = f.dst_dim
    p["matrix"] = _dense(f)
    if source is not None:
        p["source"] = source
    if target is not None:
        p["target"] = target
    return _document("morphism", p, f.field)


def dump(obj) -> dict:
    if isinstance(obj, QuasiHopfAlgebra):
        return dump_quasi_hopf(obj)
    if isinstance(obj, ModuleAlgebra):
        return dump_module_algebra(obj)
    if isinstance(obj, ComoduleAlgebra):
        return dump_comodule_algebra(obj)
    if isinstance(obj, BasedAlgebra):
        return dump_algebra(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _flat(x) -> bool:
    return all(isinstance(y, (int, str)) for y in x)


def _render(x, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        body = ",\n".join(f"{inner}{json.dumps(k, ensure_ascii=False)}: {_render(v, depth + 1)}"
                          for k, v in x.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(x, list) and not _flat(x):
        if all(isinstance(y, list) and all(isinstance(z, list) for z in y) for y in x):
            # matrix: one row per line
            rows = [json.dumps(r, separators=(",", ":")) for r in x]
        else:
            rows = [_render(y, depth + 1) for y in x]
        return "[\n" + ",\n".join(inner + r for r in rows) + "\n" + pad + "]"
    return json.dumps(x, ensure_ascii=False, separators=(", ", ": "))


def to_json(doc: dict) -> str:
    """Deterministic text: one sparse entry or matrix row per line."""
    return _render(doc, 0) + "\n"


def write_document(doc: dict, path: str | Path) -> Path:
    path = Path(path)
    try:
        path.write_text(to_json(doc), encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot write {path}: {exc}") from exc
    return path
