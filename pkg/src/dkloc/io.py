"""Reading and writing input documents, reports and DOT graphs.

Documents are JSON.  Every document may carry a ``"kind"`` key, one of
``category``, ``relcat``, ``functor``, ``marked-opfib`` or ``sequence``;
without it the kind is inferred from the keys present.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

import jsonschema

from .category import CategoryError, FinCat, Functor, RelCat
from .sset import FunctorSequence


class InputError(ValueError):
    """Schema violation or unresolved identifier in an input document."""


_ID = {"type": "string"}
_CATEGORY = {
    "type": "object",
    "required": ["objects", "morphisms", "identities", "composition"],
    "properties": {
        "kind": {"enum": ["category", "relcat"]},
        "name": {"type": "string"},
        "objects": {"type": "array", "items": _ID},
        "morphisms": {"type": "array", "items": {
            "type": "object", "required": ["id", "src", "dst"],
            "properties": {"id": _ID, "src": _ID, "dst": _ID}, "additionalProperties": False}},
        "identities": {"type": "object", "additionalProperties": _ID},
        "composition": {"type": "array", "items": {"type": "array", "items": _ID,
                                                   "minItems": 3, "maxItems": 3}},
        "weq": {"type": "array", "items": _ID},
    },
}
_MAPS = {
    "object_map": {"type": "object", "additionalProperties": _ID},
    "morphism_map": {"type": "object", "additionalProperties": _ID},
}
_FUNCTOR = {
    "type": "object",
    "required": ["domain", "codomain", "object_map", "morphism_map"],
    "properties": {
        "kind": {"enum": ["functor", "marked-opfib"]},
        "name": {"type": "string"},
        "domain": {"anyOf": [_CATEGORY, {"type": "string"}]},
        "codomain": {"anyOf": [_CATEGORY, {"type": "string"}]},
        **_MAPS,
        "lifts": {"type": "array", "items": {"type": "array", "items": _ID, "minItems": 3, "maxItems": 3}},
    },
}
_SEQUENCE = {
    "type": "object",
    "required": ["categories", "functors"],
    "properties": {
        "kind": {"const": "sequence"},
        "categories": {"type": "array", "minItems": 1, "items": {"anyOf": [_CATEGORY, {"type": "string"}]}},
        "functors": {"type": "array", "items": {"type": "object", "required": ["object_map", "morphism_map"],
                                                "properties": _MAPS}},
    },
}


def fmt_id(x) -> str:
    """Canonical text form of an identifier (tuples become ``(a,b,...)``)."""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(fmt_id(y) for y in x) + ")"
    return str(x)


def dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dumps(doc: Any) -> str:
    """Emitted documents: sorted keys, UTF-8 text, trailing LF."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _validate(doc, schema, what):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise InputError(f"{what}: schema error at {where}: {e.message}") from None


def kind_of(doc: dict) -> str:
    if "kind" in doc:
        return doc["kind"]
    if "categories" in doc:
        return "sequence"
    if "lifts" in doc:
        return "marked-opfib"
    if "object_map" in doc:
        return "functor"
    if "weq" in doc:
        return "relcat"
    return "category"


def category_from_json(doc: dict) -> FinCat:
    _validate(doc, _CATEGORY, "category")
    ids = doc["identities"]
    for x in doc["objects"]:
        if x not in ids:
            raise InputError(f"category: object {x!r} has no identity entry")
    morphs = [m["id"] for m in doc["morphisms"]]
    table = {}
    for g, f, gf in doc["composition"]:
        if (g, f) in table:
            raise InputError(f"category: composite of {g!r} after {f!r} listed twice")
        table[g, f] = gf
    try:
        return FinCat(doc["objects"], morphs, {m["id"]: m["src"] for m in doc["morphisms"]},
                      {m["id"]: m["dst"] for m in doc["morphisms"]}, ids, table, name=doc.get("name", ""))
    except CategoryError as e:
        raise InputError(f"category: {e}") from None


def relcat_from_json(doc: dict) -> RelCat:
    C = category_from_json(doc)
    try:
        return RelCat(C, doc.get("weq", C.identities), name=doc.get("name", ""))
    except CategoryError as e:
        raise InputError(f"relcat: {e}") from None


def _resolve(ref, base: Path | None) -> dict:
    if isinstance(ref, str):
        path = (base / ref) if base is not None else Path(ref)
        return load_json(path)
    return ref


def functor_from_json(doc: dict, base: Path | None = None, relative=False):
    """Returns a Functor, or ``(Functor, RelCat, RelCat)`` when ``relative`` is set."""
    _validate(doc, _FUNCTOR, "functor")
    dom_doc, cod_doc = _resolve(doc["domain"], base), _resolve(doc["codomain"], base)
    dom, cod = relcat_from_json(dom_doc), relcat_from_json(cod_doc)
    try:
        F = Functor(dom.base, cod.base, doc["object_map"], doc["morphism_map"], name=doc.get("name", ""))
    except CategoryError as e:
        raise InputError(f"functor: {e}") from None
    return (F, dom, cod) if relative else F


def sequence_from_json(doc: dict, base: Path | None = None) -> FunctorSequence:
    _validate(doc, _SEQUENCE, "sequence")
    cats = [category_from_json(_resolve(c, base)) for c in doc["categories"]]
    if len(doc["functors"]) != len(cats) - 1:
        raise InputError("sequence: need one functor between consecutive categories")
    fs = []
    for i, fd in enumerate(doc["functors"]):
        try:
            fs.append(Functor(cats[i], cats[i + 1], fd["object_map"], fd["morphism_map"]))
        except CategoryError as e:
            raise InputError(f"sequence: functor {i}: {e}") from None
    return FunctorSequence(tuple(cats), tuple(fs))


def load_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: not valid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    return doc


def category_to_json(C: FinCat, weq=None) -> dict:
    doc = {
        "kind": "category" if weq is None else "relcat",
        "objects": [fmt_id(x) for x in C.objects],
        "morphisms": [{"id": fmt_id(m), "src": fmt_id(C.src(m)), "dst": fmt_id(C.dst(m))}
                      for m in C.morphisms],
        "identities": {fmt_id(x): fmt_id(C.id(x)) for x in C.objects},
        "composition": [[fmt_id(g), fmt_id(f), fmt_id(C.compose(g, f))] for g, f in C.composable_pairs()],
    }
    if C.name:
        doc["name"] = C.name
    if weq is not None:
        doc["weq"] = [fmt_id(m) for m in C.morphisms if m in weq]
    return doc


def relcat_to_json(R: RelCat) -> dict:
    return category_to_json(R.base, R.weq)


def functor_to_json(F: Functor, dom_weq=None, cod_weq=None) -> dict:
    return {
        "kind": "functor",
        "domain": category_to_json(F.domain, dom_weq),
        "codomain": category_to_json(F.codomain, cod_weq),
        "object_map": {fmt_id(x): fmt_id(F.ob(x)) for x in F.domain.objects},
        "morphism_map": {fmt_id(m): fmt_id(F(m)) for m in F.domain.morphisms},
    }


def category_to_dot(C: FinCat, weq=frozenset(), name="C") -> str:
    """Objects as nodes, non-identity morphisms as edges, marked ones dashed."""
    lines = [f"digraph {dot_quote(name)} {{"]
    for x in C.objects:
        lines.append(f"  {dot_quote(fmt_id(x))};")
    for m in C.non_identity():
        style = ", style=dashed" if m in weq else ""
        lines.append(f"  {dot_quote(fmt_id(C.src(m)))} -> {dot_quote(fmt_id(C.dst(m)))} "
                     f"[label={dot_quote(fmt_id(m))}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def opfib_to_json(f, V, W, lifts) -> dict:
    doc = functor_to_json(f, V.weq, W.weq)
    doc["kind"] = "marked-opfib"
    doc["lifts"] = [[fmt_id(c), fmt_id(a), fmt_id(l)] for (c, a), l in lifts.items()]
    return doc


def sequence_to_json(seq: FunctorSequence) -> dict:
    return {
        "kind": "sequence",
        "categories": [category_to_json(C) for C in seq.categories],
        "functors": [{"object_map": {fmt_id(x): fmt_id(F.ob(x)) for x in F.domain.objects},
                      "morphism_map": {fmt_id(m): fmt_id(F(m)) for m in F.domain.morphisms}}
                     for F in seq.functors],
    }
