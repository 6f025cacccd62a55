"""Canonical JSON for categories, functors, pseudofunctors, polynomials and
corpus manifests.

Every document carries ``kind`` and ``version``.  Identities are implicit
(``id_<object>``); only non-identity morphisms and non-identity composites
are written.  :func:`dumps` sorts keys and ends with a newline, so a load and
dump of a canonical file reproduces it byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

from .constructions import PseudofunctorData
from .errors import MalformedInput
from .fincat import Adjunction, FinCat, FinFunctor, NatTransform, category, compose_functors, functor, identity_functor
from .poly import Polynomial

VERSION = 1


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write(path, doc):
    Path(path).write_text(dumps(doc), encoding="utf-8", newline="\n")


# -- to documents -------------------------------------------------------------


def category_doc(C: FinCat) -> dict:
    morphisms = [{"name": m, "src": s, "tgt": t} for m, (s, t) in C.morphisms.items() if not C.is_identity(m)]
    compose = sorted(
        [g, f, h] for (g, f), h in C.compose.items() if not C.is_identity(g) and not C.is_identity(f)
    )
    return {
        "kind": "category",
        "version": VERSION,
        "name": C.name,
        "objects": list(C.objects),
        "morphisms": morphisms,
        "compose": compose,
    }


def _maps(F: FinFunctor) -> dict:
    return {
        "ob": dict(F.ob),
        "mor": {m: F.mor[m] for m in F.dom.non_identity},
    }


def functor_doc(F: FinFunctor, dom=None, cod=None) -> dict:
    """``dom``/``cod`` may be given as path strings to link instead of embedding."""
    doc = {"kind": "functor", "version": VERSION, "name": F.name}
    doc["dom"] = dom if dom is not None else category_doc(F.dom)
    doc["cod"] = cod if cod is not None else category_doc(F.cod)
    doc.update(_maps(F))
    return doc


def pseudofunctor_doc(T: PseudofunctorData) -> dict:
    return {
        "kind": "pseudofunctor",
        "version": VERSION,
        "base": category_doc(T.base),
        "value": {b: category_doc(V) for b, V in T.value.items()},
        "action": {beta: _maps(F) for beta, F in T.action.items()},
        "composite": sorted([b2, b1, dict(c.components)] for (b2, b1), c in T.composite.items()),
        "unit": {b: dict(c.components) for b, c in T.unit.items()},
    }


def polynomial_doc(P: Polynomial) -> dict:
    adj = P.left_adjoint_witness
    return {
        "kind": "polynomial",
        "version": VERSION,
        "source": category_doc(P.source),
        "total": category_doc(P.total),
        "target": category_doc(P.target),
        "left_leg": _maps(P.left_leg),
        "right_leg": _maps(P.right_leg),
        "witness": {
            "right": _maps(adj.right),
            "unit": dict(adj.unit.components),
            "counit": dict(adj.counit.components),
        },
    }


def manifest_doc(entries) -> dict:
    return {"kind": "manifest", "version": VERSION, "entries": list(entries)}


# -- from documents -----------------------------------------------------------


def _need(doc, key, kind=None):
    if not isinstance(doc, dict):
        raise MalformedInput(f"expected an object, got {type(doc).__name__}")
    if key not in doc:
        raise MalformedInput(f"missing key {key!r}")
    return doc[key]


def _check_kind(doc, kind):
    if _need(doc, "kind") != kind:
        raise MalformedInput(f"expected kind {kind!r}, got {doc['kind']!r}")
    if doc.get("version") != VERSION:
        raise MalformedInput(f"unsupported version {doc.get('version')!r}")


def category_from_doc(doc) -> FinCat:
    _check_kind(doc, "category")
    try:
        objects = [str(x) for x in _need(doc, "objects")]
        arrows = [(m["name"], m["src"], m["tgt"]) for m in _need(doc, "morphisms")]
        compose = [tuple(row) for row in doc.get("compose", [])]
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad category document: {exc}") from exc
    if len(set(objects)) != len(objects):
        raise MalformedInput("duplicate objects")
    names = [a[0] for a in arrows]
    if len(set(names)) != len(names):
        raise MalformedInput("duplicate morphism names")
    for row in compose:
        if len(row) != 3:
            raise MalformedInput(f"compose rows are [g, f, gf] triples, got {list(row)}")
    return category(objects, arrows, compose, doc.get("name", ""))


def _resolve(ref, base: Path | None):
    if isinstance(ref, str):
        path = Path(ref) if base is None else base / ref
        return category_from_doc(load_json(path))
    return category_from_doc(ref)


def _functor_maps(dom, cod, doc, name="") -> FinFunctor:
    try:
        ob = dict(_need(doc, "ob"))
        mor = dict(doc.get("mor", {}))
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"bad functor maps: {exc}") from exc
    missing = [x for x in dom.objects if x not in ob]
    if missing:
        raise MalformedInput(f"object map misses {missing[0]!r}")
    return functor(dom, cod, ob, mor, name)


def functor_from_doc(doc, base: Path | None = None) -> FinFunctor:
    _check_kind(doc, "functor")
    dom = _resolve(_need(doc, "dom"), base)
    cod = _resolve(_need(doc, "cod"), base)
    return _functor_maps(dom, cod, doc, doc.get("name", ""))


def pseudofunctor_from_doc(doc) -> PseudofunctorData:
    _check_kind(doc, "pseudofunctor")
    B = category_from_doc(_need(doc, "base"))
    value = {b: category_from_doc(v) for b, v in _need(doc, "value").items()}
    action = {}
    for beta, maps in _need(doc, "action").items():
        if beta not in B.morphisms:
            raise MalformedInput(f"action on unknown morphism {beta!r}")
        b, b2 = B.morphisms[beta]
        action[beta] = _functor_maps(value[b2], value[b], maps)
    for b in B.objects:
        if B.identity[b] not in action:
            action[B.identity[b]] = identity_functor(value[b])
    composite = {}
    for b2, b1, comps in doc.get("composite", []):
        dom = compose_functors(action[b1], action[b2])
        cod = action[B.comp(b2, b1)]
        composite[(b2, b1)] = NatTransform(dom, cod, comps)
    unit = {}
    for b, comps in doc.get("unit", {}).items():
        unit[b] = NatTransform(identity_functor(value[b]), action[B.identity[b]], comps)
    return PseudofunctorData(B, value, action, composite, unit)


def polynomial_from_doc(doc) -> Polynomial:
    _check_kind(doc, "polynomial")
    A = category_from_doc(_need(doc, "source"))
    E = category_from_doc(_need(doc, "total"))
    B = category_from_doc(_need(doc, "target"))
    j_star = _functor_maps(E, A, _need(doc, "left_leg"))
    p = _functor_maps(E, B, _need(doc, "right_leg"))
    w = _need(doc, "witness")
    j = _functor_maps(A, E, _need(w, "right"))
    unit = NatTransform(identity_functor(E), compose_functors(j, j_star), _need(w, "unit"))
    counit = NatTransform(compose_functors(j_star, j), identity_functor(A), _need(w, "counit"))
    return Polynomial(A, E, B, j_star, Adjunction(j_star, j, unit, counit), p)


def load_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise MalformedInput(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc})") from exc


LOADERS = {
    "category": lambda doc, base: category_from_doc(doc),
    "functor": functor_from_doc,
    "pseudofunctor": lambda doc, base: pseudofunctor_from_doc(doc),
    "polynomial": lambda doc, base: polynomial_from_doc(doc),
}


def load(path, kind: str | None = None):
    """Load any document kind; returns ``(kind, object)``."""
    path = Path(path)
    doc = load_json(path)
    found = _need(doc, "kind")
    if kind is not None and found != kind:
        raise MalformedInput(f"{path}: expected kind {kind!r}, got {found!r}")
    if found not in LOADERS:
        raise MalformedInput(f"{path}: unknown kind {found!r}")
    try:
        return found, LOADERS[found](doc, path.parent)
    except MalformedInput:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise MalformedInput(f"{path}: {exc!r}") from exc


def to_doc(obj) -> dict:
    if isinstance(obj, FinCat):
        return category_doc(obj)
    if isinstance(obj, FinFunctor):
        return functor_doc(obj)
    if isinstance(obj, PseudofunctorData):
        return pseudofunctor_doc(obj)
    if isinstance(obj, Polynomial):
        return polynomial_doc(obj)
    raise TypeError(type(obj).__name__)
