"""JSON interchange documents.

Every document carries ``format`` (one of the names in ``KINDS``, prefixed by
``stonegroupoid/``) and ``version``.  Indices are 0-based; composition is
stored as sorted ``[g, y, gy]`` triples.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import _jsonable
from .finite_groupoid import FiniteGroupoid, GroupoidFunctor
from .groups import FiniteGroup
from .realization import AnimaPresentation, LevelMap, PiFiniteOneType
from .tower import GroupoidTower, SetTower

VERSION = 1
PREFIX = "stonegroupoid/"
KINDS = ("groupoid", "tower", "set-tower", "functor", "subset", "presentation", "result")


class FormatError(ValueError):
    """The input is not a well-formed document (CLI exit status 2)."""


def dumps(doc: Any) -> str:
    return json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"


def header(kind: str) -> dict:
    return {"format": PREFIX + kind, "version": VERSION}


def kind_of(doc: Any) -> str:
    if not isinstance(doc, dict) or not isinstance(doc.get("format"), str):
        raise FormatError("document must be a JSON object with a 'format' field")
    fmt = doc["format"]
    kind = fmt[len(PREFIX):] if fmt.startswith(PREFIX) else None
    if kind not in KINDS:
        raise FormatError(f"unknown document format {fmt!r}")
    if doc.get("version") != VERSION:
        raise FormatError(f"unsupported version {doc.get('version')!r}; expected {VERSION}")
    return kind


def _ints(doc: dict, key: str, optional: bool = False) -> list[int] | None:
    if key not in doc:
        if optional:
            return None
        raise FormatError(f"missing field {key!r}")
    v = doc[key]
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise FormatError(f"field {key!r} must be a list of integers")
    return v


def _int(doc: dict, key: str) -> int:
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise FormatError(f"field {key!r} must be a non-negative integer")
    return v


def _list(doc: dict, key: str) -> list:
    v = doc.get(key)
    if not isinstance(v, list):
        raise FormatError(f"field {key!r} must be a list")
    return v


# -- groupoids ---------------------------------------------------------------


def groupoid_to_doc(G: FiniteGroupoid) -> dict:
    doc = header("groupoid")
    doc.update(objects=G.num_objects, src=list(G.src), tgt=list(G.tgt), unit=list(G.unit),
               inv=list(G.inv), comp=[list(t) for t in G.comp])
    if G.object_names is not None:
        doc["object_names"] = list(G.object_names)
    if G.morphism_names is not None:
        doc["morphism_names"] = list(G.morphism_names)
    return doc


def groupoid_from_doc(doc: dict) -> FiniteGroupoid:
    _expect(doc, "groupoid")
    comp = _list(doc, "comp")
    if not all(isinstance(t, list) and len(t) == 3 and all(isinstance(x, int) for x in t) for t in comp):
        raise FormatError("field 'comp' must be a list of [g, y, gy] integer triples")
    src, tgt = _ints(doc, "src"), _ints(doc, "tgt")
    unit, inv = _ints(doc, "unit"), _ints(doc, "inv")
    if not (len(src) == len(tgt) == len(inv)):
        raise FormatError("src, tgt and inv must have one entry per morphism")
    if len(unit) != _int(doc, "objects"):
        raise FormatError("unit must have one entry per object")
    onames, mnames = doc.get("object_names"), doc.get("morphism_names")
    for key, names, n in (("object_names", onames, len(unit)), ("morphism_names", mnames, len(src))):
        if names is not None and (not isinstance(names, list) or len(names) != n
                                  or not all(isinstance(s, str) for s in names)):
            raise FormatError(f"{key} must be a list of {n} strings")
    return FiniteGroupoid.from_tables(doc["objects"], src, tgt, unit, inv, comp, onames, mnames)


def _expect(doc: Any, kind: str) -> None:
    got = kind_of(doc)
    if got != kind:
        raise FormatError(f"expected a {kind} document, got {got}")


# -- functors ------------------------------------------------------------------


def functor_to_doc(F: GroupoidFunctor) -> dict:
    doc = header("functor")
    doc.update(source=groupoid_to_doc(F.source), target=groupoid_to_doc(F.target),
               objects=list(F.obj_map), morphisms=list(F.mor_map))
    return doc


def functor_from_doc(doc: dict, source: FiniteGroupoid | None = None) -> GroupoidFunctor:
    """``source`` fills in a document that omits its source groupoid."""
    _expect(doc, "functor")
    if "source" in doc:
        src = groupoid_from_doc(doc["source"])
        if source is not None and src != source:
            raise FormatError("functor source does not match the input groupoid")
    elif source is not None:
        src = source
    else:
        raise FormatError("functor document needs a 'source' groupoid")
    if "target" not in doc:
        raise FormatError("missing field 'target'")
    return GroupoidFunctor(src, groupoid_from_doc(doc["target"]), _ints(doc, "objects"), _ints(doc, "morphisms"))


# -- towers --------------------------------------------------------------------


def tower_to_doc(T: GroupoidTower) -> dict:
    doc = header("tower")
    doc.update(levels=[groupoid_to_doc(G) for G in T.levels],
               transitions=[{"objects": list(F.obj_map), "morphisms": list(F.mor_map)}
                            for F in T.transitions])
    return doc


def tower_from_doc(doc: dict) -> GroupoidTower:
    _expect(doc, "tower")
    levels = [groupoid_from_doc(d) for d in _list(doc, "levels")]
    if not levels:
        raise FormatError("a tower needs at least one level")
    trans_docs = _list(doc, "transitions")
    if len(trans_docs) != len(levels) - 1:
        raise FormatError("a tower with k levels needs k-1 transitions")
    trans = []
    for n, t in enumerate(trans_docs):
        if not isinstance(t, dict):
            raise FormatError("each transition must be an object")
        trans.append(GroupoidFunctor(levels[n + 1], levels[n], _ints(t, "objects"), _ints(t, "morphisms")))
    return GroupoidTower(tuple(levels), tuple(trans))


def set_tower_to_doc(S: SetTower) -> dict:
    doc = header("set-tower")
    doc.update(sizes=list(S.sizes), transitions=[list(t) for t in S.transitions])
    return doc


def set_tower_from_doc(doc: dict) -> SetTower:
    _expect(doc, "set-tower")
    sizes = _ints(doc, "sizes")
    trans = _list(doc, "transitions")
    if not sizes or len(trans) != len(sizes) - 1:
        raise FormatError("a set tower with k levels needs k-1 transitions")
    for n, t in enumerate(trans):
        if not isinstance(t, list) or len(t) != sizes[n + 1] or not all(
                isinstance(v, int) and 0 <= v < sizes[n] for v in t):
            raise FormatError(f"transition {n} must map {sizes[n + 1]} elements into range({sizes[n]})")
    return SetTower(tuple(sizes), tuple(tuple(t) for t in trans))


# -- subsets -------------------------------------------------------------------


def subset_to_doc(morphisms) -> dict:
    doc = header("subset")
    doc["morphisms"] = sorted(morphisms)
    return doc


def subset_from_doc(doc: Any) -> frozenset[int]:
    """Accepts a subset document or a bare list of morphism indices."""
    if isinstance(doc, list):
        doc = {**header("subset"), "morphisms": doc}
    _expect(doc, "subset")
    return frozenset(_ints(doc, "morphisms"))


# -- presentations -------------------------------------------------------------


def group_to_doc(g: FiniteGroup) -> dict:
    out = {"order": g.order, "identity": g.identity, "inverse": list(g.inverse),
           "table": [list(r) for r in g.table]}
    if g.labels is not None:
        out["labels"] = list(g.labels)
    return out


def group_from_doc(doc: dict) -> FiniteGroup:
    if not isinstance(doc, dict):
        raise FormatError("a group must be an object")
    table = _list(doc, "table")
    if not all(isinstance(r, list) and len(r) == len(table) and all(isinstance(v, int) for v in r)
               for r in table):
        raise FormatError("group table must be a square integer array")
    labels = _ints(doc, "labels", optional=True)
    return FiniteGroup(tuple(tuple(r) for r in table), _int(doc, "identity"), tuple(_ints(doc, "inverse")),
                       None if labels is None else tuple(labels))


def presentation_to_doc(P: AnimaPresentation) -> dict:
    doc = header("presentation")
    doc["levels"] = [{"pi0": list(lv.pi0), "groups": [group_to_doc(g) for g in lv.groups],
                      "orders": list(lv.orders)} for lv in P.levels]
    doc["transitions"] = [{"pi0": list(t.pi0), "groups": [list(f) for f in t.groups]} for t in P.transitions]
    return doc


def presentation_from_doc(doc: dict) -> AnimaPresentation:
    _expect(doc, "presentation")
    levels = []
    for lv in _list(doc, "levels"):
        if not isinstance(lv, dict):
            raise FormatError("each level must be an object")
        levels.append(PiFiniteOneType(tuple(_ints(lv, "pi0")), tuple(group_from_doc(g) for g in _list(lv, "groups"))))
    trans = []
    for t in _list(doc, "transitions"):
        if not isinstance(t, dict):
            raise FormatError("each transition must be an object")
        groups = _list(t, "groups")
        if not all(isinstance(f, list) and all(isinstance(v, int) for v in f) for f in groups):
            raise FormatError("transition group maps must be integer lists")
        trans.append(LevelMap(tuple(_ints(t, "pi0")), tuple(tuple(f) for f in groups)))
    if len(trans) != max(len(levels) - 1, 0):
        raise FormatError("a presentation with k levels needs k-1 transitions")
    return AnimaPresentation(tuple(levels), tuple(trans))


# -- results -------------------------------------------------------------------


def result_doc(command: str, **payload) -> dict:
    doc = header("result")
    doc["command"] = command
    doc.update(payload)
    return doc


PARSERS = {
    "groupoid": groupoid_from_doc,
    "tower": tower_from_doc,
    "set-tower": set_tower_from_doc,
    "functor": functor_from_doc,
    "subset": subset_from_doc,
    "presentation": presentation_from_doc,
    "result": lambda d: d,
}


def parse(doc: Any) -> tuple[str, Any]:
    kind = kind_of(doc)
    return kind, PARSERS[kind](doc)


def to_doc(obj: Any) -> dict:
    if isinstance(obj, FiniteGroupoid):
        return groupoid_to_doc(obj)
    if isinstance(obj, GroupoidTower):
        return tower_to_doc(obj)
    if isinstance(obj, SetTower):
        return set_tower_to_doc(obj)
    if isinstance(obj, GroupoidFunctor):
        return functor_to_doc(obj)
    if isinstance(obj, AnimaPresentation):
        return presentation_to_doc(obj)
    if isinstance(obj, frozenset):
        return subset_to_doc(obj)
    raise TypeError(f"no document form for {type(obj).__name__}")


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}") from None
