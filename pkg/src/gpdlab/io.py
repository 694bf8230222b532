"""JSON formats for groupoids, functors and presented groupoids.

Groupoid: {"objects": [..], "morphisms": [{"id", "src", "dst"}],
"compose": [[g, f, gf]], "identities": {object: morphism},
"inverses": {morphism: morphism}}.  Functor: {"source", "target",
"onObjects", "onMorphisms"}.  Presented adds "generators" and "relations"
(pairs of words; words are morphism-id lists composed right-to-left).
"""

from __future__ import annotations

from .groupoids import ConcreteGroupoid, GroupoidError, GroupoidFunctor
from .presentations import PresentedGroupoid


class FormatError(GroupoidError):
    """The payload does not match the documented JSON shape."""


def _need(payload, key, kind):
    if key not in payload:
        raise FormatError("missing field %r" % key)
    value = payload[key]
    if not isinstance(value, kind):
        raise FormatError("field %r has the wrong type" % key)
    return value


def groupoid_to_dict(g):
    return {
        "objects": list(g.objects),
        "morphisms": [{"id": m, "src": s, "dst": d} for (m, s, d) in g.morphisms],
        "compose": sorted([a, b, c] for (a, b), c in g._compose.items()),
        "identities": dict(g._identities),
        "inverses": dict(g._inverses),
    }


def groupoid_from_dict(payload):
    if not isinstance(payload, dict):
        raise FormatError("groupoid payload must be an object")
    objects = _need(payload, "objects", list)
    raw_mor = _need(payload, "morphisms", list)
    morphisms = []
    for entry in raw_mor:
        if not isinstance(entry, dict) or not {"id", "src", "dst"}.issubset(entry):
            raise FormatError("each morphism needs id, src and dst")
        morphisms.append((entry["id"], entry["src"], entry["dst"]))
    compose = {}
    for row in _need(payload, "compose", list):
        if not isinstance(row, list) or len(row) != 3:
            raise FormatError("compose entries are [g, f, gf] triples")
        compose[(row[0], row[1])] = row[2]
    identities = _need(payload, "identities", dict)
    inverses = _need(payload, "inverses", dict)
    return ConcreteGroupoid(objects, morphisms, compose, identities, inverses)


def functor_to_dict(F):
    return {
        "source": groupoid_to_dict(F.source),
        "target": groupoid_to_dict(F.target),
        "onObjects": dict(F.object_map),
        "onMorphisms": dict(F.morphism_map),
    }


def functor_from_dict(payload):
    if not isinstance(payload, dict):
        raise FormatError("functor payload must be an object")
    source = groupoid_from_dict(_need(payload, "source", dict))
    target = groupoid_from_dict(_need(payload, "target", dict))
    on_objects = _need(payload, "onObjects", dict)
    on_morphisms = _need(payload, "onMorphisms", dict)
    return GroupoidFunctor(source, target, dict(on_objects), dict(on_morphisms))


def presented_to_dict(p):
    return {
        "objects": list(p.objects),
        "generators": [{"id": g, "src": s, "dst": d} for (g, s, d) in p.generators],
        "relations": [[list(w1), list(w2)] for (w1, w2) in p.relations],
    }


def presented_from_dict(payload):
    if not isinstance(payload, dict):
        raise FormatError("presented payload must be an object")
    objects = _need(payload, "objects", list)
    raw_gen = _need(payload, "generators", list)
    generators = []
    for entry in raw_gen:
        if not isinstance(entry, dict) or not {"id", "src", "dst"}.issubset(entry):
            raise FormatError("each generator needs id, src and dst")
        generators.append((entry["id"], entry["src"], entry["dst"]))
    relations = []
    for row in _need(payload, "relations", list):
        if not isinstance(row, list) or len(row) != 2:
            raise FormatError("relations are pairs of words")
        relations.append((tuple(row[0]), tuple(row[1])))
    return PresentedGroupoid(tuple(objects), tuple(generators), tuple(relations))


def algebra_to_dict(A):
    return {
        "basis": list(A.basis),
        "products": sorted([A.basis[i], A.basis[j], A.basis[k]]
                           for (i, j), k in A.prod.items()),
        "star": {A.basis[i]: A.basis[A.star[i]] for i in range(A.dim)},
        "unit": [A.basis[i] for i in A.unit_indices],
    }


def block_decomposition_to_dict(bd):
    return {
        "seed": bd.seed,
        "tol": bd.tol,
        "residual": bd.residual,
        "blocks": [{"component": b.component_base,
                    "component_objects": b.component_objects,
                    "dimension": b.dimension,
                    "eigenvalue": [b.eigenvalue.real, b.eigenvalue.imag]}
                   for b in bd.blocks],
    }


def detect_kind(payload):
    if not isinstance(payload, dict):
        raise FormatError("payload must be a JSON object")
    if "onObjects" in payload:
        return "functor"
    if "generators" in payload:
        return "presented"
    if "objects" in payload:
        return "groupoid"
    raise FormatError("payload is not a groupoid, functor or presentation")
