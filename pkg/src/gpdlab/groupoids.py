"""Finite groupoids with explicit composition tables, functors between them,
and the elementary predicates (cofibration, equivalence) everything else uses.

Composition is written right-to-left: ``compose(g, f)`` means "f then g" and
is defined exactly when ``dst(f) == src(g)``.  Objects and morphisms keep
their input order, and every derived output (components, vertex groups,
enumerations) follows that order, so results are deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product as cartesian

from .groups import GroupTable


class GroupoidError(ValueError):
    """Structural misuse: unknown identifiers, malformed input, bad arguments."""


class NonCofibrationError(GroupoidError):
    """An operation that requires a functor injective on objects got one that is not."""


@dataclass
class ValidationReport:
    structural: list = field(default_factory=list)
    axioms: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.structural and not self.axioms

    def all_messages(self):
        return list(self.structural) + list(self.axioms)


class ConcreteGroupoid:
    """A finite groupoid given by objects, morphisms and a total composition table."""

    def __init__(self, objects, morphisms, compose, identities, inverses):
        self.objects = tuple(objects)
        self.morphisms = tuple((m[0], m[1], m[2]) for m in morphisms)
        self._compose = dict(compose)
        self._identities = dict(identities)
        self._inverses = dict(inverses)
        self._src = {m: s for (m, s, _) in self.morphisms}
        self._dst = {m: d for (m, _, d) in self.morphisms}
        self._identity_ids = set(self._identities.values())

    # -- basic accessors ---------------------------------------------------

    @property
    def morphism_ids(self):
        return tuple(m for (m, _, _) in self.morphisms)

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_morphisms(self):
        return len(self.morphisms)

    def src(self, m):
        return self._src[m]

    def dst(self, m):
        return self._dst[m]

    def compose(self, g, f):
        """g after f, or None when the pair is not composable / not tabulated."""
        return self._compose.get((g, f))

    def identity(self, x):
        try:
            return self._identities[x]
        except KeyError:
            raise GroupoidError("unknown object %r" % (x,)) from None

    def inverse(self, m):
        return self._inverses.get(m)

    def is_identity(self, m):
        return m in self._identity_ids

    def hom(self, x, y):
        return [m for (m, s, d) in self.morphisms if s == x and d == y]

    def loops(self, x):
        return self.hom(x, x)

    def composable_pairs(self):
        by_src = {}
        for (m, s, _) in self.morphisms:
            by_src.setdefault(s, []).append(m)
        for (f, _, d) in self.morphisms:
            for g in by_src.get(d, ()):
                yield g, f

    def __repr__(self):
        return "ConcreteGroupoid(%d objects, %d morphisms)" % (
            self.n_objects, self.n_morphisms)


def groupoid_equal(g, h):
    """Structural on-the-nose equality of the full composition data."""
    return (g.objects == h.objects and g.morphisms == h.morphisms
            and g._compose == h._compose and g._identities == h._identities
            and g._inverses == h._inverses)


# -- validation -------------------------------------------------------------

def validate_groupoid(g):
    """Check the groupoid axioms; name the offending morphisms in each violation.

    Identifier-level problems (duplicates, references to unknown ids,
    non-string names) are reported as structural errors, distinct from
    axiom failures.
    """
    rep = ValidationReport()
    objs = g.objects
    if any(not isinstance(x, str) for x in objs):
        rep.structural.append("object identifiers must be strings")
        return rep
    if len(set(objs)) != len(objs):
        rep.structural.append("duplicate object identifiers")
    mids = [m for (m, _, _) in g.morphisms]
    if any(not isinstance(m, str) for m in mids):
        rep.structural.append("morphism identifiers must be strings")
        return rep
    if len(set(mids)) != len(mids):
        rep.structural.append("duplicate morphism identifiers")
    oset, mset = set(objs), set(mids)
    for (m, s, d) in g.morphisms:
        if s not in oset or d not in oset:
            rep.structural.append("morphism %s has unknown endpoint" % m)
    for x, m in g._identities.items():
        if x not in oset:
            rep.structural.append("identity table names unknown object %r" % (x,))
        if m not in mset:
            rep.structural.append("identity table names unknown morphism %r" % (m,))
    for a, b in g._inverses.items():
        if a not in mset or b not in mset:
            rep.structural.append("inverse table names unknown morphism")
    for (a, b), c in g._compose.items():
        if a not in mset or b not in mset or c not in mset:
            rep.structural.append("composition table names unknown morphism")
    if rep.structural:
        return rep

    # identities
    for x in objs:
        m = g._identities.get(x)
        if m is None:
            rep.axioms.append("no identity assigned at object %s" % x)
            continue
        if g.src(m) != x or g.dst(m) != x:
            rep.axioms.append("identity %s at %s has wrong endpoints" % (m, x))

    # composition: totality, no junk entries, endpoint law
    composable = set(g.composable_pairs())
    for pair in composable:
        if pair not in g._compose:
            rep.axioms.append("composition undefined for composable pair (%s, %s)" % pair)
    for (a, b), c in g._compose.items():
        if (a, b) not in composable:
            rep.axioms.append("composition defined for non-composable pair (%s, %s)" % (a, b))
        elif g.src(c) != g.src(b) or g.dst(c) != g.dst(a):
            rep.axioms.append("composite %s of (%s, %s) has wrong endpoints" % (c, a, b))
    if rep.axioms:
        return rep

    # identity laws
    for (m, s, d) in g.morphisms:
        if g.compose(g._identities[d], m) != m:
            rep.axioms.append("left identity law fails at %s" % m)
        if g.compose(m, g._identities[s]) != m:
            rep.axioms.append("right identity law fails at %s" % m)

    # associativity on all composable triples
    for (gm, fm) in composable:
        gf = g.compose(gm, fm)
        for h in (m for (m, s, _) in g.morphisms if s == g.dst(gm)):
            lhs = g.compose(g.compose(h, gm), fm)
            rhs = g.compose(h, gf)
            if lhs != rhs:
                rep.axioms.append("associativity fails at (%s, %s, %s)" % (h, gm, fm))

    # inverses
    for (m, s, d) in g.morphisms:
        inv = g._inverses.get(m)
        if inv is None:
            rep.axioms.append("missing inverse for %s" % m)
            continue
        if g.src(inv) != d or g.dst(inv) != s:
            rep.axioms.append("inverse of %s has wrong endpoints" % m)
            continue
        if g.compose(inv, m) != g._identities[s] or g.compose(m, inv) != g._identities[d]:
            rep.axioms.append("%s and %s are not two-sided inverses" % (m, inv))
    return rep


# -- components and vertex groups -------------------------------------------

def connected_components(g):
    """Partition of the objects; two objects share a class iff some morphism
    connects them.  Each class is (base, objects) with the base the first
    member in input order."""
    parent = {x: x for x in g.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (_, s, d) in g.morphisms:
        rs, rd = find(s), find(d)
        if rs != rd:
            parent[rd] = rs
    classes = {}
    for x in g.objects:
        classes.setdefault(find(x), []).append(x)
    out = []
    seen = set()
    for x in g.objects:
        r = find(x)
        if r in seen:
            continue
        seen.add(r)
        members = classes[r]
        out.append((members[0], tuple(members)))
    return out


def component_of(g, x):
    for base, members in connected_components(g):
        if x in members:
            return base, members
    raise GroupoidError("unknown object %r" % (x,))


@dataclass
class VertexGroup:
    base_object: str
    elements: tuple
    table: dict
    identity: str
    inverse: dict

    def as_group_table(self):
        return GroupTable(self.elements, self.table, name="End(%s)" % self.base_object)

    @property
    def order(self):
        return len(self.elements)


def vertex_group(g, x):
    """All loops at x with the induced multiplication, in input order."""
    if x not in g.objects:
        raise GroupoidError("unknown object %r" % (x,))
    elems = tuple(g.loops(x))
    table = {}
    for a in elems:
        for b in elems:
            c = g.compose(a, b)
            if c is None or c not in elems:
                raise GroupoidError("loops at %r are not closed under composition" % (x,))
            table[(a, b)] = c
    inverse = {a: g.inverse(a) for a in elems}
    return VertexGroup(x, elems, table, g.identity(x), inverse)


# -- functors ----------------------------------------------------------------

@dataclass
class GroupoidFunctor:
    source: ConcreteGroupoid
    target: ConcreteGroupoid
    object_map: dict
    morphism_map: dict

    def on_object(self, x):
        return self.object_map[x]

    def on_morphism(self, m):
        return self.morphism_map[m]

    def __repr__(self):
        return "GroupoidFunctor(%d->%d objects, %d->%d morphisms)" % (
            self.source.n_objects, self.target.n_objects,
            self.source.n_morphisms, self.target.n_morphisms)


def identity_functor(g):
    return GroupoidFunctor(g, g, {x: x for x in g.objects},
                           {m: m for m in g.morphism_ids})


def compose_functors(outer, inner):
    if not groupoid_equal(inner.target, outer.source):
        raise GroupoidError("functors are not composable")
    return GroupoidFunctor(
        inner.source, outer.target,
        {x: outer.object_map[inner.object_map[x]] for x in inner.source.objects},
        {m: outer.morphism_map[inner.morphism_map[m]] for m in inner.source.morphism_ids})


def functor_equal(F, G):
    """On-the-nose equality: same source and target data, same maps."""
    return (groupoid_equal(F.source, G.source) and groupoid_equal(F.target, G.target)
            and F.object_map == G.object_map and F.morphism_map == G.morphism_map)


def validate_functor(F):
    rep = ValidationReport()
    s, t = F.source, F.target
    tobj, tmor = set(t.objects), set(t.morphism_ids)
    for x in s.objects:
        if x not in F.object_map:
            rep.structural.append("object %s has no image" % x)
        elif F.object_map[x] not in tobj:
            rep.structural.append("object %s maps outside the target" % x)
    for m in s.morphism_ids:
        if m not in F.morphism_map:
            rep.structural.append("morphism %s has no image" % m)
        elif F.morphism_map[m] not in tmor:
            rep.structural.append("morphism %s maps outside the target" % m)
    if rep.structural:
        return rep
    for m in s.morphism_ids:
        fm = F.morphism_map[m]
        if t.src(fm) != F.object_map[s.src(m)] or t.dst(fm) != F.object_map[s.dst(m)]:
            rep.axioms.append("endpoints of %s are not preserved" % m)
    for x in s.objects:
        if F.morphism_map[s.identity(x)] != t.identity(F.object_map[x]):
            rep.axioms.append("identity at %s is not preserved" % x)
    for (gm, fm) in s.composable_pairs():
        lhs = F.morphism_map[s.compose(gm, fm)]
        rhs = t.compose(F.morphism_map[gm], F.morphism_map[fm])
        if lhs != rhs:
            rep.axioms.append("composition (%s, %s) is not preserved" % (gm, fm))
    return rep


def is_cofibration(F):
    """True iff the object map is injective."""
    values = [F.object_map[x] for x in F.source.objects]
    return len(set(values)) == len(values)


@dataclass
class EquivalenceReport:
    ok: bool
    failures: tuple = ()
    witness: str = ""

    def __bool__(self):
        return self.ok


def is_equivalence(F):
    """Full + faithful + essentially surjective, by finite enumeration.

    The report lists which of the three properties fail, with a witness.
    """
    s, t = F.source, F.target
    failures, witness = [], []
    for x in s.objects:
        for y in s.objects:
            dom = s.hom(x, y)
            images = [F.morphism_map[m] for m in dom]
            cod = t.hom(F.object_map[x], F.object_map[y])
            if len(set(images)) != len(images):
                failures.append("not faithful")
                witness.append("hom(%s, %s) collapses" % (x, y))
            if set(images) != set(cod):
                failures.append("not full")
                witness.append("hom(%s, %s) misses morphisms" % (x, y))
    image_objects = {F.object_map[x] for x in s.objects}
    for base, members in connected_components(t):
        if not image_objects.intersection(members):
            failures.append("not essentially surjective")
            witness.append("component of %s is not reached" % base)
    failures = tuple(dict.fromkeys(failures))
    return EquivalenceReport(not failures, failures, "; ".join(witness[:3]))


def hom_bijection_holds(F):
    """For equivalences: every hom-set maps bijectively onto its target hom-set."""
    s, t = F.source, F.target
    for x in s.objects:
        for y in s.objects:
            images = [F.morphism_map[m] for m in s.hom(x, y)]
            cod = t.hom(F.object_map[x], F.object_map[y])
            if len(set(images)) != len(images) or set(images) != set(cod):
                return False
    return True


# -- builders ----------------------------------------------------------------

def arrow_name(x, y):
    return "%s>%s" % (x, y)


def pair_obj(x, y):
    return "(%s,%s)" % (x, y)


def pair_mor(m, n):
    return "(%s,%s)" % (m, n)


def du_obj(k, x):
    return "%d.%s" % (k, x)


def du_mor(k, m):
    return "%d.%s" % (k, m)


def discrete(objects):
    objects = tuple(objects)
    morphisms = [(arrow_name(x, x), x, x) for x in objects]
    compose = {(arrow_name(x, x), arrow_name(x, x)): arrow_name(x, x) for x in objects}
    identities = {x: arrow_name(x, x) for x in objects}
    inverses = {arrow_name(x, x): arrow_name(x, x) for x in objects}
    return ConcreteGroupoid(objects, morphisms, compose, identities, inverses)


def codiscrete(objects):
    objects = tuple(objects)
    morphisms = [(arrow_name(x, y), x, y) for x in objects for y in objects]
    compose = {}
    for x in objects:
        for y in objects:
            for z in objects:
                compose[(arrow_name(y, z), arrow_name(x, y))] = arrow_name(x, z)
    identities = {x: arrow_name(x, x) for x in objects}
    inverses = {arrow_name(x, y): arrow_name(y, x) for x in objects for y in objects}
    return ConcreteGroupoid(objects, morphisms, compose, identities, inverses)


def delooping(table, obj="*"):
    """One-object groupoid on a group multiplication table; morphism ids are
    the element names."""
    if not isinstance(table, GroupTable):
        raise GroupoidError("delooping needs a GroupTable")
    morphisms = [(a, obj, obj) for a in table.elements]
    compose = {(a, b): table.mult[(a, b)] for a in table.elements for b in table.elements}
    identities = {obj: table.identity}
    inverses = dict(table.inverse)
    return ConcreteGroupoid((obj,), morphisms, compose, identities, inverses)


def disjoint_union(*parts):
    """Disjoint union; names are prefixed "0.", "1.", ... by summand."""
    objects, morphisms, compose, identities, inverses = [], [], {}, {}, {}
    for k, g in enumerate(parts):
        objects.extend(du_obj(k, x) for x in g.objects)
        morphisms.extend((du_mor(k, m), du_obj(k, s), du_obj(k, d))
                         for (m, s, d) in g.morphisms)
        for (a, b), c in g._compose.items():
            compose[(du_mor(k, a), du_mor(k, b))] = du_mor(k, c)
        for x, m in g._identities.items():
            identities[du_obj(k, x)] = du_mor(k, m)
        for a, b in g._inverses.items():
            inverses[du_mor(k, a)] = du_mor(k, b)
    return ConcreteGroupoid(objects, morphisms, compose, identities, inverses)


def product(g, h):
    """Binary product; objects are pair_obj(x, y), morphisms pair_mor(m, n)."""
    objects = [pair_obj(x, y) for x in g.objects for y in h.objects]
    morphisms = [(pair_mor(m, n), pair_obj(ms, ns), pair_obj(md, nd))
                 for (m, ms, md) in g.morphisms for (n, ns, nd) in h.morphisms]
    compose = {}
    for (a1, b1), c1 in g._compose.items():
        for (a2, b2), c2 in h._compose.items():
            compose[(pair_mor(a1, a2), pair_mor(b1, b2))] = pair_mor(c1, c2)
    identities = {pair_obj(x, y): pair_mor(g._identities[x], h._identities[y])
                  for x in g.objects for y in h.objects}
    inverses = {pair_mor(m, n): pair_mor(g._inverses[m], h._inverses[n])
                for m in g.morphism_ids for n in h.morphism_ids}
    return ConcreteGroupoid(objects, morphisms, compose, identities, inverses)


def full_subgroupoid(g, objects):
    objects = tuple(objects)
    keep = set(objects)
    if not keep.issubset(set(g.objects)):
        raise GroupoidError("unknown objects in restriction")
    morphisms = [(m, s, d) for (m, s, d) in g.morphisms if s in keep and d in keep]
    mids = {m for (m, _, _) in morphisms}
    compose = {(a, b): c for (a, b), c in g._compose.items() if a in mids and b in mids}
    identities = {x: g._identities[x] for x in objects}
    inverses = {m: g._inverses[m] for m in mids}
    return ConcreteGroupoid(objects, morphisms, compose, identities, inverses)


def relabel(g, object_names=None, morphism_names=None, object_order=None,
            morphism_order=None):
    """Rename and/or reorder; maps default to the identity."""
    object_names = object_names or {}
    morphism_names = morphism_names or {}
    obj_seq = object_order if object_order is not None else g.objects
    mor_seq = morphism_order if morphism_order is not None else g.morphism_ids

    def on(x):
        return object_names.get(x, x)

    def mn(m):
        return morphism_names.get(m, m)

    objects = [on(x) for x in obj_seq]
    lookup = {m: (s, d) for (m, s, d) in g.morphisms}
    morphisms = [(mn(m), on(lookup[m][0]), on(lookup[m][1])) for m in mor_seq]
    compose = {(mn(a), mn(b)): mn(c) for (a, b), c in g._compose.items()}
    identities = {on(x): mn(m) for x, m in g._identities.items()}
    inverses = {mn(a): mn(b) for a, b in g._inverses.items()}
    return ConcreteGroupoid(objects, morphisms, compose, identities, inverses)


def standard_groupoid(name, **params):
    """Builder dispatcher: discrete, codiscrete, delooping, disjoint_union, product."""
    if name == "discrete":
        objs = params.get("objects") or ["x%d" % i for i in range(params["n"])]
        return discrete(objs)
    if name == "codiscrete":
        objs = params.get("objects") or ["x%d" % i for i in range(params["n"])]
        return codiscrete(objs)
    if name == "delooping":
        return delooping(params["table"], obj=params.get("object", "*"))
    if name == "disjoint_union":
        return disjoint_union(*params["parts"])
    if name == "product":
        return product(params["left"], params["right"])
    raise GroupoidError("unknown builder %r" % (name,))


# -- functor search engine -----------------------------------------------------

def all_object_maps(source, target):
    """All object maps source -> target in deterministic lexicographic order."""
    if not source.objects:
        yield {}
        return
    for choice in cartesian(target.objects, repeat=len(source.objects)):
        yield dict(zip(source.objects, choice))


def search_functors(source, target, object_maps=None, injective_morphisms=False,
                    limit=None):
    """Backtracking enumeration of functors source -> target.

    Assignments propagate forced composites and inverses, so the effective
    branching is over free generators only.  Deterministic order.
    """
    results = []
    mor_ids = list(source.morphism_ids)
    if object_maps is None:
        object_maps = all_object_maps(source, target)

    for omap in object_maps:
        assign = {}
        used = set()

        def place(m, v, trail):
            # returns False on conflict; records additions in trail
            cur = assign.get(m)
            if cur is not None:
                return cur == v
            if target.src(v) != omap[source.src(m)] or target.dst(v) != omap[source.dst(m)]:
                return False
            if injective_morphisms and v in used:
                return False
            assign[m] = v
            if injective_morphisms:
                used.add(v)
            trail.append(m)
            queue = deque([m])
            while queue:
                a = queue.popleft()
                va = assign[a]
                inv = source.inverse(a)
                if inv is not None:
                    vinv = target.inverse(va)
                    if vinv is None:
                        return False
                    if not _force(inv, vinv, trail, queue):
                        return False
                for b in list(assign):
                    vb = assign[b]
                    c = source.compose(a, b)
                    if c is not None:
                        vc = target.compose(va, vb)
                        if vc is None or not _force(c, vc, trail, queue):
                            return False
                    c = source.compose(b, a)
                    if c is not None:
                        vc = target.compose(vb, va)
                        if vc is None or not _force(c, vc, trail, queue):
                            return False
            return True

        def _force(m, v, trail, queue):
            cur = assign.get(m)
            if cur is not None:
                return cur == v
            if target.src(v) != omap[source.src(m)] or target.dst(v) != omap[source.dst(m)]:
                return False
            if injective_morphisms and v in used:
                return False
            assign[m] = v
            if injective_morphisms:
                used.add(v)
            trail.append(m)
            queue.append(m)
            return True

        def undo(trail, depth):
            while len(trail) > depth:
                m = trail.pop()
                v = assign.pop(m)
                if injective_morphisms:
                    used.discard(v)

        def dfs(i, trail):
            if limit is not None and len(results) >= limit:
                return
            while i < len(mor_ids) and mor_ids[i] in assign:
                i += 1
            if i == len(mor_ids):
                results.append(GroupoidFunctor(source, target, dict(omap), dict(assign)))
                return
            m = mor_ids[i]
            cods = target.hom(omap[source.src(m)], omap[source.dst(m)])
            for v in cods:
                depth = len(trail)
                if place(m, v, trail):
                    dfs(i + 1, trail)
                undo(trail, depth)
                if limit is not None and len(results) >= limit:
                    return

        trail = []
        ok = True
        for x in source.objects:
            if not place(source.identity(x), target.identity(omap[x]), trail):
                ok = False
                break
        if ok:
            dfs(0, trail)
        if limit is not None and len(results) >= limit:
            break
    return results


# -- isomorphism search --------------------------------------------------------

def _object_signature(g, x):
    outs = tuple(sorted(len(g.hom(x, y)) for y in g.objects))
    ins = tuple(sorted(len(g.hom(y, x)) for y in g.objects))
    return (len(g.loops(x)), outs, ins)


def find_isomorphism(g, h):
    """Backtracking isomorphism search; returns (object_map, morphism_map) or None.

    Intended for groupoids with <= 6 objects and <= 48 morphisms.
    """
    if g.n_objects != h.n_objects or g.n_morphisms != h.n_morphisms:
        return None
    sig_g = {x: _object_signature(g, x) for x in g.objects}
    sig_h = {y: _object_signature(h, y) for y in h.objects}
    if sorted(sig_g.values()) != sorted(sig_h.values()):
        return None

    candidates = {x: [y for y in h.objects if sig_h[y] == sig_g[x]] for x in g.objects}

    def object_maps():
        objs = list(g.objects)

        def rec(i, acc, taken):
            if i == len(objs):
                yield dict(acc)
                return
            x = objs[i]
            for y in candidates[x]:
                if y in taken:
                    continue
                acc[x] = y
                taken.add(y)
                yield from rec(i + 1, acc, taken)
                taken.discard(y)
                del acc[x]

        yield from rec(0, {}, set())

    found = search_functors(g, h, object_maps=object_maps(),
                            injective_morphisms=True, limit=1)
    if not found:
        return None
    F = found[0]
    return F.object_map, F.morphism_map


def is_isomorphic(g, h):
    return find_isomorphism(g, h) is not None
