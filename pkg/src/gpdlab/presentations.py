"""Presented groupoids: finite carriers for pushouts, and a bounded
concretization procedure that either returns the realized finite groupoid
(certified against the presentation) or reports Unknown.

Words are sequences of generator ids composed right-to-left, so the word
(g2, g1) means "g1 then g2".  Relations are pairs of words with equal
endpoints; an empty word stands for the identity at the endpoints of its
partner.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .groupoids import (ConcreteGroupoid, GroupoidError, GroupoidFunctor,
                        NonCofibrationError, ValidationReport, groupoid_equal,
                        is_cofibration, validate_groupoid)


@dataclass(frozen=True)
class PresentedGroupoid:
    objects: tuple
    generators: tuple          # of (id, src, dst)
    relations: tuple           # of (word, word), words are tuples of generator ids

    def generator_src(self, gid):
        return self._gen_lookup()[gid][0]

    def generator_dst(self, gid):
        return self._gen_lookup()[gid][1]

    def _gen_lookup(self):
        cache = getattr(self, "_lookup_cache", None)
        if cache is None:
            cache = {gid: (s, d) for (gid, s, d) in self.generators}
            object.__setattr__(self, "_lookup_cache", cache)
        return cache

    def word_endpoints(self, word):
        """(src, dst) of a nonempty word, checking internal composability."""
        look = self._gen_lookup()
        src = look[word[-1]][0]
        cur = src
        for gid in reversed(word):
            gs, gd = look[gid]
            if gs != cur:
                raise GroupoidError("word %r is not composable" % (word,))
            cur = gd
        return src, cur


def validate_presentation(p):
    rep = ValidationReport()
    if len(set(p.objects)) != len(p.objects):
        rep.structural.append("duplicate object identifiers")
    gids = [g for (g, _, _) in p.generators]
    if len(set(gids)) != len(gids):
        rep.structural.append("duplicate generator identifiers")
    oset, gset = set(p.objects), set(gids)
    for (g, s, d) in p.generators:
        if s not in oset or d not in oset:
            rep.structural.append("generator %s has unknown endpoint" % g)
    for (w1, w2) in p.relations:
        for w in (w1, w2):
            for gid in w:
                if gid not in gset:
                    rep.structural.append("relation uses unknown generator %r" % (gid,))
    if rep.structural:
        return rep
    for (w1, w2) in p.relations:
        eps = []
        for w in (w1, w2):
            if w:
                try:
                    eps.append(p.word_endpoints(w))
                except GroupoidError:
                    rep.axioms.append("relation word %r is not composable" % (w,))
        if len(eps) == 2 and eps[0] != eps[1]:
            rep.axioms.append("relation words %r, %r have different endpoints" % (w1, w2))
        if not w1 and not w2:
            continue
        if (not w1 or not w2) and eps and eps[0][0] != eps[0][1]:
            rep.axioms.append("identity relation %r has mismatched endpoints" % ((w1, w2),))
    return rep


@dataclass
class PresentedFunctor:
    """A functor into a presented groupoid: an object map plus a word for
    every source morphism."""
    source: ConcreteGroupoid
    target: PresentedGroupoid
    object_map: dict
    word_map: dict

    def objects_injective(self):
        vals = [self.object_map[x] for x in self.source.objects]
        return len(set(vals)) == len(vals)


@dataclass
class PushoutResult:
    presentation: PresentedGroupoid
    from_cofibration_target: PresentedFunctor   # leg from B (the cofibration's target)
    from_other_leg: PresentedFunctor            # leg from C


def pushout_along_cofibration(i, f):
    """Pushout B <- A -> C of groupoids along the cofibration i: A >-> B.

    Objects: (objects of B not hit by A, tagged "b:") plus the objects of C
    (tagged "c:").  Generators: all morphisms of B and C.  Relations: the two
    composition tables plus the identification of the two images of every
    morphism of A.
    """
    if not is_cofibration(i):
        raise NonCofibrationError(
            "pushouts are only supported along functors injective on objects")
    if not groupoid_equal(i.source, f.source):
        raise GroupoidError("the two legs do not share their source")
    A, B, C = i.source, i.target, f.target

    image_objects = {i.object_map[a]: a for a in A.objects}

    def bobj(x):
        if x in image_objects:
            return "c:" + f.object_map[image_objects[x]]
        return "b:" + x

    def cobj(x):
        return "c:" + x

    objects = tuple([bobj(x) for x in B.objects if x not in image_objects]
                    + [cobj(x) for x in C.objects])
    generators = tuple([("b:" + m, bobj(s), bobj(d)) for (m, s, d) in B.morphisms]
                       + [("c:" + m, cobj(s), cobj(d)) for (m, s, d) in C.morphisms])
    relations = []
    for (a, b), c in sorted(B._compose.items()):
        relations.append((("b:" + a, "b:" + b), ("b:" + c,)))
    for (a, b), c in sorted(C._compose.items()):
        relations.append((("c:" + a, "c:" + b), ("c:" + c,)))
    for m in A.morphism_ids:
        relations.append((("b:" + i.morphism_map[m],), ("c:" + f.morphism_map[m],)))
    pres = PresentedGroupoid(objects, generators, tuple(relations))

    leg_b = PresentedFunctor(B, pres, {x: bobj(x) for x in B.objects},
                             {m: ("b:" + m,) for m in B.morphism_ids})
    leg_c = PresentedFunctor(C, pres, {x: cobj(x) for x in C.objects},
                             {m: ("c:" + m,) for m in C.morphism_ids})
    return PushoutResult(pres, leg_b, leg_c)


# -- bounded concretization ------------------------------------------------------

@dataclass
class Unknown:
    """Concretization gave up: the enumeration exceeded its bound.  Never a
    wrong answer; retry with a larger bound if the realization is finite."""
    reason: str
    created: int = 0
    live: int = 0

    def __bool__(self):
        return False


@dataclass
class Concretization:
    groupoid: ConcreteGroupoid
    generator_images: dict        # generator id -> morphism id
    words: dict = field(repr=False, default_factory=dict)   # morphism id -> sym word
    roots: dict = field(repr=False, default_factory=dict)   # morphism id -> source object

    def __bool__(self):
        return True

    def induced_functor(self, object_map, generator_map, target, check=True):
        """The functor out of the realization determined by sending each
        generator to ``generator_map[gid]`` in ``target``.  Valid whenever the
        relations hold in the target under that assignment."""
        mor_map = {}
        for mid, word in self.words.items():
            cur = target.identity(object_map[self.roots[mid]])
            for sign, gid in word:
                step = generator_map[gid]
                if sign < 0:
                    step = target.inverse(step)
                cur = target.compose(step, cur)
                if cur is None:
                    raise GroupoidError("generator images do not compose in the target")
            mor_map[mid] = cur
        F = GroupoidFunctor(self.groupoid, target, dict(object_map), mor_map)
        if check:
            from .groupoids import validate_functor
            rep = validate_functor(F)
            if not rep.ok:
                raise GroupoidError("induced assignment is not a functor: %s"
                                    % "; ".join(rep.all_messages()[:3]))
        return F


class _BoundHit(Exception):
    pass


class _Closure:
    """Bounded left-action closure for a groupoid presentation.

    Nodes are morphisms of the realization, grown from the identity at each
    object by left multiplication with generators and their formal inverses.
    Relations are traced at every node; endpoint coincidences are merged with
    full table propagation.  On success the finished table is certified
    against the presentation, so a returned groupoid is always correct.
    """

    def __init__(self, pres, bound):
        self.pres = pres
        self.bound = bound
        self.cap = max(4 * bound, bound + 256)
        self.parent = []
        self.dstobj = []
        self.rootobj = []
        self.origin = []        # None for identity nodes, else (parent, sym)
        self.acts = []          # per node: dict sym -> node
        self.live = 0
        self.created = 0
        self.todo = deque()
        # syms: (+1, gid) acts as "gid after -", (-1, gid) as its inverse
        self.sym_src = {}
        self.sym_dst = {}
        self.syms_by_src = {}
        for (gid, s, d) in pres.generators:
            self.sym_src[(1, gid)] = s
            self.sym_dst[(1, gid)] = d
            self.sym_src[(-1, gid)] = d
            self.sym_dst[(-1, gid)] = s
            self.syms_by_src.setdefault(s, []).append((1, gid))
            self.syms_by_src.setdefault(d, []).append((-1, gid))
        # relations preprocessed to sym sequences applied first-to-last
        self.rels_by_src = {}
        for (w1, w2) in pres.relations:
            ref = w1 or w2
            if not ref:
                continue
            src, dst = pres.word_endpoints(ref)
            seq1 = tuple((1, gid) for gid in reversed(w1))
            seq2 = tuple((1, gid) for gid in reversed(w2))
            self.rels_by_src.setdefault(src, []).append((seq1, seq2))
        self.ident = {}
        for obj in pres.objects:
            self.ident[obj] = self._new_node(obj, obj, None)

    # union-find ---------------------------------------------------------

    def find(self, n):
        p = self.parent
        while p[n] != n:
            p[n] = p[p[n]]
            n = p[n]
        return n

    def _new_node(self, root, dst, origin):
        if self.live >= self.cap or self.created >= self.cap:
            raise _BoundHit()
        n = len(self.parent)
        self.parent.append(n)
        self.rootobj.append(root)
        self.dstobj.append(dst)
        self.origin.append(origin)
        self.acts.append({})
        self.live += 1
        self.created += 1
        self.todo.append(n)
        return n

    def _inv(self, sym):
        return (-sym[0], sym[1])

    def act(self, sym, n):
        m = self.acts[self.find(n)].get(sym)
        return None if m is None else self.find(m)

    def define(self, sym, n):
        n = self.find(n)
        m = self.acts[n].get(sym)
        if m is not None:
            return self.find(m)
        m = self._new_node(self.rootobj[n], self.sym_dst[sym], (n, sym))
        self.acts[n][sym] = m
        self.acts[m][self._inv(sym)] = n
        return m

    def merge(self, a, b):
        queue = deque([(a, b)])
        while queue:
            x, y = queue.popleft()
            x, y = self.find(x), self.find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            # y is absorbed into x
            self.parent[y] = x
            self.live -= 1
            moved = self.acts[y]
            self.acts[y] = {}
            tab = self.acts[x]
            for sym, tgt in moved.items():
                cur = tab.get(sym)
                if cur is None:
                    tab[sym] = tgt
                    rev_tab = self.acts[self.find(tgt)]
                    inv = self._inv(sym)
                    back = rev_tab.get(inv)
                    if back is None:
                        rev_tab[inv] = x
                    else:
                        queue.append((back, x))
                else:
                    queue.append((cur, tgt))

    def trace(self, seq, n, fill):
        cur = self.find(n)
        for sym in seq:
            nxt = self.act(sym, cur)
            if nxt is None:
                if not fill:
                    return None
                nxt = self.define(sym, cur)
            cur = self.find(nxt)
        return cur

    def run(self):
        passes = 0
        while True:
            while self.todo:
                n = self.todo.popleft()
                if self.find(n) != n:
                    continue
                for (seq1, seq2) in self.rels_by_src.get(self.dstobj[n], ()):
                    e1 = self.trace(seq1, n, fill=True)
                    e2 = self.trace(seq2, n, fill=True)
                    self.merge(e1, e2)
                    if self.find(n) != n:
                        break
                n = self.find(n)
                for sym in self.syms_by_src.get(self.dstobj[n], ()):
                    self.define(sym, n)
            # certify; requeue offenders if the quotient is not stable yet
            passes += 1
            if passes > 64:
                raise _BoundHit()
            dirty = False
            for n in self.live_nodes():
                for sym in self.syms_by_src.get(self.dstobj[n], ()):
                    if self.act(sym, n) is None:
                        self.todo.append(n)
                        dirty = True
                for (seq1, seq2) in self.rels_by_src.get(self.dstobj[n], ()):
                    e1 = self.trace(seq1, n, fill=False)
                    e2 = self.trace(seq2, n, fill=False)
                    if e1 is None or e2 is None or e1 != e2:
                        self.todo.append(n)
                        dirty = True
            if not dirty:
                return

    def live_nodes(self):
        return [n for n in range(len(self.parent)) if self.find(n) == n]

    def node_word(self, n):
        # creation word of a node, as a sym sequence applied first-to-last
        word = []
        while self.origin[n] is not None:
            parent, sym = self.origin[n]
            word.append(sym)
            n = parent
        word.reverse()
        return tuple(word)


def concretize(pres, bound=10000, validate=True):
    """Bounded realization of a presented groupoid.

    Returns a certified Concretization when a closed morphism set with at
    most ``bound`` elements is found, else Unknown.  The certification step
    re-evaluates every relation in the finished composition table, so a
    returned groupoid is the realization, never an over- or under-quotient.
    """
    if bound <= 0:
        raise GroupoidError("bound must be positive")
    rep = validate_presentation(pres)
    if not rep.ok:
        raise GroupoidError("invalid presentation: %s" % "; ".join(rep.all_messages()[:3]))

    closure = _Closure(pres, bound)
    try:
        closure.run()
    except _BoundHit:
        return Unknown("enumeration exceeded the bound", closure.created, closure.live)
    nodes = closure.live_nodes()
    if len(nodes) > bound:
        return Unknown("realization larger than the bound", closure.created, len(nodes))

    name = {n: "m%d" % k for k, n in enumerate(nodes)}
    words = {name[n]: closure.node_word(n) for n in nodes}
    roots = {name[n]: closure.rootobj[n] for n in nodes}
    morphisms = [(name[n], closure.rootobj[n], closure.dstobj[n]) for n in nodes]

    compose = {}
    for n2 in nodes:
        w2 = words[name[n2]]
        for n1 in nodes:
            if closure.dstobj[n1] != closure.rootobj[n2]:
                continue
            end = closure.trace(w2, n1, fill=False)
            if end is None:
                return Unknown("composition table failed to close", closure.created,
                               len(nodes))
            compose[(name[n2], name[n1])] = name[end]
    identities = {obj: name[closure.find(node)] for obj, node in closure.ident.items()}
    inverses = {}
    for n in nodes:
        w = words[name[n]]
        inv_word = tuple((-s, g) for (s, g) in reversed(w))
        end = closure.trace(inv_word, closure.find(closure.ident[closure.dstobj[n]]),
                            fill=False)
        if end is None:
            return Unknown("inverse table failed to close", closure.created, len(nodes))
        inverses[name[n]] = name[end]

    g = ConcreteGroupoid(pres.objects, morphisms, compose, identities, inverses)
    gen_images = {}
    for (gid, s, d) in pres.generators:
        img = closure.act((1, gid), closure.find(closure.ident[s]))
        if img is None:
            return Unknown("generator action missing", closure.created, len(nodes))
        gen_images[gid] = name[img]

    # certification: the finished table satisfies every relation exactly
    for (w1, w2) in pres.relations:
        ref = w1 or w2
        if not ref:
            continue
        src, _ = pres.word_endpoints(ref)
        def evaluate(word):
            cur = identities[src]
            for gid in reversed(word):
                cur = compose.get((gen_images[gid], cur))
                if cur is None:
                    return None
            return cur
        if evaluate(w1) != evaluate(w2):
            return Unknown("certification failed", closure.created, len(nodes))
    if validate and g.n_morphisms <= 2000:
        vrep = validate_groupoid(g)
        if not vrep.ok:
            return Unknown("realized table failed the groupoid axioms",
                           closure.created, len(nodes))
    return Concretization(g, gen_images, words, roots)


def evaluate_word_in(target, assignment, word, at_object=None):
    """Evaluate a composition word (right-to-left) in a concrete groupoid
    under a generator assignment; None if the images do not compose."""
    if not word:
        return target.identity(at_object)
    cur = assignment[word[-1]]
    for gid in reversed(word[:-1]):
        cur = target.compose(assignment[gid], cur)
        if cur is None:
            return None
    return cur
