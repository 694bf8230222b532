"""Small finite groups as explicit multiplication tables."""

from __future__ import annotations

from itertools import product as cartesian


class GroupTableError(ValueError):
    """A multiplication table that violates the group axioms."""


class GroupTable:
    """Finite group given by an ordered element list and a total multiplication map.

    The element order is preserved; it fixes the basis order of every
    delooping groupoid built from the table.
    """

    def __init__(self, elements, mult, name="G"):
        self.elements = tuple(elements)
        self.mult = dict(mult)
        self.name = name
        self._validate()
        self.identity = self._scan_identity()
        self.inverse = {a: self._scan_inverse(a) for a in self.elements}

    def _validate(self):
        elems = self.elements
        if len(set(elems)) != len(elems):
            raise GroupTableError("duplicate element names")
        eset = set(elems)
        for a, b in cartesian(elems, elems):
            c = self.mult.get((a, b))
            if c is None or c not in eset:
                raise GroupTableError("multiplication not closed at (%r, %r)" % (a, b))
        for a, b, c in cartesian(elems, elems, elems):
            if self.mult[(self.mult[(a, b)], c)] != self.mult[(a, self.mult[(b, c)])]:
                raise GroupTableError("associativity fails at (%r, %r, %r)" % (a, b, c))
        e = self._scan_identity()
        if e is None:
            raise GroupTableError("no identity element")
        for a in elems:
            if not any(self.mult[(a, b)] == e == self.mult[(b, a)] for b in elems):
                raise GroupTableError("no inverse for %r" % (a,))

    def _scan_identity(self):
        for e in self.elements:
            if all(self.mult[(e, a)] == a == self.mult[(a, e)] for a in self.elements):
                return e
        return None

    def _scan_inverse(self, a):
        for b in self.elements:
            if self.mult[(a, b)] == self.identity == self.mult[(b, a)]:
                return b
        raise GroupTableError("no inverse for %r" % (a,))

    def __len__(self):
        return len(self.elements)

    def order_of(self, a):
        n, x = 1, a
        while x != self.identity:
            x = self.mult[(x, a)]
            n += 1
        return n

    def element_orders(self):
        return tuple(sorted(self.order_of(a) for a in self.elements))

    def is_abelian(self):
        return all(self.mult[(a, b)] == self.mult[(b, a)]
                   for a, b in cartesian(self.elements, self.elements))

    def conjugacy_class_count(self):
        seen, count = set(), 0
        for a in self.elements:
            if a in seen:
                continue
            count += 1
            for g in self.elements:
                seen.add(self.mult[(self.mult[(g, a)], self.inverse[g])])
        return count

    def __repr__(self):
        return "GroupTable(%s, order %d)" % (self.name, len(self))


def cyclic(n, name=None):
    elems = ["g%d" % i for i in range(n)]
    mult = {(elems[i], elems[j]): elems[(i + j) % n] for i in range(n) for j in range(n)}
    return GroupTable(elems, mult, name or "Z%d" % n)


def trivial():
    return cyclic(1, name="1")


def direct_product(t1, t2, name=None):
    elems = ["(%s,%s)" % (a, b) for a in t1.elements for b in t2.elements]
    mult = {}
    for a1, b1 in cartesian(t1.elements, t2.elements):
        for a2, b2 in cartesian(t1.elements, t2.elements):
            mult[("(%s,%s)" % (a1, b1), "(%s,%s)" % (a2, b2))] = \
                "(%s,%s)" % (t1.mult[(a1, a2)], t2.mult[(b1, b2)])
    return GroupTable(elems, mult, name or "%sx%s" % (t1.name, t2.name))


def _perm_mul(p, q):
    # (p*q)(i) = p(q(i))
    return tuple(p[q[i]] for i in range(len(p)))


def from_permutations(generators, name="G"):
    """Close a list of permutations (tuples) under composition; elements are
    named p0, p1, ... in BFS discovery order with the identity first."""
    degree = len(generators[0])
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = _perm_mul(g, p)
                if q not in index:
                    index[q] = len(elems)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    names = ["p%d" % i for i in range(len(elems))]
    mult = {}
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            mult[(names[i], names[j])] = names[index[_perm_mul(p, q)]]
    return GroupTable(names, mult, name)


def symmetric3():
    return from_permutations([(1, 0, 2), (1, 2, 0)], name="S3")


def dihedral(n, name=None):
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((n - i) % n for i in range(n))
    return from_permutations([rot, ref], name=name or "D%d" % n)


def klein4():
    return from_permutations([(1, 0, 3, 2), (2, 3, 0, 1)], name="V4")


def alternating4():
    return from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)], name="A4")


def quaternion8():
    elems = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    neg = {"1": "-1", "-1": "1", "i": "-i", "-i": "i",
           "j": "-j", "-j": "j", "k": "-k", "-k": "k"}
    base = {("1", "1"): "1", ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
            ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
            ("1", "i"): "i", ("i", "1"): "i", ("1", "j"): "j", ("j", "1"): "j",
            ("1", "k"): "k", ("k", "1"): "k"}

    def strip(x):
        return (x[1:], -1) if x.startswith("-") else (x, 1)

    mult = {}
    for a in elems:
        for b in elems:
            ua, sa = strip(a)
            ub, sb = strip(b)
            c = base[(ua, ub)]
            uc, sc = strip(c)
            s = sa * sb * sc
            mult[(a, b)] = uc if s == 1 else "-" + uc
    return GroupTable(elems, mult, "Q8")


def group_isomorphic(t1, t2):
    """Brute-force group isomorphism test, intended for orders <= 24."""
    if len(t1) != len(t2):
        return False
    if t1.element_orders() != t2.element_orders():
        return False
    if t1.is_abelian() != t2.is_abelian():
        return False
    if t1.conjugacy_class_count() != t2.conjugacy_class_count():
        return False

    # Greedy generating sequence for t1.
    gens = []
    closure = {t1.identity}
    for a in t1.elements:
        if a in closure:
            continue
        gens.append(a)
        frontier = list(closure | {a})
        closure.add(a)
        while frontier:
            nxt = []
            for x in frontier:
                for g in list(closure):
                    for y in (t1.mult[(x, g)], t1.mult[(g, x)]):
                        if y not in closure:
                            closure.add(y)
                            nxt.append(y)
            frontier = nxt
        if len(closure) == len(t1):
            break

    def close_map(images):
        # Extend gens -> images to a full homomorphism; None on failure.
        hom = {t1.identity: t2.identity}
        frontier = [t1.identity]
        for g, img in zip(gens, images):
            if g in hom and hom[g] != img:
                return None
            hom[g] = img
            frontier.append(g)
        while frontier:
            nxt = []
            for x in frontier:
                for g in list(hom):
                    for a, b in ((t1.mult[(x, g)], t2.mult[(hom[x], hom[g])]),
                                 (t1.mult[(g, x)], t2.mult[(hom[g], hom[x])])):
                        if a in hom:
                            if hom[a] != b:
                                return None
                        else:
                            hom[a] = b
                            nxt.append(a)
            frontier = nxt
        return hom

    def search(i, images):
        if i == len(gens):
            hom = close_map(images)
            return hom is not None and len(set(hom.values())) == len(t2)
        want = t1.order_of(gens[i])
        for b in t2.elements:
            if t2.order_of(b) != want:
                continue
            if search(i + 1, images + [b]):
                return True
        return False

    return search(0, [])
