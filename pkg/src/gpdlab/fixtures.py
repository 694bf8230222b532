"""Named fixture groupoids for suites and the CLI, plus seeded random
constructions used by the randomized verification suites."""

from __future__ import annotations

import numpy as np

from . import groups
from .groupoids import (GroupoidError, GroupoidFunctor, codiscrete, delooping,
                        discrete, disjoint_union, full_subgroupoid, product,
                        relabel)


def _letters(n):
    return ["abcdefgh"[i] for i in range(n)]


_BUILDERS = {
    "B1": lambda: discrete(["*"]),
    "BZ2": lambda: delooping(groups.cyclic(2)),
    "BZ3": lambda: delooping(groups.cyclic(3)),
    "BZ4": lambda: delooping(groups.cyclic(4)),
    "BV4": lambda: delooping(groups.klein4()),
    "BS3": lambda: delooping(groups.symmetric3()),
    "C2": lambda: codiscrete(_letters(2)),
    "C3": lambda: codiscrete(_letters(3)),
    "D2": lambda: discrete(_letters(2)),
    "D3": lambda: discrete(_letters(3)),
    "BZ2xC2": lambda: product(delooping(groups.cyclic(2)), codiscrete(_letters(2))),
    "BZ3xC2": lambda: product(delooping(groups.cyclic(3)), codiscrete(_letters(2))),
    "BS3xC2": lambda: product(delooping(groups.symmetric3()), codiscrete(_letters(2))),
    "BZ2xC3": lambda: product(delooping(groups.cyclic(2)), codiscrete(_letters(3))),
    "B1+B1": lambda: disjoint_union(discrete(["*"]), discrete(["*"])),
    "BZ2+C2": lambda: disjoint_union(delooping(groups.cyclic(2)),
                                     codiscrete(_letters(2))),
    "BZ2+BZ2": lambda: disjoint_union(delooping(groups.cyclic(2)),
                                      delooping(groups.cyclic(2))),
    "BS3+BZ3": lambda: disjoint_union(delooping(groups.symmetric3()),
                                      delooping(groups.cyclic(3))),
    "C2+C3": lambda: disjoint_union(codiscrete(_letters(2)), codiscrete(_letters(3))),
    "BS3+C2": lambda: disjoint_union(delooping(groups.symmetric3()),
                                     codiscrete(_letters(2))),
}

# known irreducible dimension multisets per vertex group, used as the
# character-table oracle for block profiles
IRREDUCIBLE_DIMENSIONS = {
    "1": (1,),
    "Z2": (1, 1),
    "Z3": (1, 1, 1),
    "Z4": (1, 1, 1, 1),
    "Z5": (1,) * 5,
    "Z6": (1,) * 6,
    "Z8": (1,) * 8,
    "Z9": (1,) * 9,
    "Z10": (1,) * 10,
    "Z12": (1,) * 12,
    "V4": (1, 1, 1, 1),
    "S3": (1, 1, 2),
    "D4": (1, 1, 1, 1, 2),
    "D5": (1, 1, 2, 2),
    "D6": (1, 1, 1, 1, 2, 2),
    "Q8": (1, 1, 1, 1, 2),
    "A4": (1, 1, 1, 3),
}


def fixture_names():
    return sorted(_BUILDERS)


def fixture(name):
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise GroupoidError("unknown fixture %r" % (name,)) from None


def group_zoo():
    """Groups of order at most 12 for the randomized suites."""
    return [groups.trivial(), groups.cyclic(2), groups.cyclic(3), groups.cyclic(4),
            groups.cyclic(5), groups.cyclic(6), groups.cyclic(8), groups.cyclic(9),
            groups.cyclic(10), groups.cyclic(12), groups.klein4(),
            groups.symmetric3(), groups.dihedral(4), groups.dihedral(5),
            groups.dihedral(6), groups.quaternion8(), groups.alternating4()]


def random_relabel(g, rng):
    """Shuffle object and morphism order and rename ids, seeded."""
    obj_order = list(g.objects)
    rng.shuffle(obj_order)
    mor_order = list(g.morphism_ids)
    rng.shuffle(mor_order)
    onames = {x: "x%d" % k for k, x in enumerate(obj_order)}
    mnames = {m: "m%d" % k for k, m in enumerate(mor_order)}
    return relabel(g, onames, mnames, object_order=obj_order,
                   morphism_order=mor_order)


def random_connected_groupoid(rng, max_objects=4, zoo=None):
    """A connected groupoid with a vertex group of order <= 12 and at most
    ``max_objects`` objects, with shuffled labels."""
    zoo = zoo or group_zoo()
    table = zoo[int(rng.integers(0, len(zoo)))]
    n = int(rng.integers(1, max_objects + 1))
    g = product(delooping(table), codiscrete(["o%d" % i for i in range(n)]))
    return random_relabel(g, rng)


def skeleton_inclusion(g, x):
    """The full subgroupoid on one object included back into g; an acyclic
    cofibration whenever g is connected."""
    sub = full_subgroupoid(g, [x])
    return GroupoidFunctor(sub, g, {x: x}, {m: m for m in sub.morphism_ids})


def random_acyclic_cofibration(rng, max_objects=4, zoo=None):
    g = random_connected_groupoid(rng, max_objects=max_objects, zoo=zoo)
    x = g.objects[int(rng.integers(0, g.n_objects))]
    return skeleton_inclusion(g, x)


def random_non_acyclic_cofibration(rng, zoo=None):
    """Cofibrations whose K0 ranks differ between source and target: either a
    skeleton into a disjoint union (missing a component) or the trivial group
    into a nontrivial one (missing blocks)."""
    zoo = zoo or group_zoo()
    kind = int(rng.integers(0, 2))
    if kind == 0:
        t1 = zoo[int(rng.integers(0, len(zoo)))]
        t2 = zoo[int(rng.integers(0, len(zoo)))]
        g = disjoint_union(delooping(t1), delooping(t2))
        sub = full_subgroupoid(g, ["0.*"])
        return GroupoidFunctor(sub, g, {"0.*": "0.*"},
                               {m: m for m in sub.morphism_ids})
    nontrivial = [t for t in zoo if len(t) > 1]
    table = nontrivial[int(rng.integers(0, len(nontrivial)))]
    g = delooping(table)
    pt = discrete(["*"])
    return GroupoidFunctor(pt, g, {"*": "*"}, {"*>*": table.identity})


def rng_from_seed(seed):
    return np.random.default_rng(seed)
