"""Finite sample categories of groupoids: exhaustive functor enumeration
between small fixtures, with the weak equivalence and cofibration classes
marked.  Samples are full subcategories of the category of groupoids on the
chosen fixtures; they are not themselves cofibration categories, so every
check run on them is instance-level."""

from __future__ import annotations

from dataclasses import dataclass, field

from .groupoids import (GroupoidError, GroupoidFunctor, compose_functors,
                        is_cofibration, is_equivalence, search_functors)

MAX_OBJECTS = 4
MAX_MORPHISMS = 24


class SampleSizeError(GroupoidError):
    """A fixture or a functor enumeration exceeded the sample size bounds."""


def enumerate_functors(source, target, budget=100000):
    """All functors source -> target in deterministic order."""
    out = search_functors(source, target, limit=budget + 1)
    if len(out) > budget:
        raise SampleSizeError("functor enumeration between the pair exceeded %d"
                              % budget)
    return out


@dataclass
class SampleArrow:
    index: int
    src: int
    dst: int
    functor: GroupoidFunctor
    label: str


@dataclass
class FiniteSampleCategory:
    groupoids: list
    names: list
    arrows: list = field(default_factory=list)
    w_mask: list = field(default_factory=list)
    c_mask: list = field(default_factory=list)
    identity_indices: list = field(default_factory=list)
    _compose: dict = field(default_factory=dict)
    _lookup: dict = field(default_factory=dict)

    @property
    def n_objects(self):
        return len(self.groupoids)

    def compose(self, a2, a1):
        """Index of arrows[a2] after arrows[a1]."""
        return self._compose[(a2, a1)]

    def identity_of(self, obj_index):
        return self.identity_indices[obj_index]

    def wc_mask(self):
        return [w and c for w, c in zip(self.w_mask, self.c_mask)]

    def mask_all(self):
        return [True] * len(self.arrows)

    def __repr__(self):
        return "FiniteSampleCategory(%d groupoids, %d functors)" % (
            len(self.groupoids), len(self.arrows))


def enumerate_sample(groupoids, names=None, budget=100000):
    """Enumerate every functor between the given groupoids and mark the weak
    equivalences and cofibrations.  Each groupoid must have at most 4 objects
    and 24 morphisms so the enumeration stays quick."""
    groupoids = list(groupoids)
    if names is None:
        names = ["G%d" % k for k in range(len(groupoids))]
    names = list(names)
    for name, g in zip(names, groupoids):
        if g.n_objects > MAX_OBJECTS or g.n_morphisms > MAX_MORPHISMS:
            raise SampleSizeError(
                "fixture %s exceeds the sample bounds (%d objects, %d morphisms)"
                % (name, g.n_objects, g.n_morphisms))
    sample = FiniteSampleCategory(groupoids, names)
    for si, gs in enumerate(groupoids):
        for ti, gt in enumerate(groupoids):
            funs = enumerate_functors(gs, gt, budget=budget)
            for F in funs:
                idx = len(sample.arrows)
                label = "%s->%s#%d" % (names[si], names[ti], idx)
                sample.arrows.append(SampleArrow(idx, si, ti, F, label))
                sample.w_mask.append(bool(is_equivalence(F)))
                sample.c_mask.append(is_cofibration(F))
                sample._lookup[(si, ti, tuple(sorted(F.object_map.items())),
                                tuple(sorted(F.morphism_map.items())))] = idx
    for k, g in enumerate(groupoids):
        ident = {x: x for x in g.objects}
        identm = {m: m for m in g.morphism_ids}
        sample.identity_indices.append(
            sample._lookup[(k, k, tuple(sorted(ident.items())),
                            tuple(sorted(identm.items())))])
    for a2 in sample.arrows:
        for a1 in sample.arrows:
            if a1.dst != a2.src:
                continue
            comp = compose_functors(a2.functor, a1.functor)
            key = (a1.src, a2.dst, tuple(sorted(comp.object_map.items())),
                   tuple(sorted(comp.morphism_map.items())))
            sample._compose[(a2.index, a1.index)] = sample._lookup[key]
    return sample
