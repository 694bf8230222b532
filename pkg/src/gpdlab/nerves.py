"""Nerves of finite sample categories and their marked subcategories, the
double nerve of the (acyclic cofibration, marked equivalence) double
category, its diagonal and margin comparisons, classification-diagram
levels, and zig-zag witnesses through mapping cylinders.

A k-simplex is the tuple of its arrows (with its start object), so equality
is componentwise and all level sets are plain hashable tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groupoids import GroupoidError, GroupoidFunctor, is_cofibration, is_equivalence
from .cylinders import cylinder_target_inclusion, mapping_cylinder_factorization
from .presentations import Unknown
from .simplicial import (TruncatedBisimplicialSet, TruncatedSimplicialSet,
                         build_simplicial_set)


class BudgetError(GroupoidError):
    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate


@dataclass
class FiniteCategory:
    """A finite category with arrows indexed 0..len-1 and a total composition
    table; the common face of groupoids-as-categories, marked subcategories
    and ladder categories."""
    n_objects: int
    arrow_src: list
    arrow_dst: list
    identities: list            # per object
    compose_table: dict         # (a2, a1) -> index
    labels: list = field(default_factory=list)

    @property
    def n_arrows(self):
        return len(self.arrow_src)

    def compose(self, a2, a1):
        return self.compose_table[(a2, a1)]

    def is_identity(self, a):
        return a in self._identity_set()

    def _identity_set(self):
        cached = getattr(self, "_idset", None)
        if cached is None:
            cached = set(self.identities)
            self._idset = cached
        return cached


def category_of_groupoid(g):
    ids = list(g.morphism_ids)
    pos = {m: k for k, m in enumerate(ids)}
    obj_pos = {x: k for k, x in enumerate(g.objects)}
    return FiniteCategory(
        g.n_objects,
        [obj_pos[g.src(m)] for m in ids],
        [obj_pos[g.dst(m)] for m in ids],
        [pos[g.identity(x)] for x in g.objects],
        {(pos[a], pos[b]): pos[c] for (a, b), c in g._compose.items()},
        labels=ids)


# -- chains and the nerve -----------------------------------------------------

def _chain_end(cat, chain):
    o, arrs = chain
    return cat.arrow_dst[arrs[-1]] if arrs else o


def _chains(cat, length, budget=None):
    out = [[(o, ()) for o in range(cat.n_objects)]]
    by_src = {}
    for a in range(cat.n_arrows):
        by_src.setdefault(cat.arrow_src[a], []).append(a)
    for _ in range(length):
        nxt = []
        for chain in out[-1]:
            end = _chain_end(cat, chain)
            for a in by_src.get(end, ()):
                nxt.append((chain[0], chain[1] + (a,)))
                if budget is not None and len(nxt) > budget:
                    raise BudgetError("chain enumeration exceeded the budget",
                                      len(nxt))
        out.append(nxt)
    return out


def chain_face(cat, chain, i):
    o, arrs = chain
    k = len(arrs)
    if i == 0:
        return (cat.arrow_dst[arrs[0]], arrs[1:])
    if i == k:
        return (o, arrs[:-1])
    merged = cat.compose(arrs[i], arrs[i - 1])
    return (o, arrs[:i - 1] + (merged,) + arrs[i + 1:])


def chain_degeneracy(cat, chain, i):
    o, arrs = chain
    objs = [o]
    for a in arrs:
        objs.append(cat.arrow_dst[a])
    return (o, arrs[:i] + (cat.identities[objs[i]],) + arrs[i:])


def nerve(cat, d, budget=None):
    """Truncated nerve of a finite category: k-simplices are the composable
    k-chains, including degenerate ones."""
    levels = _chains(cat, d, budget=budget)
    return build_simplicial_set(
        d, levels,
        lambda k, i, s: chain_face(cat, s, i),
        lambda k, i, s: chain_degeneracy(cat, s, i))


def nerve_of_groupoid(g, d):
    return nerve(category_of_groupoid(g), d)


def nerve_of_sample(sample, d, mask=None, budget=None):
    """Nerve of the marked subcategory, with simplices carrying the sample's
    own arrow indices (so margin identifications are set-level equalities)."""
    if mask is None:
        mask = sample.mask_all()
    for k in sample.identity_indices:
        if not mask[k]:
            raise GroupoidError("subcategory mask drops an identity")
    allowed = [a.index for a in sample.arrows if mask[a.index]]
    for a2 in allowed:
        for a1 in allowed:
            if sample.arrows[a1].dst == sample.arrows[a2].src:
                if not mask[sample.compose(a2, a1)]:
                    raise GroupoidError(
                        "subcategory mask is not closed under composition")
    by_src = {}
    for a in allowed:
        by_src.setdefault(sample.arrows[a].src, []).append(a)
    levels = [[(o, ()) for o in range(sample.n_objects)]]
    for _ in range(d):
        nxt = []
        for (o, arrs) in levels[-1]:
            end = sample.arrows[arrs[-1]].dst if arrs else o
            for a in by_src.get(end, ()):
                nxt.append((o, arrs + (a,)))
                if budget is not None and len(nxt) > budget:
                    raise BudgetError("nerve enumeration exceeded the budget",
                                      len(nxt))
        levels.append(nxt)

    def face(k, i, chain):
        o, arrs = chain
        if i == 0:
            return (sample.arrows[arrs[0]].dst, arrs[1:])
        if i == k:
            return (o, arrs[:-1])
        merged = sample.compose(arrs[i], arrs[i - 1])
        return (o, arrs[:i - 1] + (merged,) + arrs[i + 1:])

    def deg(k, i, chain):
        o, arrs = chain
        objs = [o]
        for a in arrs:
            objs.append(sample.arrows[a].dst)
        return (o, arrs[:i] + (sample.identity_of(objs[i]),) + arrs[i:])

    return build_simplicial_set(d, levels, face, deg)


# -- the double nerve ------------------------------------------------------------

@dataclass
class DoubleNerve:
    """The nerve of the double category with horizontal arrows the acyclic
    cofibrations and vertical arrows the marked (w and g) equivalences;
    cells at (m, n) are (n+1) horizontal m-chains joined by n commuting
    ladders."""
    sample: object
    bisimplicial: TruncatedBisimplicialSet
    h_mask: list
    v_mask: list

    def cell_row0(self, cell):
        """For a cell at (0, n): the vertical chain it is."""
        chains, ladders = cell
        return (chains[0][0], tuple(l[0] for l in ladders))

    def cell_col0(self, cell):
        """For a cell at (m, 0): the horizontal chain it is."""
        chains, _ = cell
        return chains[0]


def _vertical_category(sample, v_mask):
    by_pair = {}
    for arr in sample.arrows:
        if v_mask[arr.index]:
            by_pair.setdefault((arr.src, arr.dst), []).append(arr.index)
    return by_pair


def _ladders_between(sample, c1, c2, by_pair):
    """All commuting ladders of marked vertical arrows from chain c1 to c2."""
    o1, a1 = c1
    o2, a2 = c2
    m = len(a1)
    objs1 = [o1]
    for a in a1:
        objs1.append(sample.arrows[a].dst)
    objs2 = [o2]
    for a in a2:
        objs2.append(sample.arrows[a].dst)
    partial = [()]
    for j in range(m + 1):
        nxt = []
        for lad in partial:
            for v in by_pair.get((objs1[j], objs2[j]), ()):
                if j > 0:
                    if sample.compose(v, a1[j - 1]) != sample.compose(a2[j - 1], lad[-1]):
                        continue
                nxt.append(lad + (v,))
        partial = nxt
    return partial


def double_nerve_W(sample, g_mask=None, d=(3, 3), budget=None):
    """The double nerve at horizontal cutoff d[0], vertical cutoff d[1]."""
    H, V = d
    if g_mask is None:
        g_mask = sample.mask_all()
    h_mask = [w and c for w, c in zip(sample.w_mask, sample.c_mask)]
    v_mask = [w and g for w, g in zip(sample.w_mask, g_mask)]
    # horizontal chains in the acyclic cofibration subcategory, in the
    # sample's own arrow indexing
    by_src = {}
    for arr in sample.arrows:
        if h_mask[arr.index]:
            by_src.setdefault(arr.src, []).append(arr.index)
    hchains = [[(o, ()) for o in range(sample.n_objects)]]
    for _ in range(H):
        nxt = []
        for (o, arrs) in hchains[-1]:
            end = sample.arrows[arrs[-1]].dst if arrs else o
            for a in by_src.get(end, ()):
                nxt.append((o, arrs + (a,)))
        hchains.append(nxt)
        if budget is not None and len(nxt) > budget:
            raise BudgetError("double nerve exceeded the budget", len(nxt))

    by_pair = _vertical_category(sample, v_mask)
    levels = {}
    for m in range(H + 1):
        cells = [((chain,), ()) for chain in hchains[m]]
        levels[(m, 0)] = cells
        for n in range(1, V + 1):
            nxt = []
            for (chains, ladders) in levels[(m, n - 1)]:
                last = chains[-1]
                for c2 in hchains[m]:
                    for lad in _ladders_between(sample, last, c2, by_pair):
                        nxt.append((chains + (c2,), ladders + (lad,)))
                        if budget is not None and len(nxt) > budget:
                            raise BudgetError("double nerve exceeded the budget",
                                              len(nxt))
            levels[(m, n)] = nxt

    def sample_chain_face(chain, i):
        o, arrs = chain
        k = len(arrs)
        if i == 0:
            return (sample.arrows[arrs[0]].dst, arrs[1:])
        if i == k:
            return (o, arrs[:-1])
        merged = sample.compose(arrs[i], arrs[i - 1])
        return (o, arrs[:i - 1] + (merged,) + arrs[i + 1:])

    def sample_chain_deg(chain, i):
        o, arrs = chain
        objs = [o]
        for a in arrs:
            objs.append(sample.arrows[a].dst)
        return (o, arrs[:i] + (sample.identity_of(objs[i]),) + arrs[i:])

    def hface(cell, i):
        chains, ladders = cell
        new_chains = tuple(sample_chain_face(c, i) for c in chains)
        new_ladders = tuple(tuple(v for p, v in enumerate(l) if p != i)
                            for l in ladders)
        return (new_chains, new_ladders)

    def hdeg(cell, i):
        chains, ladders = cell
        new_chains = tuple(sample_chain_deg(c, i) for c in chains)
        new_ladders = tuple(l[:i] + (l[i],) + l[i:] for l in ladders)
        return (new_chains, new_ladders)

    def vface(cell, j):
        chains, ladders = cell
        n = len(ladders)
        if j == 0:
            return (chains[1:], ladders[1:])
        if j == n:
            return (chains[:-1], ladders[:-1])
        merged = tuple(sample.compose(ladders[j][p], ladders[j - 1][p])
                       for p in range(len(ladders[j])))
        return (chains[:j] + chains[j + 1:],
                ladders[:j - 1] + (merged,) + ladders[j + 1:])

    def vdeg(cell, j):
        chains, ladders = cell
        chain = chains[j]
        o, arrs = chain
        objs = [o]
        for a in arrs:
            objs.append(sample.arrows[a].dst)
        ident = tuple(sample.identity_of(x) for x in objs)
        return (chains[:j] + (chain,) + chains[j:],
                ladders[:j] + (ident,) + ladders[j:])

    bis = TruncatedBisimplicialSet((H, V), levels)
    for m in range(H + 1):
        for n in range(V + 1):
            idx = bis.index
            if m >= 1:
                for i in range(m + 1):
                    bis.h_faces[(m, n, i)] = [idx[(m - 1, n)][hface(c, i)]
                                              for c in levels[(m, n)]]
            if m < H:
                for i in range(m + 1):
                    bis.h_degeneracies[(m, n, i)] = [idx[(m + 1, n)][hdeg(c, i)]
                                                     for c in levels[(m, n)]]
            if n >= 1:
                for j in range(n + 1):
                    bis.v_faces[(m, n, j)] = [idx[(m, n - 1)][vface(c, j)]
                                              for c in levels[(m, n)]]
            if n < V:
                for j in range(n + 1):
                    bis.v_degeneracies[(m, n, j)] = [idx[(m, n + 1)][vdeg(c, j)]
                                                     for c in levels[(m, n)]]
    return DoubleNerve(sample, bis, h_mask, v_mask)


@dataclass
class DiagonalComparison:
    diagonal: TruncatedSimplicialSet
    to_margin: list          # per level: diag index -> margin nerve index
    from_vertical_margin: list   # per level: wg-nerve index -> diag index
    from_horizontal_margin: list  # per level: wc-nerve index -> diag index
    vertical_margin: TruncatedSimplicialSet      # nerve of the wg subcategory
    horizontal_margin: TruncatedSimplicialSet    # nerve of the wc subcategory


def diagonal(W, check_margins=True):
    """diag(W)_m = W_(m,m) with the diagonal operators, together with the
    comparison maps: the restriction to the diagonal chain of composites into
    the wg-nerve and the two margin inclusions."""
    sample = W.sample
    bis = W.bisimplicial
    H, V = bis.cutoff
    d = min(H, V)
    levels = [bis.levels[(m, m)] for m in range(d + 1)]

    X = TruncatedSimplicialSet(d, [list(lv) for lv in levels])
    for m in range(1, d + 1):
        for i in range(m + 1):
            hf = bis.h_faces[(m, m, i)]
            vf = bis.v_faces[(m - 1, m, i)]
            X.faces[(m, i)] = [vf[hf[p]] for p in range(len(levels[m]))]
    for m in range(d):
        for i in range(m + 1):
            hd = bis.h_degeneracies[(m, m, i)]
            vd = bis.v_degeneracies[(m + 1, m, i)]
            X.degeneracies[(m, i)] = [vd[hd[p]] for p in range(len(levels[m]))]

    wg = nerve_of_sample(sample, d, mask=W.v_mask)
    wc = nerve_of_sample(sample, d, mask=W.h_mask)

    to_margin = []
    for m in range(d + 1):
        col = []
        for (chains, ladders) in levels[m]:
            o0 = chains[0][0]
            steps = []
            for i in range(m):
                h = chains[i][1][i]
                v = ladders[i][i + 1]
                comp = sample.compose(v, h)
                if not W.v_mask[comp]:
                    raise GroupoidError(
                        "diagonal composite leaves the marked class; the class "
                        "must contain the cofibrations")
                steps.append(comp)
            col.append(wg.index[m][(o0, tuple(steps))])
        to_margin.append(col)

    from_vert = []
    for m in range(d + 1):
        col = []
        for (o0, steps) in wg.levels[m]:
            objs = [o0]
            for a in steps:
                objs.append(sample.arrows[a].dst)
            chains = tuple((objs[r], tuple(sample.identity_of(objs[r])
                                           for _ in range(m)))
                           for r in range(m + 1))
            ladders = tuple(tuple(steps[r] for _ in range(m + 1))
                            for r in range(m))
            col.append(X.index[m][(chains, ladders)])
        from_vert.append(col)

    from_horiz = []
    for m in range(d + 1):
        col = []
        for chain in wc.levels[m]:
            o0, arrs = chain
            objs = [o0]
            for a in arrs:
                objs.append(sample.arrows[a].dst)
            chains = tuple(chain for _ in range(m + 1))
            ladders = tuple(tuple(sample.identity_of(x) for x in objs)
                            for _ in range(m))
            col.append(X.index[m][(chains, ladders)])
        from_horiz.append(col)
    return DiagonalComparison(X, to_margin, from_vert, from_horiz, wg, wc)


def double_nerve_margins(sample, g_mask=None, d=3):
    """Set-level comparison of the double nerve margins with the marked
    subcategory nerves: cells at (m, 0) against the acyclic cofibration
    chains and cells at (0, n) against the marked equivalence chains.
    Only the margin levels are enumerated."""
    if g_mask is None:
        g_mask = sample.mask_all()
    W = double_nerve_W(sample, g_mask, d=(d, 0))
    wc = nerve_of_sample(sample, d, mask=W.h_mask)
    col_ok = all({W.cell_col0(c) for c in W.bisimplicial.levels[(m, 0)]}
                 == set(wc.levels[m]) for m in range(d + 1))
    Wv = double_nerve_W(sample, g_mask, d=(0, d))
    wg = nerve_of_sample(sample, d, mask=Wv.v_mask)
    row_ok = all({Wv.cell_row0(c) for c in Wv.bisimplicial.levels[(0, n)]}
                 == set(wg.levels[n]) for n in range(d + 1))
    return {"column0_equals_wc_nerve": col_ok, "row0_equals_wg_nerve": row_ok}


def diagonal_retraction_check(sample, g_mask=None, d=3):
    """Cell-level check that restricting the horizontally degenerate diagonal
    cell of a marked chain back along the diagonal returns the chain; avoids
    materializing the full bisimplicial levels."""
    if g_mask is None:
        g_mask = sample.mask_all()
    v_mask = [w and g for w, g in zip(sample.w_mask, g_mask)]
    wg = nerve_of_sample(sample, d, mask=v_mask)
    for m in range(d + 1):
        for (o0, steps) in wg.levels[m]:
            objs = [o0]
            for a in steps:
                objs.append(sample.arrows[a].dst)
            # horizontally degenerate diagonal cell of the chain
            chains = tuple((objs[r], tuple(sample.identity_of(objs[r])
                                           for _ in range(m)))
                           for r in range(m + 1))
            ladders = tuple(tuple(steps[r] for _ in range(m + 1))
                            for r in range(m))
            # restriction along the diagonal: composites of step squares
            back = []
            for i in range(m):
                h = chains[i][1][i]
                v = ladders[i][i + 1]
                back.append(sample.compose(v, h))
            if (o0, tuple(back)) != (o0, tuple(steps)):
                return False
    return True


# -- classification diagram levels ------------------------------------------------

@dataclass
class ClassificationLevel:
    k: int
    full_nerve: TruncatedSimplicialSet      # nerve of w(D^[k])
    marked_nerve: TruncatedSimplicialSet    # nerve of wc((cD)^[k])
    comparison: list                        # per level: marked index -> full index


def _ladder_category(sample, k, chain_mask, component_mask, budget):
    """Category of k-chains (over arrows in chain_mask) and commuting ladders
    with components in component_mask."""
    allowed = [a.index for a in sample.arrows if chain_mask[a.index]]
    by_src = {}
    for a in allowed:
        by_src.setdefault(sample.arrows[a].src, []).append(a)
    chains = [(o, ()) for o in range(sample.n_objects)]
    for _ in range(k):
        nxt = []
        for (o, arrs) in chains:
            end = sample.arrows[arrs[-1]].dst if arrs else o
            for a in by_src.get(end, ()):
                nxt.append((o, arrs + (a,)))
        chains = nxt
        if budget is not None and len(chains) > budget:
            raise BudgetError("classification level exceeded the budget", len(chains))
    chain_pos = {c: i for i, c in enumerate(chains)}
    by_pair = {}
    for arr in sample.arrows:
        if component_mask[arr.index]:
            by_pair.setdefault((arr.src, arr.dst), []).append(arr.index)
    arrows = []
    for c1 in chains:
        for c2 in chains:
            for lad in _ladders_between(sample, c1, c2, by_pair):
                arrows.append((chain_pos[c1], chain_pos[c2], lad))
                if budget is not None and len(arrows) > budget:
                    raise BudgetError("classification level exceeded the budget",
                                      len(arrows))
    arrow_pos = {arr: i for i, arr in enumerate(arrows)}
    identities = []
    for c in chains:
        o, arrs = c
        objs = [o]
        for a in arrs:
            objs.append(sample.arrows[a].dst)
        ident = (chain_pos[c], chain_pos[c],
                 tuple(sample.identity_of(x) for x in objs))
        identities.append(arrow_pos[ident])
    compose = {}
    for i2, (s2, d2, l2) in enumerate(arrows):
        for i1, (s1, d1, l1) in enumerate(arrows):
            if d1 != s2:
                continue
            comp = (s1, d2, tuple(sample.compose(a, b) for a, b in zip(l2, l1)))
            compose[(i2, i1)] = arrow_pos[comp]
    cat = FiniteCategory(len(chains),
                         [a[0] for a in arrows],
                         [a[1] for a in arrows],
                         identities, compose)
    return cat, chains, arrows


def classification_level(sample, k, d=3, budget=200000):
    """Level k of the classification diagram on the sample and on its
    cofibration part, with the inclusion comparison map.

    Objects of the level category are k-chains of functors; morphisms are
    commuting ladders; the marked ladders are the levelwise equivalences
    (levelwise acyclic cofibrations on the cofibration side).
    """
    if k > 2:
        raise GroupoidError("classification levels with k <= 2 only")
    full_cat, full_chains, full_arrows = _ladder_category(
        sample, k, sample.mask_all(), sample.w_mask, budget)
    wc = sample.wc_mask()
    marked_cat, marked_chains, marked_arrows = _ladder_category(
        sample, k, sample.c_mask, wc, budget)
    full_nerve = nerve(full_cat, d, budget=budget)
    marked_nerve = nerve(marked_cat, d, budget=budget)

    chain_tr = {i: full_chains.index(c) for i, c in enumerate(marked_chains)}
    full_arrow_pos = {arr: i for i, arr in enumerate(full_arrows)}
    arrow_tr = {}
    for i, (s, t, lad) in enumerate(marked_arrows):
        arrow_tr[i] = full_arrow_pos[(chain_tr[s], chain_tr[t], lad)]
    comparison = []
    for m in range(d + 1):
        col = []
        for (o0, arrs) in marked_nerve.levels[m]:
            image = (chain_tr[o0], tuple(arrow_tr[a] for a in arrs))
            col.append(full_nerve.index[m][image])
        if len(set(col)) != len(col):
            raise GroupoidError("comparison map is not injective on simplices")
        comparison.append(col)
    return ClassificationLevel(k, full_nerve, marked_nerve, comparison)


# -- zig-zag witnesses --------------------------------------------------------------

@dataclass
class ZigzagWitness:
    middle: object
    source_leg: GroupoidFunctor        # A >-> Cyl(F)
    target_leg: GroupoidFunctor        # B >-> Cyl(F)
    source_leg_acyclic_cofibration: bool
    target_leg_acyclic_cofibration: bool

    @property
    def verified(self):
        return (self.source_leg_acyclic_cofibration
                and self.target_leg_acyclic_cofibration)


def zigzag_witness(F, bound=10000):
    """For an equivalence F: A -> B, the zig-zag A >-> Cyl(F) <-< B with both
    legs verified acyclic cofibrations."""
    if not is_equivalence(F):
        raise GroupoidError("zigzag_witness needs an equivalence")
    fact = mapping_cylinder_factorization(F, bound=bound)
    if fact.middle is None:
        return Unknown("mapping cylinder did not concretize under the bound")
    left = fact.first
    right = cylinder_target_inclusion(F, fact)
    return ZigzagWitness(
        fact.middle, left, right,
        is_cofibration(left) and bool(is_equivalence(left)),
        is_cofibration(right) and bool(is_equivalence(right)))


# -- DOT emission ---------------------------------------------------------------------

def skeleton_dot(X, vertex_labels=None, name="skeleton"):
    """GraphViz DOT of the 1-skeleton (nondegenerate edges)."""
    lines = ["digraph %s {" % name]
    for i, v in enumerate(X.levels[0]):
        label = vertex_labels[i] if vertex_labels else str(v)
        lines.append('  v%d [label="%s"];' % (i, label))
    for e in X.nondegenerate(1):
        s = X.faces[(1, 1)][e]
        t = X.faces[(1, 0)][e]
        lines.append("  v%d -> v%d;" % (s, t))
    lines.append("}")
    return "\n".join(lines)
