"""Independent brute-force implementations used to cross-check the package:
raw functor enumeration, loop enumeration, homology through rational ranks
and determinantal divisors, and the pushout cocone check.  These stay
deliberately naive and share no code path with the package."""

from __future__ import annotations

from fractions import Fraction
from itertools import product as cartesian
from math import comb, gcd
from itertools import combinations


def brute_force_functors(G, H):
    """Every (object map, morphism map) pair, filtered by the raw functor
    axioms; exponential, for tiny groupoids only."""
    gob, hob = list(G.objects), list(H.objects)
    gmor, hmor = list(G.morphism_ids), list(H.morphism_ids)
    found = []
    for ochoice in cartesian(hob, repeat=len(gob)):
        omap = dict(zip(gob, ochoice))
        for mchoice in cartesian(hmor, repeat=len(gmor)):
            mmap = dict(zip(gmor, mchoice))
            if not all(H.src(mmap[m]) == omap[G.src(m)]
                       and H.dst(mmap[m]) == omap[G.dst(m)] for m in gmor):
                continue
            if not all(mmap[G.identity(x)] == H.identity(omap[x]) for x in gob):
                continue
            ok = True
            for g2 in gmor:
                for g1 in gmor:
                    c = G.compose(g2, g1)
                    if c is None:
                        continue
                    if H.compose(mmap[g2], mmap[g1]) != mmap[c]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found.append((omap, mmap))
    return found


def brute_force_loops(G, x):
    loops = [m for m in G.morphism_ids if G.src(m) == x and G.dst(m) == x]
    table = {(a, b): G.compose(a, b) for a in loops for b in loops}
    return loops, table


def rational_rank(rows):
    """Rank over the rationals by plain Gaussian elimination."""
    M = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    cols = len(M[0]) if M else 0
    for col in range(cols):
        piv = None
        for r in range(rank, len(M)):
            if M[r][col]:
                piv = r
                break
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = Fraction(1) / M[rank][col]
        M[rank] = [v * inv for v in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def determinantal_divisors(rows, limit=2000000):
    """Elementary divisors via gcds of k x k minors; exponential, so only for
    very small matrices.  Returns the nonzero divisor chain."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    r = rational_rank(rows)
    dets_gcd = []
    for k in range(1, r + 1):
        if comb(m, k) * comb(n, k) > limit:
            raise ValueError("matrix too large for the minor oracle")
        g = 0
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                g = gcd(g, _det_int([[rows[i][j] for j in ci] for i in ri]))
        dets_gcd.append(g)
    divisors = []
    prev = 1
    for g in dets_gcd:
        divisors.append(g // prev)
        prev = g
    return divisors


def _det_int(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * M[0][j] * _det_int(minor)
    return total


def homology_by_row_reduction(X, top=None):
    """Homology profile from the normalized boundary matrices through an
    independent path: ranks over the rationals, torsion via sympy's Smith
    normal form (row reduction over the integers)."""
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf
    from gpdlab.homology import boundary_matrix

    if top is None:
        top = X.cutoff - 1
    counts = [len(X.nondegenerate(k)) for k in range(top + 2)]
    ranks = {}
    torsions = {}
    for k in range(1, top + 2):
        M, nr, nc = boundary_matrix(X, k)
        if nr == 0 or nc == 0:
            ranks[k] = 0
            torsions[k] = ()
            continue
        ranks[k] = rational_rank(M)
        snf = sympy_snf(Matrix(M))
        diag = [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
        torsions[k] = tuple(sorted(d for d in diag if d > 1))
    degrees = []
    for k in range(top + 1):
        free = counts[k] - ranks.get(k, 0) - ranks.get(k + 1, 0)
        degrees.append((free, torsions.get(k + 1, ())))
    return degrees


def check_pushout_universal_property(i, f, po, conc, targets):
    """For the cocone (u, v) with u . i = v . f over every target in the
    list: there is exactly one mediating functor out of the realized pushout.
    Returns the number of cocones checked; raises on any failure."""
    from gpdlab.groupoids import (GroupoidFunctor, compose_functors,
                                  functor_equal, validate_functor)
    from gpdlab.samples import enumerate_functors

    B, C = i.target, f.target
    checked = 0
    for T in targets:
        from_b = enumerate_functors(B, T)
        from_c = enumerate_functors(C, T)
        for u in from_b:
            for v in from_c:
                if not functor_equal(compose_functors(u, i), compose_functors(v, f)):
                    continue
                checked += 1
                # forced generator images
                omap, gmap = {}, {}
                for x in po.presentation.objects:
                    if x.startswith("b:"):
                        omap[x] = u.object_map[x[len("b:"):]]
                    else:
                        omap[x] = v.object_map[x[len("c:"):]]
                for (gid, _, _) in po.presentation.generators:
                    if gid.startswith("b:"):
                        gmap[gid] = u.morphism_map[gid[len("b:"):]]
                    else:
                        gmap[gid] = v.morphism_map[gid[len("c:"):]]
                w = conc.induced_functor(omap, gmap, T)
                assert validate_functor(w).ok
                # the two triangles commute
                jb = GroupoidFunctor(
                    B, conc.groupoid, dict(po.from_cofibration_target.object_map),
                    {m: conc.generator_images["b:" + m] for m in B.morphism_ids})
                jc = GroupoidFunctor(
                    C, conc.groupoid, dict(po.from_other_leg.object_map),
                    {m: conc.generator_images["c:" + m] for m in C.morphism_ids})
                assert functor_equal(compose_functors(w, jb), u)
                assert functor_equal(compose_functors(w, jc), v)
                # uniqueness: any functor agreeing on the structure legs is w
                for w2 in enumerate_functors(conc.groupoid, T):
                    if functor_equal(compose_functors(w2, jb), u) and \
                       functor_equal(compose_functors(w2, jc), v):
                        assert functor_equal(w2, w)
    return checked
