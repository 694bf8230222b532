"""Groupoid *-algebras over the complex numbers with exact structure
constants: block decompositions, corners, full projections, and the induced
maps on K0.

Structure constants, projections and spans are exact (rationals); only the
spectral splitting of the center uses floating point, driven by a seeded
random central element so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .groupoids import (GroupoidError, NonCofibrationError, connected_components,
                        full_subgroupoid, is_cofibration, is_equivalence,
                        vertex_group)


class ResolutionFailure(RuntimeError):
    """Spectral splitting of the center could not be resolved at the given
    tolerance."""


class RoundingDefect(RuntimeError):
    """A K0 multiplicity was farther than the allowed defect from an integer."""


class StructureConstantAlgebra:
    """*-algebra with basis the morphisms of a finite groupoid: the product of
    two basis elements is their composite when composable and zero otherwise,
    the star is the inverse, and the unit is the sum of the identities."""

    def __init__(self, groupoid):
        self.groupoid = groupoid
        self.basis = tuple(groupoid.morphism_ids)
        self.index = {m: k for k, m in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.prod = {}
        for (a, b), c in groupoid._compose.items():
            self.prod[(self.index[a], self.index[b])] = self.index[c]
        self.star = tuple(self.index[groupoid.inverse(m)] for m in self.basis)
        self.unit_indices = tuple(sorted(self.index[groupoid.identity(x)]
                                         for x in groupoid.objects))
        # for the trace of a left multiplication operator
        self._dst_count = {}
        for m in self.basis:
            x = groupoid.dst(m)
            self._dst_count[x] = self._dst_count.get(x, 0) + 1

    # -- element arithmetic on sparse coefficient dicts ---------------------

    def unit(self, one=Fraction(1)):
        return {i: one for i in self.unit_indices}

    def mul(self, a, b):
        out = {}
        for i, ca in a.items():
            for j, cb in b.items():
                k = self.prod.get((i, j))
                if k is None:
                    continue
                v = out.get(k, 0) + ca * cb
                if v:
                    out[k] = v
                elif k in out:
                    del out[k]
        return out

    def star_of(self, a):
        out = {}
        for i, c in a.items():
            out[self.star[i]] = c.conjugate() if isinstance(c, complex) else c
        return out

    def scale(self, a, c):
        return {i: c * v for i, v in a.items()}

    def add(self, a, b):
        out = dict(a)
        for i, v in b.items():
            w = out.get(i, 0) + v
            if w:
                out[i] = w
            elif i in out:
                del out[i]
        return out

    def sub(self, a, b):
        return self.add(a, {i: -v for i, v in b.items()})

    def left_matrix(self, a):
        M = np.zeros((self.dim, self.dim), dtype=complex)
        for i, c in a.items():
            for j in range(self.dim):
                k = self.prod.get((i, j))
                if k is not None:
                    M[k, j] += c
        return M

    def trace_left(self, a):
        """Trace of left multiplication by a, via the identity coefficients."""
        total = 0
        for x in self.groupoid.objects:
            i = self.index[self.groupoid.identity(x)]
            c = a.get(i)
            if c:
                total += c * self._dst_count.get(x, 0)
        return total

    def norm_inf(self, a):
        return max((abs(v) for v in a.values()), default=0.0)

    def __repr__(self):
        return "StructureConstantAlgebra(dim %d)" % self.dim


def groupoid_algebra(g):
    return StructureConstantAlgebra(g)


def check_algebra_axioms(A):
    """Exact associativity, unit and star axioms on the basis; returns a list
    of violations (empty when the algebra is sound)."""
    bad = []
    prod = A.prod
    for (i, j), k in prod.items():
        for l in range(A.dim):
            left = prod.get((k, l))
            jl = prod.get((j, l))
            right = None if jl is None else prod.get((i, jl))
            if left != right:
                bad.append("associativity fails at (%d, %d, %d)" % (i, j, l))
    unit = A.unit()
    for i in range(A.dim):
        e = {i: Fraction(1)}
        if A.mul(unit, e) != e or A.mul(e, unit) != e:
            bad.append("unit law fails at basis %d" % i)
    for (i, j), k in prod.items():
        if prod.get((A.star[j], A.star[i])) != A.star[k]:
            bad.append("star is not an anti-homomorphism at (%d, %d)" % (i, j))
    for i in range(A.dim):
        if A.star[A.star[i]] != i:
            bad.append("star is not an involution at %d" % i)
    return bad


# -- projections and corners --------------------------------------------------

@dataclass
class Projection:
    algebra: StructureConstantAlgebra
    vector: dict            # basis index -> Fraction, exact

    def __post_init__(self):
        A = self.algebra
        v = {i: Fraction(c) for i, c in self.vector.items() if c}
        self.vector = v
        if A.mul(v, v) != v:
            raise GroupoidError("not idempotent")
        if A.star_of(v) != v:
            raise GroupoidError("not star-invariant")


def identity_projection(A, objects):
    g = A.groupoid
    return Projection(A, {A.index[g.identity(x)]: Fraction(1) for x in objects})


def unit_projection(A):
    return Projection(A, A.unit())


@dataclass
class CornerAlgebra:
    kind: str                                # "identity" or "subspace"
    algebra: StructureConstantAlgebra | None
    objects: tuple
    basis_morphisms: tuple
    subspace_basis: list = field(default_factory=list)
    flagged: bool = False


def corner_algebra(A, p):
    """pAp.  For p a sum of identity morphisms this is again a structure
    constant algebra, on the morphisms whose endpoints lie in the supporting
    object set; otherwise a flagged basis-free subspace presentation."""
    g = A.groupoid
    support = set(p.vector)
    idents = {A.index[g.identity(x)]: x for x in g.objects}
    if support.issubset(idents) and all(c == 1 for c in p.vector.values()):
        objs = tuple(x for x in g.objects if A.index[g.identity(x)] in support)
        keep = set(objs)
        sub = full_subgroupoid(g, objs)
        basis = tuple(m for (m, s, d) in g.morphisms if s in keep and d in keep)
        return CornerAlgebra("identity", StructureConstantAlgebra(sub), objs, basis)
    # basis-free fallback: exact row-reduced spanning set of pAp
    vectors = []
    pivots = {}
    for i in range(A.dim):
        vec = A.mul(p.vector, A.mul({i: Fraction(1)}, p.vector))
        vec = _reduce_against(vec, pivots)
        if vec:
            piv = min(vec)
            inv = Fraction(1) / vec[piv]
            vec = {k: v * inv for k, v in vec.items()}
            pivots[piv] = vec
            vectors.append(vec)
    return CornerAlgebra("subspace", None, (), (), vectors, flagged=True)


def _reduce_against(vec, pivots):
    vec = {k: Fraction(v) for k, v in vec.items() if v}
    for piv in sorted(pivots):
        if piv in vec:
            coef = vec[piv]
            row = pivots[piv]
            for k, v in row.items():
                w = vec.get(k, Fraction(0)) - coef * v
                if w:
                    vec[k] = w
                elif k in vec:
                    del vec[k]
    return vec


def is_full_projection(A, p):
    """Exact test whether the two-sided span of p is the whole algebra."""
    pivots = {}
    rank = 0
    pvec = {i: Fraction(c) for i, c in p.vector.items()}
    for a in range(A.dim):
        ap = A.mul({a: Fraction(1)}, pvec)
        if not ap:
            continue
        for b in range(A.dim):
            vec = A.mul(ap, {b: Fraction(1)})
            vec = _reduce_against(vec, pivots)
            if vec:
                piv = min(vec)
                inv = Fraction(1) / vec[piv]
                pivots[piv] = {k: v * inv for k, v in vec.items()}
                rank += 1
                if rank == A.dim:
                    return True
    return rank == A.dim


# -- center and block decomposition --------------------------------------------

def center_basis(A):
    """Exact rational basis of the center: indicator vectors of the orbits of
    loops under conjugation.  Each vector is verified to commute with every
    basis element."""
    g = A.groupoid
    loops = [i for i, m in enumerate(A.basis) if g.src(m) == g.dst(m)]
    parent = {i: i for i in loops}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for f in A.basis:
        fi = A.index[f]
        x = g.src(f)
        finv = A.star[fi]
        for l in loops:
            if g.src(A.basis[l]) != x:
                continue
            conj = A.prod.get((A.prod[(fi, l)], finv))
            a, b = find(l), find(conj)
            if a != b:
                parent[b] = a
    orbits = {}
    for l in loops:
        orbits.setdefault(find(l), []).append(l)
    vectors = [{i: Fraction(1) for i in orbit}
               for _, orbit in sorted(orbits.items())]
    for v in vectors:
        for j in range(A.dim):
            e = {j: Fraction(1)}
            if A.mul(v, e) != A.mul(e, v):
                raise GroupoidError("internal error: center candidate does not commute")
    return vectors


@dataclass
class Block:
    component_base: str
    component_objects: int
    dimension: int                 # full matrix size of the block
    eigenvalue: complex
    idempotent: dict               # basis index -> complex, approximate


@dataclass
class BlockDecomposition:
    blocks: list
    residual: float
    seed: int
    tol: float

    @property
    def dimensions(self):
        return tuple(b.dimension for b in self.blocks)


def block_decomposition(A, tol=1e-9, seed=0):
    """Split the algebra into its matrix blocks: exact center first, then the
    eigenvalues of a seeded random central element; the minimal central
    idempotents come out of Lagrange interpolation evaluated in the algebra.

    A random central element must be allowed complex-conjugate-asymmetric
    spectrum, otherwise conjugate blocks cannot be separated, so no
    star-symmetrization is applied to it.
    """
    if tol <= 0:
        raise GroupoidError("tol must be positive")
    center = center_basis(A)
    if not center:
        raise GroupoidError("algebra of an empty groupoid has no blocks")
    rng = np.random.default_rng(seed)
    coeffs = rng.uniform(1.0, 2.0, size=len(center))
    z = {}
    for c, vec in zip(coeffs, center):
        for i in v_items(vec):
            z[i] = z.get(i, 0.0) + complex(c)
    eigvals, eigvecs = np.linalg.eig(A.left_matrix(z))

    # absolute thresholds: numerical spread within a block is machine scale,
    # while distinct blocks differ by the random coefficient gaps, order 0.1
    merge_eps = max(1e4 * tol, 1e-12)
    sep_eps = max(1e6 * tol, 1e-8)

    order = np.lexsort((eigvals.imag, eigvals.real))
    vals = eigvals[order]
    n = len(vals)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if vals[j].real - vals[i].real > merge_eps:
                break
            if abs(vals[i] - vals[j]) <= merge_eps:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    clusters = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(i)
    reps = sorted(clusters, key=lambda r: (vals[r].real, vals[r].imag))
    lambdas = [complex(np.mean([vals[i] for i in clusters[r]])) for r in reps]
    counts = [len(clusters[r]) for r in reps]

    if len(lambdas) != len(center):
        raise ResolutionFailure("resolution failure, decrease tol or reseed")
    for a in range(len(lambdas)):
        for b in range(a + 1, len(lambdas)):
            if abs(lambdas[a] - lambdas[b]) < sep_eps:
                raise ResolutionFailure("resolution failure, decrease tol or reseed")

    components = connected_components(A.groupoid)
    comp_of_obj = {}
    for base, members in components:
        for x in members:
            comp_of_obj[x] = base
    comp_sizes = {base: len(members) for base, members in components}
    comp_order = {base: k for k, (base, _) in enumerate(components)}

    blocks = []
    residual = 0.0
    unit_vec = np.zeros(A.dim, dtype=complex)
    for i in A.unit_indices:
        unit_vec[i] = 1.0
    unit = {i: complex(1.0) for i in A.unit_indices}
    total = {}
    # order[...] maps sorted positions back to eig output columns
    for rep, lam, count in zip(reps, lambdas, counts):
        d = count ** 0.5
        if abs(d - round(d)) > 1e-6:
            raise ResolutionFailure("resolution failure, decrease tol or reseed")
        d = int(round(d))
        cols = order[clusters[rep]]
        # orthonormal basis of the eigenspace; the idempotent is the spectral
        # projection of the unit (the center is commutative, so the operator
        # is normal and the projector is orthogonal)
        Q, _ = np.linalg.qr(eigvecs[:, cols])
        evec = Q @ (Q.conj().T @ unit_vec)
        e = {i: complex(c) for i, c in enumerate(evec) if abs(c) > 1e-13}
        ee = A.mul(e, e)
        residual = max(residual, A.norm_inf(A.sub(ee, e)))
        total = A.add(total, e)
        support = {A.basis[i] for i, c in e.items() if abs(c) > 1e-6}
        bases = {comp_of_obj[A.groupoid.src(m)] for m in support}
        if len(bases) != 1:
            raise ResolutionFailure("resolution failure, decrease tol or reseed")
        base = bases.pop()
        blocks.append(Block(base, comp_sizes[base], d, lam, e))
    residual = max(residual, A.norm_inf(A.sub(total, unit)))
    if residual > max(1e-6, 1e3 * tol):
        raise ResolutionFailure("resolution failure, decrease tol or reseed")
    for a in range(len(blocks)):
        for b in range(a + 1, len(blocks)):
            prod = A.mul(blocks[a].idempotent, blocks[b].idempotent)
            residual = max(residual, A.norm_inf(prod))
    if sum(b.dimension ** 2 for b in blocks) != A.dim:
        raise ResolutionFailure("resolution failure, decrease tol or reseed")
    blocks.sort(key=lambda blk: (comp_order[blk.component_base],
                                 blk.eigenvalue.real, blk.eigenvalue.imag))
    return BlockDecomposition(blocks, float(residual), seed, tol)


def v_items(vec):
    return vec.keys()


# -- induced maps and K0 ----------------------------------------------------------

@dataclass
class AlgebraHom:
    domain: StructureConstantAlgebra
    codomain: StructureConstantAlgebra
    basis_map: dict           # morphism id -> morphism id

    def push(self, vec):
        out = {}
        dom, cod = self.domain, self.codomain
        for i, c in vec.items():
            j = cod.index[self.basis_map[dom.basis[i]]]
            v = out.get(j, 0) + c
            if v:
                out[j] = v
            elif j in out:
                del out[j]
        return out


def induced_map(F):
    """Basis-to-basis algebra homomorphism induced by a cofibration of
    groupoids; rejects functors that collapse objects, since those send
    non-composable pairs to composable ones and break multiplicativity."""
    if not is_cofibration(F):
        seen = {}
        witness = ""
        for x in F.source.objects:
            y = F.object_map[x]
            if y in seen:
                witness = (" (identities at %s and %s become composable after "
                           "applying the functor)" % (seen[y], x))
                break
            seen[y] = x
        raise NonCofibrationError(
            "the algebra map is only functorial for functors injective on "
            "objects" + witness)
    A = StructureConstantAlgebra(F.source)
    B = StructureConstantAlgebra(F.target)
    bmap = dict(F.morphism_map)
    hom = AlgebraHom(A, B, bmap)
    # exhaustive multiplicativity check over the basis
    for i in range(A.dim):
        for j in range(A.dim):
            k = A.prod.get((i, j))
            bi = B.index[bmap[A.basis[i]]]
            bj = B.index[bmap[A.basis[j]]]
            bk = B.prod.get((bi, bj))
            want = None if k is None else B.index[bmap[A.basis[k]]]
            if bk != want:
                raise NonCofibrationError(
                    "induced map is not multiplicative at (%s, %s)"
                    % (A.basis[i], A.basis[j]))
    return hom


@dataclass
class K0Map:
    domain_rank: int
    codomain_rank: int
    matrix: list              # codomain_rank x domain_rank, integers
    defect: float

    def is_unimodular(self):
        if self.domain_rank != self.codomain_rank:
            return False
        return abs(_int_det([row[:] for row in self.matrix])) == 1


def _int_det(rows):
    # Bareiss fraction-free determinant
    n = len(rows)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return sign * rows[-1][-1]


def k0_map(hom, tol=1e-9, seed=0, max_defect=0.01):
    """Integer matrix of the induced map on K0.

    Entry (j, i) is the multiplicity of domain block i inside codomain block
    j, read off as the rank (= trace) of the image idempotent cut down to the
    block, divided by the domain block size.  Rounding defects beyond
    ``max_defect`` raise an error rather than silently misround.
    """
    da = block_decomposition(hom.domain, tol=tol, seed=seed)
    db = block_decomposition(hom.codomain, tol=tol, seed=seed)
    B = hom.codomain
    matrix = []
    defect = 0.0
    for bj in db.blocks:
        row = []
        for bi in da.blocks:
            pushed = hom.push(bi.idempotent)
            cut = B.mul(pushed, bj.idempotent)
            tr = B.trace_left(cut)
            val = tr.real / (bj.dimension * bi.dimension)
            err = abs(tr.imag) / (bj.dimension * bi.dimension)
            m = round(val)
            defect = max(defect, abs(val - m), err)
            if defect > max_defect:
                raise RoundingDefect(
                    "K0 multiplicity %.6f is not close enough to an integer" % val)
            if m < 0:
                raise RoundingDefect("negative K0 multiplicity %d" % m)
            row.append(int(m))
        matrix.append(row)
    return K0Map(len(da.blocks), len(db.blocks), matrix, float(defect))


# -- the Morita invariance check ---------------------------------------------------

@dataclass
class MoritaReport:
    acyclic_cofibration: bool
    k0_iso: bool
    k0: K0Map
    full_corner_witnesses: list
    equivalence_failures: tuple
    seed: int
    tol: float


def morita_check(F, tol=1e-9, seed=0):
    """For a cofibration F: is it acyclic, is the induced K0 map an integer
    isomorphism, and per component of the target met by the image, is the
    identity projection at an image object full in the component algebra."""
    eq = is_equivalence(F)
    hom = induced_map(F)
    k0 = k0_map(hom, tol=tol, seed=seed)
    k0_iso = k0.is_unimodular()

    witnesses = []
    target = F.target
    image = [F.object_map[x] for x in F.source.objects]
    for base, members in connected_components(target):
        hit = [y for y in image if y in members]
        if not hit:
            continue
        x = hit[0]
        comp = full_subgroupoid(target, members)
        comp_alg = StructureConstantAlgebra(comp)
        p = identity_projection(comp_alg, [x])
        witnesses.append({
            "component_base": base,
            "object": x,
            "full": is_full_projection(comp_alg, p),
        })
    return MoritaReport(is_cofibration(F) and bool(eq), k0_iso, k0, witnesses,
                        eq.failures, seed, tol)


def vertex_algebra(g, x):
    """The group algebra of the vertex group at x, as the corner of the
    identity projection; basis ids are the loop ids of g."""
    vg = vertex_group(g, x)
    sub = full_subgroupoid(g, [x])
    return StructureConstantAlgebra(sub), vg
