"""Truncated simplicial and bisimplicial sets with explicit face and
degeneracy maps, carried as index arrays between finite simplex lists.
Degenerate simplices are stored explicitly; homology later works with the
normalized (degeneracy-free) chains."""

from __future__ import annotations

from dataclasses import dataclass, field


class SimplicialError(ValueError):
    pass


@dataclass
class TruncatedSimplicialSet:
    cutoff: int
    levels: list                       # levels[k]: list of simplices
    faces: dict = field(default_factory=dict)        # (k, i) -> list of indices
    degeneracies: dict = field(default_factory=dict)  # (k, i) -> list of indices
    index: list = field(default_factory=list)

    def __post_init__(self):
        if not self.index:
            self.index = [{s: i for i, s in enumerate(level)} for level in self.levels]

    def size(self, k):
        return len(self.levels[k])

    def face(self, k, i, pos):
        return self.faces[(k, i)][pos]

    def degenerate_indices(self, k):
        """Indices of level-k simplices hit by some degeneracy."""
        if k == 0:
            return set()
        out = set()
        for i in range(k):
            out.update(self.degeneracies[(k - 1, i)])
        return out

    def nondegenerate(self, k):
        dead = self.degenerate_indices(k)
        return [i for i in range(self.size(k)) if i not in dead]

    def verify_identities(self):
        """Simplicial identities on all stored levels; returns violations."""
        bad = []
        L = self.cutoff
        for k in range(2, L + 1):
            for j in range(k):
                for i in range(j):
                    lhs = [self.faces[(k - 1, i)][x] for x in self.faces[(k, j)]]
                    rhs = [self.faces[(k - 1, j - 1)][x] for x in self.faces[(k, i)]]
                    if lhs != rhs:
                        bad.append("d_%d d_%d fails at level %d" % (i, j, k))
        for k in range(L - 1):
            for j in range(k + 1):
                for i in range(j + 1):
                    if i < j:
                        lhs = [self.degeneracies[(k + 1, j + 1)][x]
                               for x in self.degeneracies[(k, i)]]
                        rhs = [self.degeneracies[(k + 1, i)][x]
                               for x in self.degeneracies[(k, j)]]
                        if lhs != rhs:
                            bad.append("s_%d s_%d fails at level %d" % (j + 1, i, k))
        for k in range(L):
            for i in range(k + 1):
                for j in range(k + 2):
                    # d_j s_i
                    comp = [self.faces[(k + 1, j)][x]
                            for x in self.degeneracies[(k, i)]]
                    if j == i or j == i + 1:
                        want = list(range(self.size(k)))
                    elif j < i:
                        want = [self.degeneracies[(k - 1, i - 1)][x]
                                for x in self.faces[(k, j)]] if k >= 1 else None
                    else:
                        want = [self.degeneracies[(k - 1, i)][x]
                                for x in self.faces[(k, j - 1)]] if k >= 1 else None
                    if want is not None and comp != want:
                        bad.append("d_%d s_%d fails at level %d" % (j, i, k))
        return bad


def build_simplicial_set(cutoff, levels, face_fn, degeneracy_fn):
    """Assemble a truncated simplicial set from simplex lists and callables
    computing the face / degeneracy of a simplex; results are indexed."""
    X = TruncatedSimplicialSet(cutoff, [list(lv) for lv in levels])
    for k in range(1, cutoff + 1):
        for i in range(k + 1):
            X.faces[(k, i)] = [X.index[k - 1][face_fn(k, i, s)] for s in X.levels[k]]
    for k in range(cutoff):
        for i in range(k + 1):
            X.degeneracies[(k, i)] = [X.index[k + 1][degeneracy_fn(k, i, s)]
                                      for s in X.levels[k]]
    return X


@dataclass
class TruncatedBisimplicialSet:
    cutoff: tuple                      # (horizontal, vertical)
    levels: dict                       # (m, n) -> list of cells
    h_faces: dict = field(default_factory=dict)       # (m, n, i) -> indices
    v_faces: dict = field(default_factory=dict)
    h_degeneracies: dict = field(default_factory=dict)
    v_degeneracies: dict = field(default_factory=dict)
    index: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {mn: {s: i for i, s in enumerate(cells)}
                          for mn, cells in self.levels.items()}

    def size(self, m, n):
        return len(self.levels[(m, n)])

    def verify_identities(self):
        """Bisimplicial identities: simplicial in each direction, and the two
        directions commute; returns violations."""
        bad = []
        H, V = self.cutoff

        def row_sset(n):
            lv = [self.levels[(m, n)] for m in range(H + 1)]
            X = TruncatedSimplicialSet(H, lv)
            for m in range(1, H + 1):
                for i in range(m + 1):
                    X.faces[(m, i)] = self.h_faces[(m, n, i)]
            for m in range(H):
                for i in range(m + 1):
                    X.degeneracies[(m, i)] = self.h_degeneracies[(m, n, i)]
            return X

        def col_sset(m):
            lv = [self.levels[(m, n)] for n in range(V + 1)]
            X = TruncatedSimplicialSet(V, lv)
            for n in range(1, V + 1):
                for i in range(n + 1):
                    X.faces[(n, i)] = self.v_faces[(m, n, i)]
            for n in range(V):
                for i in range(n + 1):
                    X.degeneracies[(n, i)] = self.v_degeneracies[(m, n, i)]
            return X

        for n in range(V + 1):
            for msg in row_sset(n).verify_identities():
                bad.append("horizontal @n=%d: %s" % (n, msg))
        for m in range(H + 1):
            for msg in col_sset(m).verify_identities():
                bad.append("vertical @m=%d: %s" % (m, msg))
        for m in range(1, H + 1):
            for n in range(1, V + 1):
                for i in range(m + 1):
                    for j in range(n + 1):
                        lhs = [self.v_faces[(m - 1, n, j)][x]
                               for x in self.h_faces[(m, n, i)]]
                        rhs = [self.h_faces[(m, n - 1, i)][x]
                               for x in self.v_faces[(m, n, j)]]
                        if lhs != rhs:
                            bad.append("h_d%d and v_d%d do not commute at (%d, %d)"
                                       % (i, j, m, n))
        return bad
