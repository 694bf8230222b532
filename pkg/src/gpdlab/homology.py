"""Integral homology of truncated simplicial sets via normalized chains and
an integer Smith normal form, all in exact arithmetic."""

from __future__ import annotations

from dataclasses import dataclass


def smith_normal_form(rows):
    """Diagonal of the Smith normal form of an integer matrix (list of rows),
    with the divisibility chain enforced.  Returns the list of nonzero
    diagonal entries, positive, each dividing the next."""
    M = [list(map(int, r)) for r in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    diag = []
    top = 0
    while top < min(m, n):
        # find a nonzero pivot of least absolute value
        piv = None
        best = None
        for i in range(top, m):
            for j in range(top, n):
                v = M[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        M[top], M[pi] = M[pi], M[top]
        for r in M:
            r[top], r[pj] = r[pj], r[top]
        while True:
            # clear the pivot column
            again = False
            for i in range(top + 1, m):
                if M[i][top]:
                    q = M[i][top] // M[top][top]
                    for j in range(top, n):
                        M[i][j] -= q * M[top][j]
                    if M[i][top]:
                        M[top], M[i] = M[i], M[top]
                        again = True
            if again:
                continue
            for j in range(top + 1, n):
                if M[top][j]:
                    q = M[top][j] // M[top][top]
                    for i in range(top, m):
                        M[i][j] -= q * M[i][top]
                    if M[top][j]:
                        for r in M:
                            r[top], r[j] = r[j], r[top]
                        again = True
            if not again:
                break
        diag.append(abs(M[top][top]))
        top += 1
    # enforce the divisibility chain
    diag = [d for d in diag if d]
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a != 0:
                g = _gcd(a, b)
                l = a * b // g
                diag[i], diag[i + 1] = g, l
                changed = True
        diag.sort()
    return diag


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class HomologyProfile:
    """Per degree: free rank and the nontrivial torsion coefficients."""
    degrees: tuple       # of (rank, torsion tuple)

    def rank(self, k):
        return self.degrees[k][0]

    def torsion(self, k):
        return self.degrees[k][1]

    def describe(self):
        parts = []
        for k, (r, tor) in enumerate(self.degrees):
            terms = (["Z^%d" % r] if r > 1 else ["Z"] if r == 1 else []) + \
                    ["Z/%d" % t for t in tor]
            parts.append("H%d = %s" % (k, " + ".join(terms) if terms else "0"))
        return "; ".join(parts)


def boundary_matrix(X, k):
    """Normalized boundary from level k to level k-1; rows are the
    nondegenerate (k-1)-simplices, columns the nondegenerate k-simplices."""
    rows_idx = X.nondegenerate(k - 1)
    cols_idx = X.nondegenerate(k)
    row_pos = {r: p for p, r in enumerate(rows_idx)}
    M = [[0] * len(cols_idx) for _ in rows_idx]
    for cpos, c in enumerate(cols_idx):
        for i in range(k + 1):
            r = X.faces[(k, i)][c]
            p = row_pos.get(r)
            if p is not None:
                M[p][cpos] += (-1) ** i
    return M, len(rows_idx), len(cols_idx)


def homology(X, top=None):
    """Integral homology profile of a truncated simplicial set in degrees up
    to cutoff - 1 (the top boundary is unknown beyond that)."""
    if top is None:
        top = X.cutoff - 1
    if top >= X.cutoff:
        raise ValueError("degree %d needs level %d simplices" % (top, top + 1))
    counts = [len(X.nondegenerate(k)) for k in range(top + 2)]
    diags = {}
    for k in range(1, top + 2):
        M, nr, nc = boundary_matrix(X, k)
        diags[k] = smith_normal_form(M) if nr and nc else []
    degrees = []
    for k in range(top + 1):
        rank_in = len(diags.get(k + 1, []))
        rank_out = len(diags.get(k, [])) if k >= 1 else 0
        free = counts[k] - rank_out - rank_in
        torsion = tuple(d for d in diags.get(k + 1, []) if d > 1)
        degrees.append((free, torsion))
    return HomologyProfile(tuple(degrees))
