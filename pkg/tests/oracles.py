"""Brute-force reference computations, written without the package's own algorithms."""
from __future__ import annotations

import itertools
from fractions import Fraction


def rank_rational(vectors) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def rank_mod_p(vectors, p: int) -> int:
    rows = [[x % p for x in v] for v in vectors]
    if not rows:
        return 0
    r = 0
    for c in range(len(rows[0])):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [a * inv % p for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def det_permutation(rows) -> int:
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += sign * prod
    return total


def delta_brute(rows) -> int:
    """Max |det| over square submatrices of size rank(A)."""
    cols = list(zip(*rows))
    r = rank_rational(rows)
    best = 0
    for rs in itertools.combinations(range(len(rows)), r):
        for cs in itertools.combinations(range(len(cols)), r):
            best = max(best, abs(det_permutation([[rows[i][j] for j in cs] for i in rs])))
    return best


def graph_rank(vertex_count, edges) -> int:
    parent = list(range(vertex_count))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    r = 0
    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            r += 1
    return r


def independent_sets(m):
    """Every independent set, via the rank oracle, as frozensets of ids."""
    out = []
    for k in range(m.n + 1):
        for sub in itertools.combinations(m.ground, k):
            if m.rank(sub) == k:
                out.append(frozenset(sub))
    return out


def isomorphic_brute(m1, m2) -> bool:
    """Permutation search; only for small ground sets."""
    if m1.n != m2.n or m1.r != m2.r:
        return False
    ind2 = set(independent_sets(m2))
    ind1 = independent_sets(m1)
    if len(ind1) != len(ind2):
        return False
    g1 = list(m1.ground)
    for perm in itertools.permutations(m2.ground):
        phi = dict(zip(g1, perm))
        if all(frozenset(phi[e] for e in s) in ind2 for s in ind1):
            return True
    return False


def minimal_dependent(m):
    out = set()
    for k in range(1, m.n + 1):
        for sub in itertools.combinations(m.ground, k):
            s = frozenset(sub)
            if m.rank(sub) < k and not any(c <= s for c in out):
                out.add(s)
    return out
