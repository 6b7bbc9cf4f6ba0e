"""Exhaustive searches: isomorphism, restriction embeddings, minors, representations."""
from __future__ import annotations

import itertools
from collections import Counter

from ..fields import field
from .core import (BudgetError, Matroid, bits, circuit_masks, corank, covers, epsilon,
                   flat_levels, popcount)

DEFAULT_BUDGET = 2_000_000


def _circuit_index(m: Matroid, cs):
    by = [[] for _ in range(m.n)]
    for c in cs:
        for i in bits(c):
            by[i].append(c)
    return by


def _refine(n, by1, by2, rounds: int = 4):
    col1 = [0] * n
    col2 = [0] * n
    classes = 1
    for _ in range(rounds):
        def sig(by, col, e):
            return (col[e], tuple(sorted((popcount(c), tuple(sorted(col[f] for f in bits(c) if f != e)))
                                         for c in by[e])))
        s1 = [sig(by1, col1, e) for e in range(n)]
        s2 = [sig(by2, col2, e) for e in range(n)]
        palette = {s: i for i, s in enumerate(sorted(set(s1) | set(s2)))}
        col1 = [palette[s] for s in s1]
        col2 = [palette[s] for s in s2]
        if Counter(col1) != Counter(col2):
            return col1, col2
        k = len(set(col1))
        if k == classes:
            break
        classes = k
    return col1, col2


def is_isomorphic(m1: Matroid, m2: Matroid, budget: int = DEFAULT_BUDGET):
    """A dict carrying m1's ground onto m2's preserving independence, or None."""
    n = m1.n
    if n != m2.n or m1.r != m2.r:
        return None
    if n == 0:
        return {}
    cs1 = circuit_masks(m1)
    cs2 = circuit_masks(m2)
    if sorted(map(popcount, cs1)) != sorted(map(popcount, cs2)):
        return None
    by1 = _circuit_index(m1, cs1)
    by2 = _circuit_index(m2, cs2)
    col1, col2 = _refine(n, by1, by2)
    if Counter(col1) != Counter(col2):
        return None
    set2 = set(cs2)
    set1 = set(cs1)
    size = Counter(col1)
    # static order: stay connected through circuits, prefer rare colours
    order: list[int] = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        def score(e):
            done = sum(1 for c in by1[e] if c & ~placed & ~(1 << e) == 0)
            touch = sum(1 for c in by1[e] if c & placed)
            return (-done, -touch, size[col1[e]], e)
        e = min(remaining, key=score)
        order.append(e)
        placed |= 1 << e
        remaining.discard(e)
    pos = {e: i for i, e in enumerate(order)}
    finish = [[] for _ in range(n)]
    for c in cs1:
        last = max(bits(c), key=lambda f: pos[f])
        finish[pos[last]].append(c)
    cand = {}
    for col in set(col1):
        cand[col] = [y for y in range(n) if col2[y] == col]
    phi = [0] * n
    used = [False] * n
    nodes = 0

    def image(c):
        out = 0
        for f in bits(c):
            out |= 1 << phi[f]
        return out

    psi = [0] * n

    def pre(c):
        out = 0
        for y in bits(c):
            out |= 1 << psi[y]
        return out

    def extend(d, img_mask):
        nonlocal nodes
        if d == n:
            return True
        x = order[d]
        for y in cand[col1[x]]:
            if used[y]:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetError("isomorphism search exceeded its budget")
            phi[x] = y
            psi[y] = x
            if any(image(c) not in set2 for c in finish[d]):
                continue
            img = img_mask | 1 << y
            inv_ok = True
            for c in by2[y]:
                if c & ~img == 0 and pre(c) not in set1:
                    inv_ok = False
                    break
            if not inv_ok:
                continue
            used[y] = True
            if extend(d + 1, img):
                return True
            used[y] = False
        return False

    if not extend(0, 0):
        return None
    return {m1.ground[x]: m2.ground[phi[x]] for x in range(n)}


def _subset_independence(n: Matroid):
    return [n.rank_mask(s) == popcount(s) for s in range(1 << n.n)]


def find_embedding(host: Matroid, n: Matroid, budget: int = DEFAULT_BUDGET, candidates=None):
    """An injective map E(n) -> E(host) with n isomorphic to the image restriction."""
    if n.n > host.n or n.r > host.r:
        return None
    if n.n > 16:
        raise ValueError("embedding search supports at most 16 pattern elements")
    ind = _subset_independence(n)
    r = n.r
    loops_n = {i for i in range(n.n) if not ind[1 << i]}
    loops_h = {j for j in range(host.n) if host.rank_mask(1 << j) == 0}
    if len(loops_n) > len(loops_h):
        return None
    # order pattern elements so each new one meets many earlier ones in small dependencies
    order = sorted(range(n.n), key=lambda i: (i in loops_n, i))
    phi = [0] * n.n
    used = set()
    nodes = 0
    pool = list(range(host.n)) if candidates is None else [host._pos[e] for e in candidates]

    def ok(d):
        x = order[d]
        prev = order[:d]
        for k in range(0, min(r, d) + 1):
            for sub in itertools.combinations(prev, k):
                pm = 1 << x
                hm = 1 << phi[x]
                for s in sub:
                    pm |= 1 << s
                    hm |= 1 << phi[s]
                if ind[pm] != (host.rank_mask(hm) == k + 1):
                    return False
        return True

    def extend(d):
        nonlocal nodes
        if d == n.n:
            return True
        x = order[d]
        for y in pool:
            if y in used:
                continue
            if (x in loops_n) != (y in loops_h):
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetError("embedding search exceeded its budget")
            phi[x] = y
            if not ok(d):
                continue
            used.add(y)
            if extend(d + 1):
                return True
            used.discard(y)
        return False

    if not extend(0):
        return None
    return {n.ground[i]: host.ground[phi[i]] for i in range(n.n)}


def has_minor(m: Matroid, n: Matroid, budget: int = DEFAULT_BUDGET) -> bool:
    return find_minor(m, n, budget) is not None


def find_minor(m: Matroid, n: Matroid, budget: int = DEFAULT_BUDGET):
    """(contracted set, embedding) realizing n as a minor of m, or None."""
    if n.n > m.n or n.r > m.r or corank(n) > corank(m):
        return None
    k = m.r - n.r
    if k == 0:
        contractions = [0]
    else:
        contractions = [m.basis_mask(f) for f in flat_levels(m, k)[k]]
    for c in contractions:
        host = m.contract(m.elements(c)) if c else m
        emb = find_embedding(host, n, budget)
        if emb is not None:
            return m.elements(c), emb
    return None


def max_line_minor(m: Matroid) -> int:
    """Largest n such that some contraction of m has an n-point line."""
    r = m.r
    if r < 2:
        return 0
    best = 0
    for f in flat_levels(m, r - 2)[r - 2]:
        best = max(best, len(covers(m, f)))
    return best


def has_line_minor(m: Matroid, n: int) -> bool:
    r = m.r
    if r < 2:
        return False
    if r == 2:
        return epsilon(m) >= n
    # any n-point line in a contraction survives further contraction by
    # elements off that line, so flats of rank r-2 are enough
    for f in flat_levels(m, r - 2)[r - 2]:
        if len(covers(m, f)) >= n:
            return True
    return False


def find_representation(m: Matroid, q: int, budget: int = DEFAULT_BUDGET):
    """A rank(m) x |E| matrix over GF(q) whose column matroid is m, or None."""
    if q > 9:
        raise ValueError("representation search is limited to fields with at most 9 elements")
    F = field(q)
    r = m.r
    if r > 4 or m.n > 12:
        raise ValueError("representation search needs rank <= 4 and at most 12 elements")
    n = m.n
    if r == 0:
        return [[] for _ in range(0)] if n == 0 else []
    basis = list(bits(m.basis_mask()))
    vec: list[tuple | None] = [None] * n
    for k, b in enumerate(basis):
        vec[b] = tuple(1 if i == k else 0 for i in range(r))
    rest = [e for e in range(n) if e not in basis]
    points = F.projective_points(r)
    zero = (0,) * r
    nodes = 0
    assigned = list(basis)
    first_free = next((e for e in rest if m.rank_mask(1 << e) == 1), None)

    def fundamental_support(e):
        # coordinates of e's fundamental circuit with respect to the basis
        bm = 0
        for b in basis:
            bm |= 1 << b
        sup = []
        for k, b in enumerate(basis):
            if m.rank_mask((bm & ~(1 << b)) | 1 << e) == r:
                sup.append(k)
        return sup

    def consistent(e, v):
        for k in range(0, r):
            for sub in itertools.combinations(assigned, k):
                mm = 1 << e
                for s in sub:
                    mm |= 1 << s
                indep = m.rank_mask(mm) == k + 1
                got = F.rank([vec[s] for s in sub] + [v]) == k + 1
                if indep != got:
                    return False
        return True

    def extend(i):
        nonlocal nodes
        if i == len(rest):
            return True
        e = rest[i]
        if m.rank_mask(1 << e) == 0:
            options = [zero]
        elif e == first_free:
            sup = set(fundamental_support(e))
            options = [tuple(1 if k in sup else 0 for k in range(r))]
        else:
            options = points
        for v in options:
            nodes += 1
            if nodes > budget:
                raise BudgetError("representation search exceeded its budget")
            if not consistent(e, v):
                continue
            vec[e] = v
            assigned.append(e)
            if extend(i + 1):
                return True
            assigned.pop()
            vec[e] = None
        return False

    if not extend(0):
        return None
    return [[vec[e][k] for e in range(n)] for k in range(r)]
