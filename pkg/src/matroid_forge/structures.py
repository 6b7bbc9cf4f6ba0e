"""Spikes, porcupines, stars, star-partitions, stacks and Reid geometries."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .fields import field
from .matroid import (CircuitMatroid, LinearMatroid, Matroid, circuit_masks, coloops, corank,
                      epsilon, girth, has_line_minor, has_minor, is_isomorphic, is_simple,
                      parallel_classes, popcount, simplify)


def _tip_classes(m: Matroid, t):
    """Parallel classes of M/t as sets of ids, i.e. lines through t minus cl({t})."""
    c = m.contract([t])
    return [frozenset(c.elements(p)) for p in parallel_classes(c)], c


def is_spike(m: Matroid, t) -> bool:
    if t not in m.ground or not is_simple(m):
        return False
    classes, c = _tip_classes(m, t)
    if c.closure_mask(0) or any(len(p) != 2 for p in classes):
        return False
    s = simplify(c)[0]
    # si(M/t) is a circuit exactly when it is U_{n-1,n}
    if s.n < 2 or s.r != s.n - 1:
        return False
    return all(s.rank_mask(s.full & ~(1 << i)) == s.r for i in range(s.n))


def _tip_line_points(m: Matroid, f):
    """For each line through f, the number of points on it."""
    classes, _ = _tip_classes(m, f)
    loops = m.closure_mask(0)
    out = []
    for p in classes:
        ln = m.closure_mask(m.mask(p) | m.mask([f]))
        pts = {m.closure_mask(1 << i) for i in range(m.n) if (ln & ~loops) >> i & 1}
        out.append(len(pts))
    return out


def _si_contract(m: Matroid, f) -> Matroid:
    return simplify(m.contract([f]))[0]


def is_g_preporcupine(m: Matroid, f, g: int) -> bool:
    if f not in m.ground or m.rank([f]) == 0:
        return False
    if any(k < 3 for k in _tip_line_points(m, f)):
        return False
    return girth(_si_contract(m, f)) >= g


def is_g_porcupine(m: Matroid, f, g: int) -> bool:
    if not is_simple(m) or not is_g_preporcupine(m, f, g):
        return False
    if any(k != 3 for k in _tip_line_points(m, f)):
        return False
    return not coloops(_si_contract(m, f))


def porcupine_d(m: Matroid, f) -> int:
    """Corank of si(P/f)."""
    return corank(_si_contract(m, f))


def porcupine_restriction(m: Matroid, f) -> Matroid:
    """A porcupine restriction of a preporcupine with tip f.

    Two points are kept on every line through f, then the lines whose point is a
    coloop of si(P/f) are dropped.
    """
    classes, c = _tip_classes(m, f)
    loops = m.closure_mask(0)
    chosen = {}
    for p in classes:
        pm = m.mask(p) & ~loops
        reps = []
        seen = 0
        for i in range(m.n):
            if pm >> i & 1 and not seen >> i & 1:
                reps.append(m.ground[i])
                seen |= m.closure_mask(1 << i)
        chosen[min(p)] = reps[:2]
    s = c.restrict(list(chosen))
    cl = coloops(s)
    keep = [f] + [e for k, reps in chosen.items() if k not in cl for e in reps]
    return m.restrict(keep)


def is_star(m: Matroid, t) -> bool:
    """Whether some basis B u {t} has E = union of cl({t, b})."""
    if t not in m.ground or m.rank([t]) == 0 or m.r < 2:
        return False
    c = m.contract([t])
    return epsilon(c) == c.r


def star_lines(m: Matroid, t) -> list[frozenset]:
    return _tip_classes(m, t)[0]


def transversal_violations(m: Matroid, t) -> list[frozenset]:
    """Circuits not inside {t} u L u L' for any two tip-lines L, L'."""
    lines = [m.mask(p) for p in star_lines(m, t)]
    tm = m.closure_mask(m.mask([t]))
    bad = []
    for c in circuit_masks(m):
        rest = c & ~tm
        if not any(rest & ~(a | b) == 0 for a, b in itertools.combinations_with_replacement(lines, 2)):
            bad.append(m.elements(c))
    return bad


def star(rank: int, line_sizes, q: int) -> LinearMatroid:
    """Star over GF(q): tip 0, then on line i the basis vector e_i and points e_0 + a e_i.

    line_sizes[i] counts the points of line i other than the tip and is at most q.
    """
    if len(line_sizes) != rank - 1:
        raise ValueError("need one line per non-tip basis element")
    field(q)
    cols = []
    tip = [1] + [0] * (rank - 1)
    cols.append(tip)
    for i, s in enumerate(line_sizes, start=1):
        if not 1 <= s <= q:
            raise ValueError("line sizes must lie in 1..q")
        for a in range(s):
            v = [0] * rank
            if a == 0:
                v[i] = 1
            else:
                v[0] = 1
                v[i] = a  # field element ids are 0..q-1
            cols.append(v)
    return LinearMatroid(cols, q)


@dataclass(frozen=True)
class StarPartition:
    x: frozenset
    lines: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", frozenset(self.x))
        object.__setattr__(self, "lines", tuple(frozenset(ln) for ln in self.lines))


def star_partition_valid(m: Matroid, sp: StarPartition) -> bool:
    xm = m.mask(sp.x)
    if m.rank_mask(xm) > 1:
        return False
    seen = xm
    masks = []
    for ln in sp.lines:
        lm = m.mask(ln)
        if not lm or lm & seen:
            return False
        seen |= lm
        u = lm | xm
        if m.rank_mask(u) > 2 or m.closure_mask(u) != u:
            return False
        masks.append(lm)
    if seen != m.full:
        return False
    return all(m.rank_mask(a | b) <= 3 for a, b in itertools.combinations(masks, 2))


def star_partition_uncovered(m: Matroid, sp: StarPartition, max_size: int | None = None):
    """Circuits (of size at most max_size) not inside X u L u L' for any L, L'."""
    xm = m.mask(sp.x)
    masks = [m.mask(ln) for ln in sp.lines]
    out = []
    for c in circuit_masks(m, max_size):
        rest = c & ~xm
        if not any(rest & ~(a | b) == 0 for a, b in itertools.combinations_with_replacement(masks, 2)):
            out.append(m.elements(c))
    return out


def _long_lines_through(m: Matroid, x) -> int:
    return sum(1 for k in _tip_line_points(m, x) if k >= 3)


def find_star_partition(m: Matroid) -> StarPartition | None:
    """A star-partition covering every circuit, or None.

    Candidates follow the two constructions available for restrictions of
    stars: X = {x} for an element on two long lines, otherwise X empty with
    the line cl({e, e'}) and the parallel classes of M/{e, e'}.
    """
    if not is_simple(m):
        raise ValueError("star-partitions are searched on simple matroids")
    cands = []
    for x in m.ground:
        if _long_lines_through(m, x) >= 2:
            cands.append(StarPartition({x}, star_lines(m, x)))
    if not cands:
        cs = circuit_masks(m)
        if not cs:
            cands.append(StarPartition(frozenset(), [{e} for e in m.ground]))
        for c in cs:
            els = m.elements(c)
            e = min(els)
            for e2 in sorted(els - {e}):
                c2 = m.contract([e, e2])
                lines = [m.closure([e, e2])]
                lines += [c2.elements(p) for p in parallel_classes(c2)]
                cands.append(StarPartition(frozenset(), lines))
            break
    for sp in cands:
        if star_partition_valid(m, sp) and not star_partition_uncovered(m, sp):
            return sp
    return None


@dataclass(frozen=True)
class StackWitness:
    parts: tuple
    b: int
    h: int

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in self.parts))


def is_stack(m: Matroid, w: StackWitness, not_in_class: Callable[[Matroid], bool]) -> bool:
    """Check an (O, b, h)-stack witness; not_in_class(N) is True when N lies outside O."""
    if len(w.parts) != w.h or w.h < 1 or w.b < 2:
        return False
    seen = set()
    for p in w.parts:
        if seen & p or not p <= set(m.ground):
            return False
        seen |= p
    if m.rank(seen) != m.r:
        return False
    done: set = set()
    for p in w.parts:
        piece = m.contract(sorted(done)).restrict(sorted(p)) if done else m.restrict(sorted(p))
        if piece.r > w.b or not not_in_class(piece):
            return False
        done |= p
    return True


def has_line_minor_predicate(n: int) -> Callable[[Matroid], bool]:
    """Outside the class of matroids with no U_{2,n}-minor."""
    return lambda piece: has_line_minor(piece, n)


def not_group_frame(groups) -> Callable[[Matroid], bool]:
    """Outside the class of Gamma-frame matroids for every Gamma listed.

    A matroid is such a frame matroid when its simplification is a restriction
    of DG(r, Gamma); that is what is searched for.
    """
    from .geometries import dowling
    from .matroid import find_embedding

    def pred(piece: Matroid) -> bool:
        s = simplify(piece)[0]
        if s.r <= 1:
            return False
        for g in groups:
            if s.r == 2:
                # rank-2 Gamma-frame geometries are the lines with at most |Gamma| + 2 points
                if s.n <= g.order + 2:
                    return False
                continue
            if find_embedding(dowling(s.r, g)[0].matroid, s) is not None:
                return False
        return True

    return pred


def reid_geometry(p: int) -> CircuitMatroid:
    """R(p): x=0, a_i = 1..p, c_i = p+1..2p, y = 2p+1, z = 2p+2."""
    if p < 2:
        raise ValueError("Reid geometries need p >= 2")
    x = 0
    a = list(range(1, p + 1))
    c = list(range(p + 1, 2 * p + 1))
    y, z = 2 * p + 1, 2 * p + 2
    lines = [frozenset([x] + a), frozenset([x] + c), frozenset([x, y, z])]
    for i in range(p):
        lines.append(frozenset([a[i], c[i], y]))
        lines.append(frozenset([a[i], c[(i + 1) % p], z]))
    n = 2 * p + 3
    dep3 = [frozenset(t) for ln in lines for t in itertools.combinations(sorted(ln), 3)]
    dep3set = set(dep3)
    cs = list(dep3set)
    for q in itertools.combinations(range(n), 4):
        if not any(frozenset(t) in dep3set for t in itertools.combinations(q, 3)):
            cs.append(frozenset(q))
    return CircuitMatroid(range(n), cs, check=False)


def reid_parts(p: int):
    """(L1, L2, L3, x, y, z) for reid_geometry(p)."""
    x = 0
    a = list(range(1, p + 1))
    c = list(range(p + 1, 2 * p + 1))
    y, z = 2 * p + 1, 2 * p + 2
    return frozenset([x] + a), frozenset([x] + c), frozenset([x, y, z]), x, y, z


def reid_incidence_graph(m: Matroid, lines, x, y, z) -> dict:
    """Bipartite graph on (L1 - x) u (L2 - x); a ~ b when {a, b, y} or {a, b, z} is collinear."""
    l1, l2 = (sorted(set(ln) - {x}) for ln in lines[:2])
    adj = {v: set() for v in l1 + l2}
    for a in l1:
        for b in l2:
            if m.rank([a, b, y]) == 2 or m.rank([a, b, z]) == 2:
                adj[a].add(b)
                adj[b].add(a)
    return adj


def is_cycle_graph(adj: dict) -> bool:
    if len(adj) < 2 or any(len(v) != 2 for v in adj.values()):
        return False
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def has_reid_minor(m: Matroid, p_range=(2, 4)) -> int | None:
    """Smallest p in the inclusive range (lo, hi) with an R(p)-minor."""
    lo, hi = p_range
    for p in range(lo, hi + 1):
        if has_minor(m, reid_geometry(p)):
            return p
    return None
