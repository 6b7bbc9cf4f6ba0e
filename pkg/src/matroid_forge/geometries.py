"""Frame and lift matroids of biased graphs and the named geometries built from them."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .glgraph import (BiasedGraph, GroupLabeledGraph, LabelingError, enumerate_cycles,
                      recover_group_labeling, theta_property_holds)
from .groups import FiniteGroup
from .labels import GeometryLabel
from .matroid import (FrameMatroid, LiftMatroid, Matroid, bits, circuit_masks, complete_graphic,
                      find_embedding, is_isomorphic, is_simple, line_point_counts, si)


class ThetaPropertyError(ValueError):
    pass


def frame_matroid_of(b) -> FrameMatroid:
    if isinstance(b, BiasedGraph) and not theta_property_holds(b):
        raise ThetaPropertyError("balanced family violates the theta property")
    return FrameMatroid(b)


def lift_matroid_of(b, extended: bool = False) -> LiftMatroid:
    if isinstance(b, BiasedGraph) and not theta_property_holds(b):
        raise ThetaPropertyError("balanced family violates the theta property")
    return LiftMatroid(b, extended=extended)


@dataclass(frozen=True)
class FramedMatroid:
    matroid: Matroid
    frame: frozenset

    def __post_init__(self):
        m = self.matroid
        fm = m.mask(self.frame)
        if m.rank_mask(fm) != len(self.frame) or len(self.frame) != m.r:
            raise ValueError("frame is not a basis")
        for e in frame_spans(m, self.frame).values():
            if e is None:
                raise ValueError("some element is not spanned by two frame elements")


def frame_spans(m: Matroid, frame):
    """For each element, the smallest set of at most two frame elements spanning it (or None)."""
    fr = sorted(frame)
    out = {}
    for x in m.ground:
        xm = m.mask([x])
        found = None
        for k in range(3):
            for sub in itertools.combinations(fr, k):
                sm = m.mask(sub)
                if m.rank_mask(sm | xm) == m.rank_mask(sm):
                    found = frozenset(sub)
                    break
            if found is not None:
                break
        out[x] = found
    return out


def _group_name(g: FiniteGroup) -> str:
    return g.name or f"order{g.order}"


def _complete_edges(k, order):
    return [(i, j, a) for i in range(k) for j in range(i + 1, k) for a in range(order)]


def _non_loop_cycles(k, ends):
    return frozenset(frozenset(c) for c in enumerate_cycles(k, ends) if all(ends[e][0] != ends[e][1] for e in c))


def dowling(k: int, g: FiniteGroup):
    """DG(k, g) with the k vertex loops (ids 0..k-1) as frame."""
    if g.order >= 2 and k < 3:
        raise ValueError("Dowling geometries over nontrivial groups need k >= 3")
    if k < 1:
        raise ValueError("k must be positive")
    edges = _complete_edges(k, g.order)
    tags = [f"loop:{i}" for i in range(k)] + [f"edge:{i},{j},{a}" for i, j, a in edges]
    if g.order == 1:
        ends = [(i, i) for i in range(k)] + [(i, j) for i, j, _ in edges]
        graph = BiasedGraph(k, tuple(ends), _non_loop_cycles(k, ends))
    else:
        # any non-identity label makes a loop unbalanced
        graph = GroupLabeledGraph(k, tuple([(i, i, 1) for i in range(k)] + edges), g)
    m = FrameMatroid(graph)
    label = GeometryLabel("DG", (("k", k), ("group", _group_name(g))), tuple(tags))
    return FramedMatroid(m, frozenset(range(k))), label


def dowling_minus(k: int, g: FiniteGroup, with_label: bool = False):
    """DG(k, g) with its frame deleted, on ids 0..|g|C(k,2)-1."""
    if g.order >= 2 and k < 3:
        raise ValueError("Dowling geometries over nontrivial groups need k >= 3")
    edges = _complete_edges(k, g.order)
    if g.order == 1:
        ends = [(i, j) for i, j, _ in edges]
        m = FrameMatroid(BiasedGraph(k, tuple(ends), _non_loop_cycles(k, ends)))
    else:
        m = FrameMatroid(GroupLabeledGraph(k, tuple(edges), g))
    if not with_label:
        return m
    tags = tuple(f"edge:{i},{j},{a}" for i, j, a in edges)
    return m, GeometryLabel("DGminus", (("k", k), ("group", _group_name(g))), tags)


def lift_geometry(k: int, g: FiniteGroup, extended: bool = False):
    """LG(k, g), or LG+(k, g) with e0 as the last element."""
    if k < 3:
        raise ValueError("lift geometries need k >= 3")
    kind = "LGplus" if extended else "LG"
    params = (("k", k), ("group", _group_name(g)))
    if g.order == 1 and not extended:
        m = complete_graphic(k + 1)
        tags = tuple(f"edge:{i},{j},0" for i, j in itertools.combinations(range(k + 1), 2))
        return m, GeometryLabel(kind, params, tags)
    edges = _complete_edges(k, g.order)
    m = LiftMatroid(GroupLabeledGraph(k, tuple(edges), g), extended=extended)
    tags = [f"edge:{i},{j},{a}" for i, j, a in edges] + (["e0"] if extended else [])
    return m, GeometryLabel(kind, params, tuple(tags))


def dowling_size(k: int, t: int) -> int:
    return t * comb(k, 2) + k


def lift_plus_size(k: int, t: int) -> int:
    return t * comb(k, 2) + 1


def is_b_clique(f: FramedMatroid) -> bool:
    m = f.matroid
    for b1, b2 in itertools.combinations(sorted(f.frame), 2):
        line = m.restrict(m.closure([b1, b2]))
        if len(si(line)) < 3:
            return False
    return True


def is_doubled_clique(m: Matroid, e) -> bool:
    if not is_simple(m) or m.rank([e]) != 1:
        return False
    c = m.contract([e])
    s, classes = _simplify_with_classes(c)
    if any(len(cls) != 2 for cls in classes.values()):
        return False
    if c.closure_mask(0) != 0:
        return False
    n = m.r
    return is_isomorphic(s, complete_graphic(n)) is not None


def _simplify_with_classes(m):
    from .matroid import simplify
    return simplify(m)


def kahn_kung_violations(f: FramedMatroid, t: int) -> list[str]:
    """Hypotheses of the Dowling identification that fail for (f, t)."""
    m = f.matroid
    out = []
    if m.r < 4:
        out.append("rank: need rank at least 4")
    if not is_simple(m):
        out.append("simple: matroid has loops or parallel pairs")
        return out
    if not is_b_clique(f):
        out.append("b-clique: some frame pair is not on a long line")
    for b1, b2 in itertools.combinations(sorted(f.frame), 2):
        size = len(m.closure([b1, b2]))
        if size != t + 2:
            out.append(f"line-length: cross-line of {b1},{b2} has {size} elements, expected {t + 2}")
            break
    for e in m.ground:
        counts = line_point_counts(m.contract([e]))
        if counts and counts[-1] >= t + 3:
            out.append(f"no-long-line: M/{e} has a line with {counts[-1]} points")
            break
    return out


def induced_biased_graph(f: FramedMatroid):
    """Biased graph on the frame: non-frame elements become edges, circuits that are cycles are balanced.

    Returns (graph without the frame loops, element id of each edge).
    """
    m = f.matroid
    fr = sorted(f.frame)
    vid = {b: i for i, b in enumerate(fr)}
    spans = frame_spans(m, f.frame)
    ends = []
    elems = []
    for x in m.ground:
        if x in f.frame:
            continue
        sp = spans[x]
        if sp is None or len(sp) != 2:
            raise ValueError(f"element {x} is not spanned by exactly two frame elements")
        u, v = sorted(vid[b] for b in sp)
        ends.append((u, v))
        elems.append(x)
    balanced = []
    for c in enumerate_cycles(len(fr), ends):
        cm = m.mask(elems[i] for i in c)
        if m.rank_mask(cm) == len(c) - 1 and all(m.rank_mask(cm & ~(1 << p)) == len(c) - 1 for p in bits(cm)):
            balanced.append(frozenset(c))
    return BiasedGraph(len(fr), tuple(ends), frozenset(balanced)), elems


def kahn_kung_identify(f: FramedMatroid, t: int):
    """The group Gamma of order t with M = DG(r(M), Gamma), or None when a hypothesis fails."""
    if kahn_kung_violations(f, t):
        return None
    b, _ = induced_biased_graph(f)
    try:
        grp, _ = recover_group_labeling(b, t)
    except LabelingError:
        return None
    return grp


def jointless_witness(k: int, g: FiniteGroup, pair=(0, 1)):
    """A set C of at most two elements of DG^-(k, g) on the line of a frame pair such that
    si(DG^-/C) contains DG(r(DG^-/C), g) as a restriction, or None.

    Element ids refer to DG(k, g), whose frame is 0..k-1.
    """
    f, _ = dowling(k, g)
    big = f.matroid
    frame = sorted(f.frame)
    G = big.delete(frame)
    b1, b2 = frame[pair[0]], frame[pair[1]]
    line = sorted(big.closure([b1, b2]) - set(frame))
    candidates = [()] + list(itertools.combinations(line, 2)) + [(e,) for e in line]
    for C in candidates:
        N = G.contract(C) if C else G
        s = si(N)
        rk = N.r
        if g.order >= 2 and rk < 3:
            continue
        target = dowling(rk, g)[0].matroid
        if len(s) < len(target):
            continue
        if len(s) == len(target):
            if is_isomorphic(s, target) is not None:
                return frozenset(C)
        elif len(target) <= 16 and find_embedding(s, target) is not None:
            return frozenset(C)
    return None


def jointless_recovery_check(k: int, g: FiniteGroup, pair=(0, 1)) -> bool:
    return jointless_witness(k, g, pair) is not None


def zaslavsky_circuits(b: BiasedGraph, kind: str = "frame") -> set:
    """Circuits of the frame, lift or extended lift matroid listed by cycle type.

    For the extended lift, e0 is the element id len(b.edges).
    """
    if kind not in ("frame", "lift", "lift+"):
        raise ValueError("kind must be frame, lift or lift+")
    ends = b.ends
    cycles = [frozenset(c) for c in enumerate_cycles(b.vertex_count, ends)]
    verts = {c: _verts(ends, c) for c in cycles}
    out = {c for c in cycles if c in b.balanced}
    unb = [c for c in cycles if c not in b.balanced]
    for c1, c2 in itertools.combinations(unb, 2):
        v1, v2 = verts[c1], verts[c2]
        shared = v1 & v2
        if c1 & c2:
            third = c1 ^ c2
            if third in verts and third not in b.balanced and _is_theta_union(ends, c1 | c2):
                out.add(c1 | c2)
        elif len(shared) == 1:
            out.add(c1 | c2)
        elif not shared:
            if kind == "frame":
                for p in _connecting_paths(b.vertex_count, ends, v1, v2):
                    out.add(c1 | c2 | p)
            else:
                out.add(c1 | c2)
    if kind == "lift+":
        e0 = len(ends)
        out |= {c | {e0} for c in unb}
    return out


def _verts(ends, es):
    vs = set()
    for e in es:
        vs.update(ends[e])
    return frozenset(vs)


def _is_theta_union(ends, es):
    from .glgraph import is_theta
    return is_theta(ends, list(es))


def _connecting_paths(n, ends, v1, v2):
    """Edge sets of paths from v1 to v2 meeting v1 and v2 only at their ends."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(n)}
    for e, (u, w) in enumerate(ends):
        if u != w:
            adj[u].append((e, w))
            adj[w].append((e, u))
    blocked = v1 | v2
    out = []
    for s in v1:
        stack = [(s, frozenset(), {s})]
        while stack:
            v, path, seen = stack.pop()
            for e, w in adj[v]:
                if w in seen:
                    continue
                if w in v2:
                    out.append(path | {e})
                elif w not in blocked:
                    stack.append((w, path | {e}, seen | {w}))
    return out


def independent_by_circuits(circuit_list, edge_set) -> bool:
    s = frozenset(edge_set)
    return not any(c <= s for c in circuit_list)


def cyclic_dowling_matrix(r: int, t_minus_1: int):
    """Columns b_i, then b_i - z^k b_j for i < j and 0 <= k < t-1, with z = 1 or -1."""
    from .modular import IntegerMatrix
    if t_minus_1 not in (1, 2):
        raise ValueError("only t-1 in {1, 2} has real roots of unity; use dowling() otherwise")
    if r < 1:
        raise ValueError("r must be positive")
    cols = []
    for i in range(r):
        cols.append([1 if x == i else 0 for x in range(r)])
    zetas = [1, -1][:t_minus_1]
    for i in range(r):
        for j in range(i + 1, r):
            for z in zetas:
                col = [0] * r
                col[i] = 1
                col[j] = -z
                cols.append(col)
    return IntegerMatrix([[c[x] for c in cols] for x in range(r)])


def cyclic_dowling_label(r: int, t_minus_1: int) -> GeometryLabel:
    return GeometryLabel("cyclicDowlingMatrix", (("r", r), ("t", t_minus_1 + 1)))


def circuit_sets(m: Matroid):
    return {m.elements(c) for c in circuit_masks(m)}
