"""Group-labeled graphs, biased graphs, walk values and group recovery."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .groups import FiniteGroup, format_group, parse_group


class EnumerationBudgetError(RuntimeError):
    pass


class LabelingError(ValueError):
    """Raised when a biased graph fails the hypotheses for group recovery."""


DEFAULT_CYCLE_BUDGET = 200_000


@dataclass(frozen=True)
class GroupLabeledGraph:
    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]
    group: FiniteGroup

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        for t, h, lab in self.edges:
            if not (0 <= t < self.vertex_count and 0 <= h < self.vertex_count):
                raise ValueError(f"edge ({t},{h}) has an endpoint outside the vertex set")
            if not 0 <= lab < self.group.order:
                raise ValueError(f"label {lab} is not a group element")

    @property
    def ends(self):
        return tuple((t, h) for t, h, _ in self.edges)


@dataclass(frozen=True)
class BiasedGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    balanced: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(t), int(h)) for t, h in self.edges))
        object.__setattr__(self, "balanced", frozenset(frozenset(c) for c in self.balanced))
        for t, h in self.edges:
            if not (0 <= t < self.vertex_count and 0 <= h < self.vertex_count):
                raise ValueError(f"edge ({t},{h}) has an endpoint outside the vertex set")
        for c in self.balanced:
            if not is_cycle(self.edges, c):
                raise ValueError(f"balanced member {sorted(c)} is not a cycle")
        object.__setattr__(self, "_balanced_masks",
                           frozenset(sum(1 << e for e in c) for c in self.balanced))

    @property
    def ends(self):
        return self.edges

    def is_balanced(self, cycle) -> bool:
        if isinstance(cycle, int):
            return cycle in self._balanced_masks
        return frozenset(cycle) in self.balanced


def is_cycle(ends, edge_set) -> bool:
    """True if the edges form a single cycle (loops and digons included)."""
    es = list(edge_set)
    if not es:
        return False
    deg: dict[int, int] = {}
    for e in es:
        t, h = ends[e]
        deg[t] = deg.get(t, 0) + 1
        deg[h] = deg.get(h, 0) + 1
    if any(d != 2 for d in deg.values()):
        return False
    return len(_components(ends, es)) == 1


def _components(ends, edge_ids):
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edge_ids:
        t, h = ends[e]
        parent.setdefault(t, t)
        parent.setdefault(h, h)
        a, b = find(t), find(h)
        if a != b:
            parent[a] = b
    comps: dict[int, set[int]] = {}
    for v in parent:
        comps.setdefault(find(v), set()).add(v)
    return list(comps.values())


def walk_value(g: GroupLabeledGraph, walk) -> int:
    """Product of labels along an alternating vertex/edge sequence.

    Edge slots may be an edge id or an (edge id, +1/-1) pair; the pair form
    fixes the direction of a loop, which is otherwise taken as forward.
    """
    walk = list(walk)
    if len(walk) <= 1:
        return 0
    if len(walk) % 2 == 0:
        raise ValueError("walk must alternate vertices and edges, starting and ending at a vertex")
    grp = g.group
    value = 0
    for i in range(1, len(walk), 2):
        u, item, v = walk[i - 1], walk[i], walk[i + 1]
        if isinstance(item, tuple):
            e, sign = item
        else:
            e, sign = item, None
        if not 0 <= e < len(g.edges):
            raise ValueError(f"unknown edge {e}")
        t, h, lab = g.edges[e]
        if sign is None:
            if (t, h) == (u, v):
                sign = 1
            elif (h, t) == (u, v):
                sign = -1
            else:
                raise ValueError(f"edge {e} does not join {u} and {v}")
        elif (sign == 1 and (t, h) != (u, v)) or (sign == -1 and (h, t) != (u, v)):
            raise ValueError(f"edge {e} cannot be traversed from {u} to {v} in direction {sign}")
        value = grp.op(value, lab if sign == 1 else grp.inv(lab))
    return value


def cycle_walk(ends, cycle):
    """A simple closed walk around the cycle, as a vertex/(edge, sign) sequence."""
    es = sorted(cycle)
    first = es[0]
    t, h = ends[first]
    walk = [t, (first, 1), h]
    used = {first}
    cur = h
    while len(used) < len(es):
        for e in es:
            if e in used:
                continue
            a, b = ends[e]
            if a == cur:
                walk += [(e, 1), b]
                cur = b
                break
            if b == cur:
                walk += [(e, -1), a]
                cur = a
                break
        else:
            raise ValueError("edge set is not a cycle")
        used.add(e)
    return walk


def enumerate_cycles(vertex_count: int, ends, budget: int = DEFAULT_CYCLE_BUDGET):
    """All cycles of a multigraph as sorted edge-id tuples."""
    out = []
    between: dict[tuple[int, int], list[int]] = {}
    for e, (t, h) in enumerate(ends):
        if t == h:
            out.append((e,))
        else:
            between.setdefault((min(t, h), max(t, h)), []).append(e)
    for es in between.values():
        for pair in itertools.combinations(es, 2):
            out.append(pair)
    adj: dict[int, set[int]] = {v: set() for v in range(vertex_count)}
    for a, b in between:
        adj[a].add(b)
        adj[b].add(a)
    if len(out) > budget:
        raise EnumerationBudgetError(f"more than {budget} cycles")

    def pair_edges(a, b):
        return between[(min(a, b), max(a, b))]

    # vertex cycles of length >= 3 with smallest vertex s as the start;
    # the orientation is fixed by requiring path[1] < path[-1]
    for s in range(vertex_count):
        stack = [(s, [s])]
        while stack:
            v, path = stack.pop()
            for w in adj[v]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    choices = [pair_edges(path[i], path[(i + 1) % len(path)]) for i in range(len(path))]
                    for combo in itertools.product(*choices):
                        out.append(tuple(sorted(combo)))
                        if len(out) > budget:
                            raise EnumerationBudgetError(f"more than {budget} cycles")
                elif w > s and w not in path:
                    stack.append((w, path + [w]))
    return out


def balanced_cycles(g: GroupLabeledGraph, budget: int = DEFAULT_CYCLE_BUDGET) -> BiasedGraph:
    ends = g.ends
    bal = []
    for c in enumerate_cycles(g.vertex_count, ends, budget):
        if walk_value(g, cycle_walk(ends, c)) == 0:
            bal.append(frozenset(c))
    return BiasedGraph(g.vertex_count, ends, frozenset(bal))


def _vertices(ends, edge_ids):
    vs = set()
    for e in edge_ids:
        vs.update(ends[e])
    return vs


def is_theta(ends, edge_ids) -> bool:
    """Two vertices of degree three joined by three internally disjoint paths."""
    es = list(edge_ids)
    if any(ends[e][0] == ends[e][1] for e in es):
        return False
    deg: dict[int, int] = {}
    for e in es:
        for v in ends[e]:
            deg[v] = deg.get(v, 0) + 1
    if sorted(d for d in deg.values() if d != 2) != [3, 3]:
        return False
    if len(_components(ends, es)) != 1 or len(es) != len(deg) + 1:
        return False
    # a loose handcuff passes the degree test but has a bridge
    return all(len(_components(ends, es[:i] + es[i + 1:])) == 1 and
               _vertices(ends, es[:i] + es[i + 1:]) == set(deg) for i in range(len(es)))


def theta_property_holds(b: BiasedGraph, budget: int = 5_000_000) -> bool:
    """No theta subgraph has exactly two balanced cycles.

    Every theta is the union of two of its cycles sharing an edge, so it is
    enough to look at pairs of balanced cycles whose union is a theta and ask
    whether the third cycle (their symmetric difference) is balanced too.
    """
    ends = b.ends
    masks = sorted(b._balanced_masks)
    by_edge: dict[int, list[int]] = {}
    for m in masks:
        x = m
        while x:
            low = x & -x
            by_edge.setdefault(low.bit_length() - 1, []).append(m)
            x ^= low
    work = 0
    for e, group in by_edge.items():
        bit = 1 << e
        for i, c1 in enumerate(group):
            for c2 in group[i + 1:]:
                common = c1 & c2
                if common & -common != bit:
                    continue  # handled under the lowest shared edge
                work += 1
                if work > budget:
                    raise EnumerationBudgetError("theta check exceeded its budget")
                union = c1 | c2
                ids = _bits(union)
                if not is_theta(ends, ids):
                    continue
                if (c1 ^ c2) not in b._balanced_masks:
                    return False
    return True


def _bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def recover_group_labeling(b: BiasedGraph, t: int):
    """Rebuild a group of order t and a labeling whose balanced cycles are b's.

    Vertices are taken in id order b_1..b_m and element 0 plays the identity.
    Edges are re-oriented from the smaller to the larger vertex id.
    """
    m = b.vertex_count
    ends = b.ends
    if m < 4:
        raise LabelingError("need at least 4 vertices")
    if t < 1:
        raise LabelingError("t must be positive")
    classes: dict[tuple[int, int], list[int]] = {(i, j): [] for i in range(m) for j in range(i + 1, m)}
    for e, (u, v) in enumerate(ends):
        if u == v:
            raise LabelingError("loops are not part of the labeling; remove them first")
        classes[(min(u, v), max(u, v))].append(e)
    bad = [p for p, es in classes.items() if len(es) != t]
    if bad:
        raise LabelingError(f"parallel-count: pair {bad[0]} has {len(classes[bad[0]])} edges, expected {t}")
    small = [c for c in b.balanced if len(c) < 3]
    if small:
        raise LabelingError(f"small-balanced-cycle: {sorted(min(small, key=sorted))} is balanced")

    def L(i, j):
        return classes[(min(i, j), max(i, j))]

    # third edge of a balanced triangle, keyed by the other two
    tri: dict[tuple[int, int], list[int]] = {}
    for c in b.balanced:
        if len(c) == 3 and len(_vertices(ends, c)) == 3:
            x, y, z = sorted(c)
            for p, q, r in ((x, y, z), (x, z, y), (y, z, x)):
                tri.setdefault((p, q), []).append(r)
                tri.setdefault((q, p), []).append(r)

    def third(a, bb, i, j):
        """Edges c in L(i,j) with {a, bb, c} balanced."""
        return [c for c in tri.get((a, bb), ()) if c in L(i, j)]

    # condition (*)
    for v1 in range(m):
        for v2 in range(m):
            for v3 in range(m):
                if len({v1, v2, v3}) < 3 or v2 > v3:
                    continue
                for a in L(v1, v2):
                    for bb in L(v1, v3):
                        if not third(a, bb, v2, v3):
                            raise LabelingError(f"(*): no balanced triangle through edges {a},{bb}")

    f: dict[int, int] = {}
    # the chosen identity edge of each L_1j
    for j in range(1, m):
        f[L(0, j)[0]] = 0
    eps = {j: L(0, j)[0] for j in range(1, m)}
    nxt = 1
    for e in L(0, 1):
        if e not in f:
            f[e] = nxt
            nxt += 1
    alpha12 = {f[e]: e for e in L(0, 1)}

    def unique_third(a, bb, i, j):
        cs = third(a, bb, i, j)
        if len(cs) != 1:
            raise LabelingError(f"(*): triangle through edges {a},{bb} is not unique")
        return cs[0]

    # step (1): identity edges of L_jk
    for j in range(1, m):
        for k in range(j + 1, m):
            f[unique_third(eps[j], eps[k], j, k)] = 0
    eps2 = {k: next(e for e in L(1, k) if f.get(e) == 0) for k in range(2, m)}
    # step (2): L_1k labeled through alpha_12 and the identity edge of L_2k
    alpha1 = {1: dict(alpha12)}
    for k in range(2, m):
        alpha1[k] = {}
        for al, a in alpha12.items():
            c = unique_third(a, eps2[k], 0, k)
            if c in f and f[c] != al:
                raise LabelingError("labeling rules conflict on L_1k")
            f[c] = al
            alpha1[k][al] = c
    # step (3): L_jk labeled through the identity edge of L_1j and alpha_1k
    for j in range(1, m):
        for k in range(j + 1, m):
            for al, a in alpha1[k].items():
                c = unique_third(eps[j], a, j, k)
                if c in f and f[c] != al:
                    raise LabelingError("labeling rules conflict on L_jk")
                f[c] = al
    for (i, j), es in classes.items():
        if sorted(f[e] for e in es) != list(range(t)):
            raise LabelingError(f"labels on pair {(i, j)} are not a bijection onto the group")

    # a o b = c  iff  {a_12, b_23, c_13} is balanced
    lab01 = {f[e]: e for e in L(0, 1)}
    lab12 = {f[e]: e for e in L(1, 2)}
    lab02 = {f[e]: e for e in L(0, 2)}
    table = [[0] * t for _ in range(t)]
    for x in range(t):
        for y in range(t):
            cs = third(lab01[x], lab12[y], 0, 2)
            if len(cs) != 1:
                raise LabelingError("triangle operation is not well defined")
            table[x][y] = f[cs[0]]
    r = range(t)
    if any(table[table[x][y]][z] != table[x][table[y][z]] for x in r for y in r for z in r):
        raise LabelingError("associativity failure in the recovered operation")
    try:
        grp = FiniteGroup(tuple(tuple(row) for row in table), f"recovered order {t}")
    except ValueError as exc:
        raise LabelingError(f"recovered operation is not a group: {exc}") from None
    labeled_edges = [(min(u, v), max(u, v), f[e]) for e, (u, v) in enumerate(ends)]
    g = GroupLabeledGraph(m, tuple(labeled_edges), grp)
    if balanced_cycles(g).balanced != b.balanced:
        raise LabelingError("recovered labeling does not reproduce the balanced family")
    return grp, g


# text formats

def format_glgraph(g: GroupLabeledGraph) -> str:
    lines = [f"glgraph {g.vertex_count} {len(g.edges)}"]
    lines += [f"{t} {h} {lab}" for t, h, lab in g.edges]
    return "\n".join(lines) + "\n" + format_group(g.group)


def parse_glgraph(text: str) -> GroupLabeledGraph:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty glgraph text")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "glgraph":
        raise ValueError("expected 'glgraph <n> <m>' header")
    n, m = int(head[1]), int(head[2])
    edges = []
    for i in range(m):
        parts = lines[1 + i].split()
        if len(parts) != 3:
            raise ValueError(f"edge line {i + 1}: expected 'tail head label'")
        edges.append(tuple(int(x) for x in parts))
    grp = parse_group("\n".join(lines[1 + m:]))
    return GroupLabeledGraph(n, tuple(edges), grp)


def format_biased(b: BiasedGraph) -> str:
    cycles = sorted(tuple(sorted(c)) for c in b.balanced)
    lines = [f"biased {b.vertex_count} {len(b.edges)} {len(cycles)}"]
    lines += [f"{t} {h}" for t, h in b.edges]
    lines += [" ".join(map(str, c)) for c in cycles]
    return "\n".join(lines) + "\n"


def parse_biased(text: str) -> BiasedGraph:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    head = lines[0].split() if lines else []
    if len(head) != 4 or head[0] != "biased":
        raise ValueError("expected 'biased <n> <m> <k>' header")
    n, m, k = (int(x) for x in head[1:])
    edges = [tuple(int(x) for x in lines[1 + i].split()) for i in range(m)]
    cycles = [frozenset(int(x) for x in lines[1 + m + i].split()) for i in range(k)]
    if len(lines) != 1 + m + k:
        raise ValueError("trailing lines after biased graph block")
    return BiasedGraph(n, tuple(edges), frozenset(cycles))
