"""Frame and lift rank backends for group-labeled and biased graphs."""
from __future__ import annotations

from ..glgraph import BiasedGraph, GroupLabeledGraph
from .core import Matroid, bits


class _GraphAnalysis:
    """Components of an edge subset with balance data."""

    __slots__ = ("comp", "balanced", "size", "pot", "parent", "pedge", "depth")


class _GraphBackend(Matroid):
    def __init__(self, graph, extended: bool = False):
        if not isinstance(graph, (GroupLabeledGraph, BiasedGraph)):
            raise TypeError("expected a GroupLabeledGraph or BiasedGraph")
        self.graph = graph
        self.ends = graph.ends
        self.labeled = isinstance(graph, GroupLabeledGraph)
        m = len(self.ends)
        self.extended = extended
        self.e0 = m if extended else None
        super().__init__(range(m + 1 if extended else m))
        if self.labeled:
            self._labels = [lab for _, _, lab in graph.edges]
            self._grp = graph.group
        else:
            self._bal = graph._balanced_masks
        self.edge_mask = (1 << m) - 1

    def _analyze(self, mask: int) -> _GraphAnalysis:
        ends = self.ends
        adj: dict[int, list[int]] = {}
        loops = []
        for e in bits(mask & self.edge_mask):
            t, h = ends[e]
            if t == h:
                adj.setdefault(t, [])
                loops.append(e)
            else:
                adj.setdefault(t, []).append(e)
                adj.setdefault(h, []).append(e)
        a = _GraphAnalysis()
        comp: dict[int, int] = {}
        balanced: list[bool] = []
        size: list[int] = []
        labeled = self.labeled
        if labeled:
            lab, grp = self._labels, self._grp
            table, inv = grp.table, grp.inverse
            pot: dict[int, int] = {}
        else:
            parent: dict[int, int] = {}
            pedge: dict[int, int] = {}
            depth: dict[int, int] = {}
            nontree = []
        for root in adj:
            if root in comp:
                continue
            cid = len(size)
            comp[root] = cid
            ok = True
            count = 1
            if labeled:
                pot[root] = 0
            else:
                parent[root] = -1
                depth[root] = 0
            queue = [root]
            for u in queue:
                for e in adj[u]:
                    t, h = ends[e]
                    v = h if u == t else t
                    if v not in comp:
                        comp[v] = cid
                        count += 1
                        queue.append(v)
                        if labeled:
                            pot[v] = table[pot[u]][lab[e]] if u == t else table[pot[u]][inv[lab[e]]]
                        else:
                            parent[v] = u
                            pedge[v] = e
                            depth[v] = depth[u] + 1
                    elif labeled:
                        if ok and pot[h] != table[pot[t]][lab[e]]:
                            ok = False
                    elif pedge.get(v) != e and pedge.get(u) != e:
                        nontree.append(e)
            balanced.append(ok)
            size.append(count)
        a.comp, a.balanced, a.size = comp, balanced, size
        if labeled:
            a.pot = pot
            for e in loops:
                if lab[e] != 0:
                    balanced[comp[ends[e][0]]] = False
        else:
            a.parent, a.pedge, a.depth = parent, pedge, depth
            for e in set(nontree):
                c = comp[ends[e][0]]
                if balanced[c] and not self._fundamental_balanced(a, e):
                    balanced[c] = False
            for e in loops:
                if (1 << e) not in self._bal:
                    balanced[comp[ends[e][0]]] = False
        return a

    def _tree_path(self, a: _GraphAnalysis, u: int, v: int) -> int:
        path = 0
        while u != v:
            if a.depth[u] >= a.depth[v]:
                path |= 1 << a.pedge[u]
                u = a.parent[u]
            else:
                path |= 1 << a.pedge[v]
                v = a.parent[v]
        return path

    def _fundamental_balanced(self, a: _GraphAnalysis, e: int) -> bool:
        t, h = self.ends[e]
        if t == h:
            return (1 << e) in self._bal
        return (self._tree_path(a, t, h) | 1 << e) in self._bal

    def _consistent(self, a: _GraphAnalysis, e: int) -> bool:
        """Adding e inside a balanced component keeps it balanced."""
        t, h = self.ends[e]
        if self.labeled:
            if t == h:
                return self._labels[e] == 0
            return a.pot[h] == self._grp.table[a.pot[t]][self._labels[e]]
        return self._fundamental_balanced(a, e)

    def _loop_balanced(self, e: int) -> bool:
        if self.labeled:
            return self._labels[e] == 0
        return (1 << e) in self._bal


class FrameMatroid(_GraphBackend):
    backend = "frame"

    def __init__(self, graph):
        super().__init__(graph, extended=False)

    def _rank(self, mask: int) -> int:
        a = self._analyze(mask)
        return sum(s - 1 if b else s for s, b in zip(a.size, a.balanced))

    def closure_mask(self, mask: int) -> int:
        a = self._analyze(mask)
        out = mask
        comp, bal = a.comp, a.balanced
        for e in bits(self.full & ~mask):
            t, h = self.ends[e]
            ct, ch = comp.get(t), comp.get(h)
            if t == h:
                if self._loop_balanced(e) or (ct is not None and not bal[ct]):
                    out |= 1 << e
            elif ct is None or ch is None:
                continue
            elif ct == ch:
                if not bal[ct] or self._consistent(a, e):
                    out |= 1 << e
            elif not bal[ct] and not bal[ch]:
                out |= 1 << e
        return out


class LiftMatroid(_GraphBackend):
    backend = "lift"

    def __init__(self, graph, extended: bool = False):
        super().__init__(graph, extended=extended)
        if extended:
            self.backend = "lift+"

    def _rank(self, mask: int) -> int:
        a = self._analyze(mask)
        r = sum(a.size) - len(a.size)
        if not all(a.balanced) or (self.extended and mask >> self.e0 & 1):
            r += 1
        return r

    def closure_mask(self, mask: int) -> int:
        a = self._analyze(mask)
        unb = not all(a.balanced) or (self.extended and bool(mask >> self.e0 & 1))
        out = mask
        comp = a.comp
        for e in bits(self.full & ~mask):
            if e == self.e0:
                if unb:
                    out |= 1 << e
                continue
            t, h = self.ends[e]
            if t == h:
                if self._loop_balanced(e) or unb:
                    out |= 1 << e
                continue
            ct, ch = comp.get(t), comp.get(h)
            if ct is not None and ct == ch and (unb or self._consistent(a, e)):
                out |= 1 << e
        return out
