"""Standard matroids used throughout the toolkit and its tests."""
from __future__ import annotations

import itertools
import random

from ..fields import field
from .core import CircuitMatroid, LinearMatroid, Matroid, _Remap, uniform


def free_matroid(n: int) -> CircuitMatroid:
    return CircuitMatroid(range(n), [])


def projective_geometry(dim: int, q: int) -> LinearMatroid:
    """PG(dim, q) as the column matroid of all projective points of GF(q)^(dim+1)."""
    pts = field(q).projective_points(dim + 1)
    return LinearMatroid(pts, q)


def fano() -> LinearMatroid:
    return projective_geometry(2, 2)


def graphic(vertex_count: int, edges) -> LinearMatroid:
    cols = []
    for u, v in edges:
        col = [0] * vertex_count
        if u != v:
            col[u] = col[v] = 1
        cols.append(col)
    return LinearMatroid(cols, 2, rows=vertex_count)


def complete_graphic(n: int) -> LinearMatroid:
    """M(K_n), edges in lexicographic order."""
    return graphic(n, list(itertools.combinations(range(n), 2)))


def free_spike(r: int) -> CircuitMatroid:
    """Rank-r free spike with tip 0 and legs {0, 2i+1, 2i+2}."""
    if r < 3:
        raise ValueError("spikes need rank at least 3")
    n = 2 * r + 1
    legs = [{0, 2 * i + 1, 2 * i + 2} for i in range(r)]
    pairs = [legs[i] ^ {0} | legs[j] ^ {0} for i in range(r) for j in range(i + 1, r)]
    small = legs + pairs
    out = list(small)
    for c in itertools.combinations(range(n), r + 1):
        s = set(c)
        if not any(x <= s for x in small):
            out.append(s)
    return CircuitMatroid(range(n), out)


class DirectSum(Matroid):
    backend = "sum"

    def __init__(self, m1: Matroid, m2: Matroid):
        shift = (max(m1.ground) + 1) if m1.n else 0
        super().__init__(list(m1.ground) + [e + shift for e in m2.ground])
        self.parts = (m1, m2)
        self.shift = shift
        self._n1 = m1.n

    def _rank(self, mask):
        m1, m2 = self.parts
        return m1.rank_mask(mask & m1.full) + m2.rank_mask(mask >> self._n1)


class Relabeled(Matroid):
    backend = "relabeled"

    def __init__(self, m: Matroid, mapping: dict):
        new = [mapping[e] for e in m.ground]
        super().__init__(new)
        self.base = m
        self._map = _Remap([m._pos[e] for e in _inverse(mapping, self.ground)])

    def _rank(self, mask):
        return self.base.rank_mask(self._map(mask))


def _inverse(mapping, ground):
    inv = {v: k for k, v in mapping.items()}
    return [inv[g] for g in ground]


def random_linear(rng: random.Random, n: int, rank: int, q: int) -> LinearMatroid:
    cols = [[rng.randrange(q) for _ in range(rank)] for _ in range(n)]
    return LinearMatroid(cols, q, rows=rank)


__all__ = ["free_matroid", "projective_geometry", "fano", "graphic", "complete_graphic",
           "free_spike", "DirectSum", "Relabeled", "random_linear", "uniform"]
