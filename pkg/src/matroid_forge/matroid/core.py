"""Matroid kernel: rank oracles over bitmask subsets, minors, flats and circuits."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..fields import GF, field

MAX_GROUND = 128


class BudgetError(RuntimeError):
    """An exhaustive search ran past its configured budget."""


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class _Remap:
    """Maps masks over one position space into another via byte tables."""

    def __init__(self, targets):
        self.tables = []
        for start in range(0, len(targets), 8):
            chunk = targets[start:start + 8]
            table = []
            for v in range(1 << len(chunk)):
                out = 0
                for i, t in enumerate(chunk):
                    if v >> i & 1 and t is not None:
                        out |= 1 << t
                table.append(out)
            self.tables.append(table)

    def __call__(self, mask: int) -> int:
        out = 0
        i = 0
        while mask:
            out |= self.tables[i][mask & 0xFF]
            mask >>= 8
            i += 1
        return out


@dataclass(frozen=True)
class MinorSpec:
    contract: frozenset = frozenset()
    delete: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "contract", frozenset(self.contract))
        object.__setattr__(self, "delete", frozenset(self.delete))
        if self.contract & self.delete:
            raise ValueError("contract and delete sets overlap")


class Matroid:
    backend = "abstract"

    def __init__(self, ground):
        ground = tuple(sorted(ground))
        if len(set(ground)) != len(ground):
            raise ValueError("duplicate element ids")
        if len(ground) > MAX_GROUND:
            raise ValueError(f"ground sets are capped at {MAX_GROUND} elements")
        self.ground = ground
        self._pos = {e: i for i, e in enumerate(ground)}
        self.n = len(ground)
        self.full = (1 << self.n) - 1
        self._rank_cache: dict[int, int] = {}
        self._flat_levels: list[list[int]] | None = None
        self._circuits = None

    # subsets

    def mask(self, xs) -> int:
        if xs is None:
            return self.full
        m = 0
        pos = self._pos
        for e in xs:
            try:
                m |= 1 << pos[e]
            except KeyError:
                raise ValueError(f"element {e!r} is not in the ground set") from None
        return m

    def elements(self, mask: int) -> frozenset:
        g = self.ground
        return frozenset(g[i] for i in bits(mask))

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"<{type(self).__name__} n={self.n} rank={self.rank()}>"

    # rank

    def _rank(self, mask: int) -> int:
        raise NotImplementedError

    def rank_mask(self, mask: int) -> int:
        r = self._rank_cache.get(mask)
        if r is None:
            r = self._rank(mask)
            if len(self._rank_cache) > 2_000_000:
                self._rank_cache.clear()
            self._rank_cache[mask] = r
        return r

    def rank(self, xs=None) -> int:
        return self.rank_mask(self.mask(xs))

    @property
    def r(self) -> int:
        return self.rank_mask(self.full)

    def is_independent(self, xs) -> bool:
        m = self.mask(xs)
        return self.rank_mask(m) == popcount(m)

    def indep_mask(self, mask: int) -> bool:
        return self.rank_mask(mask) == popcount(mask)

    def closure_mask(self, mask: int) -> int:
        r0 = self.rank_mask(mask)
        out = mask
        for i in bits(self.full & ~mask):
            if self.rank_mask(mask | 1 << i) == r0:
                out |= 1 << i
        return out

    def closure(self, xs) -> frozenset:
        return self.elements(self.closure_mask(self.mask(xs)))

    def basis_mask(self, mask: int | None = None) -> int:
        """Greedy basis of the subset, scanning positions in order."""
        if mask is None:
            mask = self.full
        b = 0
        for i in bits(mask):
            if self.rank_mask(b | 1 << i) > popcount(b):
                b |= 1 << i
        return b

    # minors

    def minor(self, spec: MinorSpec | None = None, contract=(), delete=()) -> "Matroid":
        if spec is None:
            spec = MinorSpec(frozenset(contract), frozenset(delete))
        c = self.mask(spec.contract)
        d = self.mask(spec.delete)
        return MinorMatroid(self, c, self.full & ~c & ~d)

    def contract(self, xs) -> "Matroid":
        return self.minor(contract=xs)

    def delete(self, xs) -> "Matroid":
        return self.minor(delete=xs)

    def restrict(self, xs) -> "Matroid":
        keep = self.mask(xs)
        return MinorMatroid(self, 0, keep)

    def dual_rank_mask(self, mask: int) -> int:
        return popcount(mask) - self.r + self.rank_mask(self.full & ~mask)


class MinorMatroid(Matroid):
    """M/C restricted to a subset; always stored relative to a non-minor root."""

    backend = "minor"

    def __init__(self, base: Matroid, contract_mask: int, keep_mask: int):
        if isinstance(base, MinorMatroid):
            contract_mask = base.contract_base | base._up(contract_mask)
            keep_mask = base._up(keep_mask)
            base = base.base
        if keep_mask & contract_mask:
            raise ValueError("kept and contracted elements overlap")
        self.base = base
        self.contract_base = contract_mask
        keep = list(bits(keep_mask))
        super().__init__(base.ground[i] for i in keep)
        # ground is sorted by id, base positions are sorted by id too
        self._keep = keep
        self._up = _Remap(keep)
        down = [None] * base.n
        for i, p in enumerate(keep):
            down[p] = i
        self._down = _Remap(down)
        self._rc = base.rank_mask(contract_mask)

    def _rank(self, mask: int) -> int:
        return self.base.rank_mask(self._up(mask) | self.contract_base) - self._rc

    def closure_mask(self, mask: int) -> int:
        cl = self.base.closure_mask(self._up(mask) | self.contract_base)
        return self._down(cl)

    @property
    def contracted(self) -> frozenset:
        return self.base.elements(self.contract_base)


class CircuitMatroid(Matroid):
    backend = "circuits"

    def __init__(self, ground, circuits, check: bool = True):
        super().__init__(ground)
        cmasks = sorted({self.mask(c) for c in circuits}, key=lambda m: (popcount(m), m))
        if any(c == 0 for c in cmasks):
            raise ValueError("the empty set is not a circuit")
        if check:
            for i, a in enumerate(cmasks):
                for b in cmasks[i + 1:]:
                    if a & b == a:
                        raise ValueError("a circuit contains another circuit")
        self.circuit_masks = tuple(cmasks)
        self._by_elem: list[list[int]] = [[] for _ in range(self.n)]
        for c in cmasks:
            for i in bits(c):
                self._by_elem[i].append(c)

    def _rank(self, mask: int) -> int:
        indep = 0
        r = 0
        for i in bits(mask):
            cand = indep | 1 << i
            if all(c & ~cand for c in self._by_elem[i]):
                indep = cand
                r += 1
        return r


class BasisMatroid(Matroid):
    backend = "bases"

    def __init__(self, ground, bases):
        super().__init__(ground)
        bm = sorted({self.mask(b) for b in bases})
        if not bm:
            raise ValueError("a matroid needs at least one basis")
        if len({popcount(b) for b in bm}) != 1:
            raise ValueError("bases have different sizes")
        self.basis_masks = tuple(bm)

    def _rank(self, mask: int) -> int:
        return max(popcount(mask & b) for b in self.basis_masks)


def _int_rank_basis(vectors):
    """Fraction-free row echelon form over Q; returns (pivot, row) pairs."""
    basis = []
    for v in vectors:
        w = _int_reduce(basis, v)
        piv = next((i for i, x in enumerate(w) if x), None)
        if piv is not None:
            basis.append((piv, w))
    return basis


def _int_reduce(basis, v):
    w = list(v)
    for piv, row in basis:
        c = w[piv]
        if c:
            p = row[piv]
            w = [p * x - c * y for x, y in zip(w, row)]
            g = 0
            for x in w:
                g = gcd(g, x)
            if g > 1:
                w = [x // g for x in w]
    return w


class LinearMatroid(Matroid):
    """Column matroid of a matrix over GF(q), or over Q when q is 0."""

    backend = "linear"

    def __init__(self, columns, q: int = 0, ground=None, rows: int | None = None):
        columns = [tuple(int(x) for x in c) for c in columns]
        if ground is None:
            ground = range(len(columns))
        ground = list(ground)
        if len(ground) != len(columns):
            raise ValueError("one column per ground element")
        dims = {len(c) for c in columns}
        if rows is None:
            rows = dims.pop() if dims else 0
            if dims:
                raise ValueError("columns have different lengths")
        elif dims and dims != {rows}:
            raise ValueError("columns have different lengths")
        order = sorted(range(len(ground)), key=lambda i: ground[i])
        super().__init__(ground)
        self.q = q
        self.rows = rows
        self.columns = tuple(columns[i] for i in order)
        if q:
            self.field: GF | None = field(q)
            if any(not 0 <= x < q for c in self.columns for x in c):
                raise ValueError(f"entries must be field elements 0..{q - 1}")
        else:
            self.field = None
        if q == 2:
            self._bitcols = [sum(x << k for k, x in enumerate(c)) for c in self.columns]

    def matrix(self):
        """Row-major matrix with columns in ground order."""
        return [[c[i] for c in self.columns] for i in range(self.rows)]

    def _span(self, mask):
        cols = self.columns
        if self.q == 2:
            basis = {}
            for i in bits(mask):
                v = self._bitcols[i]
                while v:
                    top = v.bit_length() - 1
                    if top in basis:
                        v ^= basis[top]
                    else:
                        basis[top] = v
                        break
            return basis
        if self.field is not None:
            return self.field.echelon(cols[i] for i in bits(mask))
        return _int_rank_basis(cols[i] for i in bits(mask))

    def _in_span(self, basis, i) -> bool:
        if self.q == 2:
            v = self._bitcols[i]
            while v:
                top = v.bit_length() - 1
                if top not in basis:
                    return False
                v ^= basis[top]
            return True
        if self.field is not None:
            return not any(self.field.reduce(basis, self.columns[i]))
        return not any(_int_reduce(basis, self.columns[i]))

    def _rank(self, mask: int) -> int:
        return len(self._span(mask))

    def closure_mask(self, mask: int) -> int:
        basis = self._span(mask)
        out = mask
        for i in bits(self.full & ~mask):
            if self._in_span(basis, i):
                out |= 1 << i
        return out


# derived structure

def loops(m: Matroid) -> frozenset:
    return m.elements(m.closure_mask(0))


def coloops(m: Matroid) -> frozenset:
    r = m.r
    return frozenset(m.ground[i] for i in range(m.n) if m.rank_mask(m.full & ~(1 << i)) < r)


def corank(m: Matroid) -> int:
    return m.n - m.r


def parallel_classes(m: Matroid) -> list[int]:
    """Masks of the parallel classes of non-loops, ordered by smallest member."""
    lp = m.closure_mask(0)
    seen = lp
    out = []
    for i in range(m.n):
        if seen >> i & 1:
            continue
        cl = m.closure_mask(1 << i) & ~lp
        out.append(cl)
        seen |= cl
    return out


def simplify(m: Matroid):
    """(si(M), {kept element: its parallel class}) keeping the smallest id per class."""
    classes = parallel_classes(m)
    keep = 0
    mapping = {}
    for c in classes:
        low = c & -c
        keep |= low
        mapping[m.ground[low.bit_length() - 1]] = m.elements(c)
    return MinorMatroid(m, 0, keep), mapping


def si(m: Matroid) -> Matroid:
    return simplify(m)[0]


def epsilon(m: Matroid) -> int:
    return len(parallel_classes(m))


def is_simple(m: Matroid) -> bool:
    return m.closure_mask(0) == 0 and all(m.closure_mask(1 << i) == 1 << i for i in range(m.n))


def circuit_masks(m: Matroid, max_size: int | None = None, budget: int = 2_000_000):
    """Circuits as masks. Each circuit C is found once, from the independent set C - max(C)."""
    if isinstance(m, CircuitMatroid):
        cs = m.circuit_masks
        return [c for c in cs if max_size is None or popcount(c) <= max_size]
    if max_size is None and m._circuits is not None:
        return m._circuits
    out = []
    work = 0
    limit = m.r + 1 if max_size is None else min(max_size, m.r + 1)
    stack = [(0, 0, -1)]  # independent mask, size, largest position
    while stack:
        ind, size, top = stack.pop()
        for e in range(top + 1, m.n):
            work += 1
            if work > budget:
                raise BudgetError("circuit enumeration exceeded its budget")
            cand = ind | 1 << e
            if m.rank_mask(cand) == size + 1:
                if size + 1 < limit:
                    stack.append((cand, size + 1, e))
            elif all(m.rank_mask(cand & ~(1 << f)) == size for f in bits(ind)):
                out.append(cand)
    out.sort(key=lambda c: (popcount(c), c))
    if max_size is None:
        m._circuits = out
    return out


def circuits(m: Matroid, max_size: int | None = None, budget: int = 2_000_000) -> set:
    return {m.elements(c) for c in circuit_masks(m, max_size, budget)}


def girth(m: Matroid) -> float:
    cs = circuit_masks(m)
    return min(popcount(c) for c in cs) if cs else float("inf")


def flat_levels(m: Matroid, upto: int | None = None) -> list[list[int]]:
    """Flats grouped by rank, computed level by level and cached."""
    r = m.r
    if upto is None or upto > r:
        upto = r
    if m._flat_levels is None:
        m._flat_levels = [[m.closure_mask(0)]]
    levels = m._flat_levels
    while len(levels) <= upto:
        seen = set()
        nxt = []
        for f in levels[-1]:
            for g in covers(m, f):
                if g not in seen:
                    seen.add(g)
                    nxt.append(g)
        nxt.sort()
        levels.append(nxt)
    return levels[:upto + 1]


def covers(m: Matroid, flat: int) -> list[int]:
    """Flats of rank one more than the given flat that contain it."""
    out = []
    covered = flat
    rest = m.full & ~flat
    while rest:
        low = rest & -rest
        rest ^= low
        if covered & low:
            continue
        g = m.closure_mask(flat | low)
        covered |= g
        out.append(g)
    return out


def flats(m: Matroid, rank: int | None = None) -> set:
    levels = flat_levels(m, rank)
    if rank is not None:
        if rank > m.r or rank < 0:
            return set()
        return {m.elements(f) for f in levels[rank]}
    return {m.elements(f) for lvl in levels for f in lvl}


def lines(m: Matroid) -> set:
    return flats(m, 2)


def hyperplane_masks(m: Matroid) -> list[int]:
    r = m.r
    if r == 0:
        return []
    return flat_levels(m, r - 1)[r - 1]


def line_point_counts(m: Matroid) -> list[int]:
    """Number of points on each line, sorted."""
    if m.r < 2:
        return []
    levels = flat_levels(m, 2)
    pts = levels[1]
    return sorted(sum(1 for p in pts if p & ~ln == 0) for ln in levels[2])


def uniform(rank: int, size: int) -> CircuitMatroid:
    import itertools
    if not 0 <= rank <= size:
        raise ValueError("need 0 <= rank <= size")
    if rank == size:
        return CircuitMatroid(range(size), [])
    return CircuitMatroid(range(size), itertools.combinations(range(size), rank + 1), check=False)


def rank(m: Matroid, x=None) -> int:
    return m.rank(x)


def closure_of(m: Matroid, x) -> frozenset:
    return m.closure(x)


def minor(m: Matroid, spec: MinorSpec) -> Matroid:
    return m.minor(spec)
