"""Finite groups as explicit operation tables. Element 0 is always the identity."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

MAX_ORDER = 64


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise ValueError("operation table must be square and nonempty")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise ValueError("table entry out of range")
        if self.table[0] != tuple(range(n)) or any(row[0] != i for i, row in enumerate(self.table)):
            raise ValueError("element 0 must be a two-sided identity")
        inv = []
        for a in range(n):
            row = self.table[a]
            try:
                b = row.index(0)
            except ValueError:
                raise ValueError(f"element {a} has no inverse") from None
            if self.table[b][a] != 0:
                raise ValueError(f"element {a} has no two-sided inverse")
            inv.append(b)
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.table)

    identity = 0

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def is_associative(self) -> bool:
        t = self.table
        r = range(self.order)
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in r for b in r for c in r)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def product(self, elements) -> int:
        x = 0
        for g in elements:
            x = self.table[x][g]
        return x

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"


def from_table(table, name="") -> FiniteGroup:
    g = FiniteGroup(tuple(tuple(int(x) for x in row) for row in table), name)
    if g.order <= MAX_ORDER and not g.is_associative():
        raise ValueError("operation is not associative")
    return g


def cyclic_group(m: int) -> FiniteGroup:
    if m < 1:
        raise ValueError("cyclic group needs m >= 1")
    return FiniteGroup(tuple(tuple((a + b) % m for b in range(m)) for a in range(m)), f"Z{m}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    # (a, b) is encoded as a * |g2| + b, so (0, 0) stays the identity
    n2 = g2.order
    n = g1.order * n2
    rows = []
    for x in range(n):
        a1, b1 = divmod(x, n2)
        rows.append(tuple(g1.table[a1][y // n2] * n2 + g2.table[b1][y % n2] for y in range(n)))
    name = f"{g1.name}x{g2.name}" if g1.name and g2.name else ""
    return FiniteGroup(tuple(rows), name)


def symmetric_group(n: int = 3) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))  # identity sorts first
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    rows = tuple(tuple(index[tuple(p[q[x]] for x in range(n))] for q in perms) for p in perms)
    return FiniteGroup(rows, f"S{n}")


def elementary_abelian(p: int, j: int) -> FiniteGroup:
    g = cyclic_group(1) if j == 0 else cyclic_group(p)
    for _ in range(j - 1):
        g = direct_product(g, cyclic_group(p))
    if j >= 1:
        g = FiniteGroup(g.table, f"Z{p}^{j}")
    return g


def catalog() -> dict[str, FiniteGroup]:
    groups = {f"Z{m}": cyclic_group(m) for m in range(1, 9)}
    groups["Z2^2"] = elementary_abelian(2, 2)
    groups["Z2^3"] = elementary_abelian(2, 3)
    groups["S3"] = symmetric_group(3)
    return groups


def parse_group_name(text: str) -> FiniteGroup:
    """Accepts names like z3, Z2^2, z2xz3, s3, and 1 for the trivial group."""
    s = text.strip().lower().replace("×", "x")
    if not s:
        raise ValueError("empty group name")
    parts = s.split("x")
    if len(parts) > 1:
        g = parse_group_name(parts[0])
        for part in parts[1:]:
            g = direct_product(g, parse_group_name(part))
        return FiniteGroup(g.table, text.strip())
    if s in ("1", "{1}", "trivial"):
        return cyclic_group(1)
    if s.startswith("s") and s[1:].isdigit():
        n = int(s[1:])
        if n > 4:
            raise ValueError("symmetric groups above S4 exceed the order limit")
        return symmetric_group(n)
    if s.startswith("z"):
        base, _, exp = s[1:].partition("^")
        if base.isdigit() and (not exp or exp.isdigit()):
            m = int(base)
            if m < 1:
                raise ValueError(f"bad group name {text!r}")
            if exp:
                return elementary_abelian(m, int(exp)) if m > 1 else cyclic_group(1)
            return cyclic_group(m)
    raise ValueError(f"unknown group {text!r}")


def _generators(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = {0}
    by_order = sorted(range(1, g.order), key=lambda a: (-g.element_order(a), a))
    for a in by_order:
        if a in span:
            continue
        gens.append(a)
        span = _closure(g, gens)
    return gens


def _closure(g: FiniteGroup, gens) -> set[int]:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.table[x][s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def find_isomorphism(g1: FiniteGroup, g2: FiniteGroup, limit: int = MAX_ORDER):
    """A tuple phi with phi[a] in g2 for a in g1, or None."""
    if max(g1.order, g2.order) > limit:
        raise ValueError(f"group order above search limit {limit}")
    if g1.order != g2.order:
        return None
    n = g1.order
    ord1 = [g1.element_order(a) for a in range(n)]
    ord2 = [g2.element_order(a) for a in range(n)]
    if sorted(ord1) != sorted(ord2) or g1.is_abelian() != g2.is_abelian():
        return None
    gens = _generators(g1)
    # words: every element as (predecessor, generator) along a BFS tree
    word = {0: None}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g1.table[x][s]
                if y not in word:
                    word[y] = (x, s)
                    nxt.append(y)
        frontier = nxt
    order_bfs = sorted(word, key=lambda a: _depth(word, a))
    choices = [[b for b in range(n) if ord2[b] == ord1[s]] for s in gens]
    for images in itertools.product(*choices):
        img = dict(zip(gens, images))
        phi = [0] * n
        for a in order_bfs:
            if a == 0:
                continue
            x, s = word[a]
            phi[a] = g2.table[phi[x]][img[s]]
        if len(set(phi)) != n:
            continue
        if all(phi[g1.table[a][b]] == g2.table[phi[a]][phi[b]] for a in range(n) for b in range(n)):
            return tuple(phi)
    return None


def _depth(word, a):
    d = 0
    while word[a] is not None:
        a = word[a][0]
        d += 1
    return d


def group_isomorphic(g1: FiniteGroup, g2: FiniteGroup, limit: int = MAX_ORDER) -> bool:
    return find_isomorphism(g1, g2, limit) is not None


def format_group(g: FiniteGroup) -> str:
    lines = [f"group {g.order}"]
    lines += [" ".join(map(str, row)) for row in g.table]
    return "\n".join(lines) + "\n"


def parse_group(text: str) -> FiniteGroup:
    tokens = text.split()
    if len(tokens) < 2 or tokens[0] != "group":
        raise ValueError("expected 'group <order>' header")
    try:
        n = int(tokens[1])
        vals = [int(t) for t in tokens[2:]]
    except ValueError as exc:
        raise ValueError(f"non-integer token in group table: {exc}") from None
    if n < 1 or len(vals) != n * n:
        raise ValueError(f"group table needs {n * n} entries, got {len(vals)}")
    return from_table([vals[i * n:(i + 1) * n] for i in range(n)])
