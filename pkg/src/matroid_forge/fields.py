"""Small finite fields GF(q) with table arithmetic."""
from __future__ import annotations

from functools import lru_cache

# irreducible polynomials, coefficients low degree first
_IRREDUCIBLE = {
    4: (2, (1, 1, 1)),
    8: (2, (1, 1, 0, 1)),
    9: (3, (1, 0, 1)),
    16: (2, (1, 1, 0, 0, 1)),
    25: (5, (2, 0, 1)),
    27: (3, (1, 2, 0, 1)),
}


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"not a prime power: {q}")
    p = 2
    while q % p:
        p += 1
    k, x = 0, q
    while x % p == 0:
        x //= p
        k += 1
    if x != 1:
        raise ValueError(f"not a prime power: {q}")
    return p, k


class GF:
    """GF(q). Elements are ints 0..q-1; for q = p^k they encode polynomials in base p."""

    def __init__(self, q: int):
        p, k = _prime_power(q)
        self.q, self.p, self.k = q, p, k
        if k == 1:
            self.add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            if q not in _IRREDUCIBLE:
                raise ValueError(f"GF({q}) not supported")
            _, poly = _IRREDUCIBLE[q]
            digits = [self._digits(a) for a in range(q)]
            self.add = [[self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
                         for b in range(q)] for a in range(q)]
            self.mul = [[self._polymul(digits[a], digits[b], poly) for b in range(q)]
                        for a in range(q)]
        self.neg = [self.add[a].index(0) for a in range(q)]
        self.inv = [0] + [self.mul[a].index(1) for a in range(1, q)]
        self.sub = [[self.add[a][self.neg[b]] for b in range(q)] for a in range(q)]

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits):
        v = 0
        for d in reversed(digits):
            v = v * self.p + d
        return v

    def _polymul(self, a, b, poly):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce modulo the monic irreducible
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * poly[i]) % p
        return self._encode(prod[:k])

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def from_int(self, a: int) -> int:
        """Image of an integer under the prime-field embedding."""
        return self._encode([a % self.p] + [0] * (self.k - 1))

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        x, n = a, 1
        while x != 1:
            x = self.mul[x][a]
            n += 1
        return n

    def rank(self, vectors) -> int:
        return len(self.echelon(vectors))

    def echelon(self, vectors):
        """Reduced basis of the span as a list of (pivot, row) pairs."""
        basis: list[tuple[int, list[int]]] = []
        for v in vectors:
            w = self.reduce(basis, v)
            piv = next((i for i, x in enumerate(w) if x), None)
            if piv is None:
                continue
            s = self.inv[w[piv]]
            w = [self.mul[s][x] for x in w]
            basis.append((piv, w))
        return basis

    def reduce(self, basis, v):
        w = list(v)
        mul, sub = self.mul, self.sub
        for piv, row in basis:
            c = w[piv]
            if c:
                w = [sub[x][mul[c][y]] for x, y in zip(w, row)]
        return w

    def projective_points(self, dim: int):
        """All nonzero vectors of GF(q)^dim whose first nonzero entry is 1."""
        pts = []
        for lead in range(dim):
            for tail in _all_vectors(self.q, dim - lead - 1):
                pts.append((0,) * lead + (1,) + tail)
        return pts


def _all_vectors(q, n):
    if n == 0:
        return [()]
    rest = _all_vectors(q, n - 1)
    return [(a,) + r for a in range(q) for r in rest]


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
