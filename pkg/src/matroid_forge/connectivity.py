"""Connectivity functions, linking minors, roundness and tangles."""
from __future__ import annotations

import itertools

from .matroid import BudgetError, Matroid, bits, flat_levels, hyperplane_masks, popcount

DEFAULT_BUDGET = 5_000_000


def lam_mask(m: Matroid, x: int) -> int:
    return m.rank_mask(x) + m.rank_mask(m.full & ~x) - m.r


def lambda_(m: Matroid, x) -> int:
    """Connectivity function r(X) + r(E - X) - r(M)."""
    return lam_mask(m, m.mask(x))


def local_conn(m: Matroid, a, b) -> int:
    am, bm = m.mask(a), m.mask(b)
    return m.rank_mask(am) + m.rank_mask(bm) - m.rank_mask(am | bm)


def _local_mask(m, a, b):
    return m.rank_mask(a) + m.rank_mask(b) - m.rank_mask(a | b)


def kappa_mask(m: Matroid, a: int, b: int, budget: int = DEFAULT_BUDGET) -> int:
    """min lambda(Z) over a <= Z <= E - b, by branch and bound.

    The local connectivity of the two partial sides never exceeds lambda of any
    completion, which gives the bound.
    """
    if a & b:
        raise ValueError("sets must be disjoint")
    free = list(bits(m.full & ~a & ~b))
    best = min(lam_mask(m, a), lam_mask(m, m.full & ~b))
    nodes = 0

    def go(i, z, w):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetError("kappa search exceeded its budget")
        if _local_mask(m, z, w) >= best:
            return
        if i == len(free):
            best = min(best, lam_mask(m, z))
            return
        bit = 1 << free[i]
        go(i + 1, z | bit, w)
        go(i + 1, z, w | bit)

    if free:
        go(0, a, b)
    return best


def kappa(m: Matroid, a, b, budget: int = DEFAULT_BUDGET) -> int:
    return kappa_mask(m, m.mask(a), m.mask(b), budget)


def same_restriction(m1: Matroid, m2: Matroid, xs) -> bool:
    """m1|X == m2|X as matroids on the same element ids."""
    xs = sorted(xs)
    for k in range(len(xs) + 1):
        for sub in itertools.combinations(xs, k):
            if m1.rank(sub) != m2.rank(sub):
                return False
    return True


def _kappas(n: Matroid, x, ys):
    xm = n.mask(x)
    return [kappa_mask(n, xm, n.mask(y)) for y in ys]


def nested_linking_minor(m: Matroid, x, ys) -> Matroid:
    """Minor on X and the largest Y keeping every kappa(X, Y_i) and the restrictions to X and Y_1.

    Elements are removed one at a time, deleting when possible. A contraction is
    tried only for elements outside cl(X) and cl(Y_1), first those also outside cl(Y_j)
    for the largest j with E != cl(X) u cl(Y_j).
    """
    x = frozenset(x)
    ys = [frozenset(y) for y in ys]
    if not ys:
        raise ValueError("need at least one set in the chain")
    for a, b in zip(ys, ys[1:]):
        if not a <= b:
            raise ValueError("sets must form an increasing chain")
    if x & ys[-1]:
        raise ValueError("X must be disjoint from the chain")
    target = _kappas(m, x, ys)
    keep = x | ys[-1]
    n = m
    while True:
        rest = sorted(set(n.ground) - keep)
        if not rest:
            break
        step = None
        for e in rest:
            cand = n.delete([e])
            if _kappas(cand, x, ys) == target:
                step = cand
                break
        if step is None:
            clx = n.closure(x)
            cly1 = n.closure(ys[0])
            j = max((i for i, y in enumerate(ys) if set(n.ground) != clx | n.closure(y)), default=0)
            clyj = n.closure(ys[j])
            allowed = [e for e in rest if e not in clx and e not in cly1]
            preferred = [e for e in allowed if e not in clyj]
            for e in preferred + [e for e in allowed if e in clyj]:
                cand = n.contract([e])
                if _kappas(cand, x, ys) == target:
                    step = cand
                    break
        if step is None:
            raise AssertionError("neither deleting nor contracting any element preserves connectivity")
        n = step
    return n


def linking_minor(m: Matroid, x, y) -> Matroid:
    """Minor N on X u Y with kappa_N(X, Y) = kappa_M(X, Y), N|X = M|X and N|Y = M|Y."""
    return nested_linking_minor(m, x, [y])


def linking_postconditions(m: Matroid, n: Matroid, x, ys) -> list[str]:
    """Failed postconditions of a (nested) linking minor, checked exhaustively."""
    out = []
    if set(n.ground) != set(x) | set(ys[-1]):
        out.append("ground set")
    for i, y in enumerate(ys):
        if kappa(n, x, y) != kappa(m, x, y):
            out.append(f"kappa to Y_{i + 1}")
    if not same_restriction(m, n, x):
        out.append("restriction to X")
    if not same_restriction(m, n, ys[0]):
        out.append("restriction to Y_1")
    return out


def kappa_drop_set(m: Matroid, y, j) -> frozenset:
    """Elements e outside J u Y whose contraction lowers kappa(A, J) for some A inside Y."""
    ym, jm = m.mask(y), m.mask(j)
    subsets = [s for s in _submasks(ym)]
    base = {a: kappa_mask(m, a, jm) for a in subsets}
    out = set()
    for e in bits(m.full & ~ym & ~jm):
        c = m.contract([m.ground[e]])
        for a in subsets:
            am = c.mask(m.elements(a))
            if kappa_mask(c, am, c.mask(m.elements(jm))) < base[a]:
                out.add(m.ground[e])
                break
    return frozenset(out)


def _submasks(mask):
    s = mask
    while True:
        yield s
        if s == 0:
            break
        s = (s - 1) & mask


def vertical_separation_order(m: Matroid, budget: int = 1 << 20):
    """Smallest j admitting a vertical j-separation, or None when there is none."""
    n = m.n
    if n == 0:
        return None
    if 1 << (n - 1) > budget:
        raise BudgetError("too many partitions for vertical connectivity")
    r = m.r
    best = None
    top = 1 << (n - 1)
    for xm in range(1, 1 << n):
        if xm & top:
            continue  # each partition once: the last element goes to Y
        ym = m.full & ~xm
        rx, ry = m.rank_mask(xm), m.rank_mask(ym)
        j = rx + ry - r + 1
        if j <= min(rx, ry) and (best is None or j < best):
            best = j
    return best


def is_vertically_k_connected(m: Matroid, k: int) -> bool:
    j = vertical_separation_order(m)
    return j is None or j >= k


def vertical_connectivity(m: Matroid) -> int:
    """Least j with a vertical j-separation; r(M) when there is none."""
    j = vertical_separation_order(m)
    return m.r if j is None else j


def is_round(m: Matroid) -> bool:
    r = m.r
    return all(m.rank_mask(m.full & ~h) == r for h in hyperplane_masks(m))


class TangleAxiomError(ValueError):
    pass


class Tangle:
    """Tangle of order theta on host.

    Standard tangles T_k of round matroids keep only a membership rule (rank at
    most k-2); other tangles carry the full family of small sets as masks.
    """

    def __init__(self, host: Matroid, order: int, members=None, small_rank: int | None = None):
        self.host = host
        self.order = order
        self.small_rank = small_rank
        self._members = None if members is None else frozenset(members)
        if self._members is None and small_rank is None:
            raise ValueError("need a member family or a rank cap")

    def is_small_mask(self, x: int) -> bool:
        if self._members is not None:
            return x in self._members
        return self.host.rank_mask(x) <= self.small_rank

    def is_small(self, xs) -> bool:
        return self.is_small_mask(self.host.mask(xs))

    def member_masks(self, limit: int = 16):
        if self._members is not None:
            return sorted(self._members)
        if self.host.n > limit:
            raise BudgetError("host too large to list every small set")
        return [x for x in range(self.host.full + 1) if self.is_small_mask(x)]

    @property
    def small(self) -> frozenset:
        """The small family as a frozenset of frozensets of element ids."""
        return frozenset(frozenset(self.host.elements(x)) for x in self.member_masks())

    def members(self, limit: int = 16):
        """Sorted list of small sets, for debugging and export."""
        return [sorted(self.host.elements(x)) for x in self.member_masks(limit)]

    def rank_mask(self, x: int) -> int:
        if self._members is None:
            # round host: lambda(Z) = r(Z) for every small Z, and X itself is the best Z
            r = self.host.rank_mask(x)
            return r if r <= self.small_rank else self.order - 1
        best = self.order - 1
        for z in self._members:
            if z & x == x:
                best = min(best, lam_mask(self.host, z))
        return best

    def rank(self, xs) -> int:
        return self.rank_mask(self.host.mask(xs))


def tangle_rank(t: Tangle, x) -> int:
    return t.rank(x)


def tangle_rank_generic(t: Tangle, x) -> int:
    """r_T(X) straight from the definition, minimizing over listed members."""
    xm = t.host.mask(x)
    best = t.order - 1
    for z in t.member_masks():
        if z & xm == xm:
            best = min(best, lam_mask(t.host, z))
    return best


def tangle_axiom_violations(host: Matroid, order: int, members) -> list[str]:
    members = set(members)
    full = host.full
    out = []
    for z in members:
        if lam_mask(host, z) >= order - 1:
            out.append("axiom 1: a member is not separating enough")
            break
    for z in range(full + 1):
        if lam_mask(host, z) < order - 1 and z not in members and (full & ~z) not in members:
            out.append("axiom 1: a separating set and its complement are both missing")
            break
    maximal = [z for z in members if not any(z != w and z & w == z for w in members)]
    if any(a | b | c == full for a, b, c in itertools.combinations_with_replacement(maximal, 3)):
        out.append("axiom 2: three members cover the ground set")
    for i in range(host.n):
        if full & ~(1 << i) in members:
            out.append("axiom 3: a member misses a single element")
            break
    return out


def _three_flats_cover(m: Matroid, level: int) -> bool:
    """Whether E is a union of three sets of rank at most level."""
    full = m.full
    if level < 0:
        return full == 0
    fl = flat_levels(m, level)[level]
    fl = sorted(fl, key=lambda f: -popcount(f))
    if not full:
        return True
    first = full & -full
    for f1 in fl:
        if not f1 & first:
            continue
        u1 = full & ~f1
        if not u1:
            return True
        low = u1 & -u1
        for f2 in fl:
            if not f2 & low:
                continue
            u2 = u1 & ~f2
            if m.rank_mask(u2) <= level:
                return True
    return False


def standard_tangle_status(m: Matroid, k: int):
    """(T_k(M) or None, reason). The host must be round."""
    if not is_round(m):
        raise ValueError("standard tangles are only defined here for round matroids")
    if not 3 <= k <= m.r:
        return None, f"order {k} outside 3..{m.r}"
    if _three_flats_cover(m, k - 2):
        return None, "axiom 2: three sets of rank k-2 cover the ground set"
    return Tangle(m, k, small_rank=k - 2), "ok"


def standard_tangle(m: Matroid, k: int) -> Tangle | None:
    return standard_tangle_status(m, k)[0]


def induced_tangle(m: Matroid, minor_map, t_on_minor: Tangle, limit: int = 16) -> Tangle:
    """Tangle on m induced by a tangle on a minor.

    minor_map is either the minor itself (a minor of m keeps m's element ids) or
    a dict from minor ids to ids of m.
    """
    if m.n > limit:
        raise BudgetError("host too large for an explicit induced tangle")
    n = t_on_minor.host
    if isinstance(minor_map, dict):
        to_m = minor_map
    else:
        to_m = {e: e for e in minor_map.ground}
    from_m = {v: k for k, v in to_m.items()}
    theta = t_on_minor.order
    members = []
    for x in range(m.full + 1):
        if lam_mask(m, x) >= theta - 1:
            continue
        inside = [from_m[e] for e in m.elements(x) if e in from_m]
        if t_on_minor.is_small(inside):
            members.append(x)
    bad = tangle_axiom_violations(m, theta, members)
    if bad:
        raise TangleAxiomError("; ".join(bad))
    return Tangle(m, theta, members=members)
