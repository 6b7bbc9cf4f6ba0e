"""Density bounds and exhaustive extremal searches at desk scale."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import comb

from .matroid import (BudgetError, Matroid, epsilon, has_line_minor, has_minor, is_isomorphic,
                      is_simple, line_point_counts, max_line_minor, si, simplify)


@dataclass(frozen=True)
class Check:
    name: str
    verdict: str
    lhs: object = ""
    rhs: object = ""

    @property
    def ok(self) -> bool:
        return self.verdict in ("PASS", "equal", "below")


def format_check(c: Check) -> str:
    return f"CHECK {c.name} {c.verdict} {c.lhs} {c.rhs}"


def kung_bound_value(ell: int, r: int) -> int:
    if ell == 1:
        return r
    return (ell ** r - 1) // (ell - 1)


def kung_bound_holds(m: Matroid, ell: int) -> bool:
    s = si(m)
    if has_line_minor(s, ell + 2):
        raise ValueError(f"the matroid has a U(2,{ell + 2})-minor")
    return epsilon(s) <= kung_bound_value(ell, s.r)


def line_parameter(m: Matroid) -> int:
    """Least ell >= 1 such that m has no U(2, ell+2)-minor."""
    return max(1, max_line_minor(m) - 1)


def compare(lhs: int, rhs: int) -> str:
    return "below" if lhs < rhs else "equal" if lhs == rhs else "above"


def dowling_bound(t: int, r: int) -> int:
    return t * comb(r, 2) + r


def dowling_density_check(m: Matroid, t: int) -> Check:
    e, bound = epsilon(m), dowling_bound(t, m.r)
    return Check("dowling-density", compare(e, bound), e, bound)


def _forbidden(piece: Matroid, forbidden) -> bool:
    for f in forbidden:
        if f.r == 2 and is_simple(f):
            # every simple rank-2 matroid is a line
            if has_line_minor(piece, f.n):
                return True
        elif has_minor(piece, f):
            return True
    return False


def _invariant(m: Matroid):
    return (m.n, m.r, tuple(line_point_counts(m)))


def extremal_search(ambient: Matroid, forbidden, mode: str = "restrictions", budget: int = 1 << 16):
    """(max points, maximizers up to isomorphism) over full-rank restrictions avoiding forbidden minors.

    Maximizers are returned as sorted element lists of the ambient simplification.
    """
    if mode != "restrictions":
        raise ValueError("only restrictions are searched")
    s = si(ambient)
    if 1 << s.n > budget:
        raise BudgetError("too many subsets of the ambient geometry")
    pts = list(s.ground)
    r = s.r
    for size in range(s.n, r - 1, -1):
        found = []
        for sub in itertools.combinations(pts, size):
            if s.rank(sub) < r:
                continue
            piece = s.restrict(sub)
            if _forbidden(piece, forbidden):
                continue
            key = _invariant(piece)
            if any(k == key and is_isomorphic(p, piece) is not None for k, p, _ in found):
                continue
            found.append((key, piece, sorted(sub)))
        if found:
            return size, [w for _, _, w in found]
    return 0, []


def heller_instance_check() -> list[Check]:
    """Binary rank-3 case: restrictions of PG(2,2) without an F_7-restriction."""
    from .matroid import complete_graphic, fano
    f7 = fano()
    best, witnesses = extremal_search(f7, [f7])
    out = [Check("heller-max", "PASS" if best == 6 else "FAIL", best, 6)]
    unique = len(witnesses) == 1
    iso = unique and is_isomorphic(f7.restrict(witnesses[0]), complete_graphic(4)) is not None
    out.append(Check("heller-unique-mk4", "PASS" if iso else "FAIL", len(witnesses), 1))
    formula = dowling_bound(1, 3)
    out.append(Check("heller-formula", "PASS" if best == formula else "FAIL", best, formula))
    return out


def line_length_multiset(m: Matroid) -> dict:
    return dict(sorted(Counter(line_point_counts(m)).items()))
