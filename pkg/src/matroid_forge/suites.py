"""Verification suites behind `matroid-forge verify`."""
from __future__ import annotations

import itertools
import random
from math import ceil

from .connectivity import (kappa_drop_set, kappa, linking_minor, linking_postconditions,
                           nested_linking_minor, standard_tangle)
from .extremal import (Check, dowling_bound, dowling_density_check, extremal_search,
                       heller_instance_check, kung_bound_holds, kung_bound_value, line_parameter)
from .geometries import (dowling, dowling_size, frame_matroid_of, independent_by_circuits,
                         lift_geometry, lift_matroid_of, lift_plus_size, zaslavsky_circuits)
from .glgraph import GroupLabeledGraph, balanced_cycles, recover_group_labeling
from .groups import catalog, cyclic_group, direct_product, group_isomorphic
from .matroid import (complete_graphic, epsilon, fano, find_representation, free_spike,
                      has_line_minor, is_isomorphic, projective_geometry, random_linear, si, uniform)
from .modular import (IntegerMatrix, delta_contract, delta_delete, delta_of, line_minor_bound_check,
                      reduce_upper_triangular)
from .structures import (has_reid_minor, is_cycle_graph, is_star, reid_geometry, reid_incidence_graph,
                         reid_parts, star, transversal_violations)
from .matroid import circuit_masks, popcount

SEED = 20240611


def _c(name, ok, lhs="", rhs=""):
    return Check(name, "PASS" if ok else "FAIL", lhs, rhs)


def size_groups():
    z2 = cyclic_group(2)
    return [("Z1", cyclic_group(1)), ("Z2", z2), ("Z3", cyclic_group(3)), ("Z4", cyclic_group(4)),
            ("Z2^2", direct_product(z2, z2))]


def suite_sizes(scale="full"):
    ks = range(3, 7) if scale == "full" else range(3, 5)
    out = []
    for k in ks:
        for name, g in size_groups():
            n = len(dowling(k, g)[0].matroid)
            out.append(_c(f"size-DG({k},{name})", n == dowling_size(k, g.order), n, dowling_size(k, g.order)))
            n = len(lift_geometry(k, g, extended=True)[0])
            out.append(_c(f"size-LG+({k},{name})", n == lift_plus_size(k, g.order), n, lift_plus_size(k, g.order)))
    return out


def suite_identifications(scale="full"):
    z2 = cyclic_group(2)
    out = [
        _c("DG(3,1)~M(K4)", is_isomorphic(dowling(3, cyclic_group(1))[0].matroid, complete_graphic(4)) is not None),
        _c("LG+(3,Z2)~F7", is_isomorphic(lift_geometry(3, z2, True)[0], fano()) is not None),
    ]
    d4 = dowling(4, z2)[0].matroid
    d3 = dowling(3, z2)[0].matroid
    ok = all(is_isomorphic(si(d4.contract([e])), d3) is not None for e in d4.ground)
    out.append(_c("si(DG(4,Z2)/e)~DG(3,Z2)", ok))
    l4 = lift_geometry(4, z2, True)[0]
    l3 = lift_geometry(3, z2, True)[0]
    e0 = max(l4.ground)
    ok = all(is_isomorphic(si(l4.contract([e])), l3) is not None for e in l4.ground if e != e0)
    out.append(_c("si(LG+(4,Z2)/e)~LG+(3,Z2)", ok))
    return out


def suite_exclusions(scale="full"):
    out = []
    ks = range(3, 6) if scale == "full" else range(3, 5)
    for k in ks:
        for t in (1, 2, 3):
            m = dowling(k, cyclic_group(t))[0].matroid
            out.append(_c(f"no-U2,{t + 3}-in-DG({k},Z{t})", not has_line_minor(m, t + 3)))
            out.append(_c(f"U2,{t + 2}-in-DG({k},Z{t})", has_line_minor(m, t + 2)))
    out.append(_c("no-U2,4-in-PG(2,2)", not has_line_minor(fano(), 4)))
    return out


def kung_catalog():
    z2, z3 = cyclic_group(2), cyclic_group(3)
    return [
        ("PG(2,2)", fano()),
        ("PG(2,3)", projective_geometry(2, 3)),
        ("M(K4)", complete_graphic(4)),
        ("M(K5)", complete_graphic(5)),
        ("DG(3,Z2)", dowling(3, z2)[0].matroid),
        ("DG(3,Z3)", dowling(3, z3)[0].matroid),
        ("DG(4,Z2)", dowling(4, z2)[0].matroid),
        ("LG+(3,Z3)", lift_geometry(3, z3, True)[0]),
        ("U3,6", uniform(3, 6)),
        ("spike3", free_spike(3)),
    ]


def suite_kung(scale="full"):
    out = []
    projective = {"PG(2,2)": projective_geometry(2, 2), "PG(2,3)": projective_geometry(2, 3)}
    equal_cases = []
    for name, m in kung_catalog():
        ell = line_parameter(m)
        s = si(m)
        bound = kung_bound_value(ell, s.r)
        out.append(_c(f"kung-{name}", kung_bound_holds(m, ell), epsilon(s), bound))
        if epsilon(s) == bound:
            equal_cases.append((name, s))
    ok = len(equal_cases) == 2 and all(
        any(is_isomorphic(s, p) is not None for p in projective.values()) for _, s in equal_cases)
    out.append(_c("kung-equality-exactly-PG", ok, ",".join(n for n, _ in equal_cases), "PG(2,2),PG(2,3)"))
    return out


def suite_representability(scale="full"):
    z2 = cyclic_group(2)
    d = dowling(3, z2)[0].matroid
    lg = lift_geometry(3, z2, True)[0]
    want = [("DG(3,Z2)", d, 3, True), ("DG(3,Z2)", d, 5, True), ("DG(3,Z2)", d, 2, False),
            ("LG+(3,Z2)", lg, 2, True), ("LG+(3,Z2)", lg, 4, True), ("LG+(3,Z2)", lg, 3, False),
            ("LG+(3,Z2)", lg, 5, False)]
    out = []
    for name, m, q, expect in want:
        rep = find_representation(m, q)
        ok = (rep is not None) == expect
        if rep is not None:
            from .matroid import LinearMatroid
            cols = [list(c) for c in zip(*rep)]
            lin = LinearMatroid(cols, q, ground=m.ground)
            ok = ok and all(lin.rank_mask(x) == m.rank_mask(x) for x in range(m.full + 1))
        out.append(_c(f"rep-{name}-GF({q})", ok, "found" if rep is not None else "none",
                      "found" if expect else "none"))
    return out


def full_labeled_graph(k, g):
    edges = [(i, j, a) for i in range(k) for j in range(i + 1, k) for a in range(g.order)]
    return GroupLabeledGraph(k, tuple(edges), g)


def recovery_groups():
    cat = catalog()
    return [(n, g) for n, g in cat.items() if g.order <= 4]


def suite_recovery(scale="full"):
    out = []
    ms = (4, 5) if scale == "full" else (4,)
    for name, g in recovery_groups():
        for m in ms:
            b = balanced_cycles(full_labeled_graph(m, g))
            grp, lab = recover_group_labeling(b, g.order)
            ok = group_isomorphic(grp, g) and balanced_cycles(lab).balanced == b.balanced
            out.append(_c(f"recover-{name}-K{m}", ok, grp.order, g.order))
    return out


def suite_tangles(scale="full"):
    z2 = cyclic_group(2)
    out = []
    for n in (4, 5, 6):
        m = dowling(n, z2)[0].matroid
        for k in range(1, n + 2):
            expect = 3 <= k <= ceil(2 * n / 3) + 1
            got = standard_tangle(m, k) is not None if k >= 1 else False
            out.append(_c(f"tangle-DG({n},Z2)-k{k}", got == expect, got, expect))
    return out


def random_linking_instance(rng):
    n = rng.randint(3, 9)
    r = rng.randint(1, min(4, n))
    m = random_linear(rng, n, r, rng.choice([2, 3, 5]))
    els = list(m.ground)
    rng.shuffle(els)
    a = rng.randint(1, n - 2) if n > 2 else 1
    x = els[:a]
    rest = els[a:]
    y2 = rest[:rng.randint(1, len(rest))]
    y1 = y2[:rng.randint(1, len(y2))]
    return m, x, y1, y2


def suite_linking(scale="full"):
    rng = random.Random(SEED)
    count = 200 if scale == "full" else 25
    bad1 = bad2 = 0
    for _ in range(count):
        m, x, y1, y2 = random_linking_instance(rng)
        if linking_postconditions(m, linking_minor(m, x, y2), x, [y2]):
            bad1 += 1
        if linking_postconditions(m, nested_linking_minor(m, x, [y1, y2]), x, [y1, y2]):
            bad2 += 1
    out = [_c("linking-minor", bad1 == 0, bad1, 0), _c("nested-linking-minor", bad2 == 0, bad2, 0)]
    bad = 0
    for _ in range(count // 4):
        m, x, y1, y2 = random_linking_instance(rng)
        d = kappa_drop_set(m, y2, x)
        if kappa(m, set(y2) | d, x) != kappa(m, y2, x):
            bad += 1
    out.append(_c("sep-union", bad == 0, bad, 0))
    return out


def random_group_labeled_graph(rng, max_vertices=6, max_edges=12):
    groups = list(catalog().values())
    g = rng.choice([gr for gr in groups if gr.order <= 4])
    n = rng.randint(1, max_vertices)
    edges = []
    for _ in range(rng.randint(0, max_edges)):
        t, h = rng.randrange(n), rng.randrange(n)
        if t == h and rng.random() < 0.5:
            h = rng.randrange(n)
        edges.append((t, h, rng.randrange(g.order)))
    return GroupLabeledGraph(n, tuple(edges), g)


def circuit_rule_mismatches(b, kind):
    if kind == "frame":
        m = frame_matroid_of(b)
    else:
        m = lift_matroid_of(b, extended=kind == "lift+")
    cmasks = [m.mask(c) for c in zaslavsky_circuits(b, kind)]
    bad = 0
    for x in range(m.full + 1):
        by_rules = not any(c & x == c for c in cmasks)
        if by_rules != m.indep_mask(x):
            bad += 1
    return bad


def suite_circuits(scale="full"):
    rng = random.Random(SEED + 1)
    count = 100 if scale == "full" else 20
    bad = {"frame": 0, "lift": 0}
    for _ in range(count):
        b = balanced_cycles(random_group_labeled_graph(rng))
        for kind in bad:
            if circuit_rule_mismatches(b, kind):
                bad[kind] += 1
    return [_c(f"circuits-{kind}", v == 0, v, 0) for kind, v in bad.items()]


def star_instances(scale="full"):
    out = []
    for q in (2, 3, 4):
        for rk in (2, 3, 4):
            for sizes in itertools.product(range(1, q + 1), repeat=rk - 1):
                if 1 + sum(sizes) <= 12 and list(sizes) == sorted(sizes):
                    out.append(((rk, sizes, q), star(rk, list(sizes), q)))
    return out if scale == "full" else out[::4]


def suite_stars(scale="full"):
    bad = 0
    big = 0
    insts = star_instances(scale)
    for _, s in insts:
        if not is_star(s, 0) or transversal_violations(s, 0):
            bad += 1
        if any(popcount(c) >= 5 for c in circuit_masks(s)):
            big += 1
    spike = free_spike(5)
    tips = [t for t in spike.ground if is_star(spike, t)]
    return [
        _c("star-circuits-in-two-lines", bad == 0, bad, 0),
        _c("star-no-circuit-of-size-5", big == 0, big, 0),
        _c("star-instances", len(insts) > 0, len(insts), ">0"),
        _c("spike5-not-star", not tips, len(tips), 0),
    ]


def suite_reid(scale="full"):
    out = []
    for p in (2, 3, 5):
        r = reid_geometry(p)
        l1, l2, l3, x, y, z = reid_parts(p)
        adj = reid_incidence_graph(r, (l1, l2, l3), x, y, z)
        out.append(_c(f"reid-R({p})-cycle", is_cycle_graph(adj) and len(adj) == 2 * p, len(adj), 2 * p))
    lg = lift_geometry(3, cyclic_group(2), True)[0]
    p = has_reid_minor(lg, (2, 4))
    out.append(_c("reid-in-LG+(3,Z2)", p == 2, p, 2))
    return out


def random_full_rank_matrix(rng, rows=None, cols=None, lo=-2, hi=2):
    while True:
        r = rows or rng.randint(1, 3)
        c = cols or rng.randint(r, r + 3)
        a = IntegerMatrix([[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)])
        if a.rank == r:
            return a


def _independent_columns(rng, a):
    from .modular import _column_basis
    basis = _column_basis(a)
    rng.shuffle(basis)
    return basis[:rng.randint(1, len(basis))]


def same_column_matroid(a: IntegerMatrix, m, cols):
    """Column matroid of a equals m, with column j of a playing element cols[j]."""
    ma = a.column_matroid()
    for k in range(len(cols) + 1):
        for sub in itertools.combinations(range(len(cols)), k):
            if ma.rank(sub) != m.rank([cols[j] for j in sub]):
                return False
    return True


def suite_delta(scale="full"):
    out = []
    from .geometries import cyclic_dowling_matrix
    for m in (3, 4, 5):
        d = delta_of(cyclic_dowling_matrix(m, 1))
        out.append(_c(f"delta-D({m},1)", d == 1, d, 1))
    rng = random.Random(SEED + 2)
    count = 100 if scale == "full" else 20
    bad = 0
    for _ in range(count):
        a = random_full_rank_matrix(rng)
        x = _independent_columns(rng, a)
        if delta_of(reduce_upper_triangular(a, x)) != delta_of(a):
            bad += 1
    out.append(_c("reduce-preserves-delta", bad == 0, bad, 0))
    for d in (1, 2):
        out.append(_c(f"line-bound-delta{d}", line_minor_bound_check(d)))
    bad = 0
    count = 50 if scale == "full" else 10
    for _ in range(count):
        a = random_full_rank_matrix(rng, lo=-3, hi=3)
        m = a.column_matroid()
        nz = [j for j in range(a.ncols) if any(a.column(j))]
        if nz:
            e = rng.choice(nz)
            c = delta_contract(a, e)
            cols = [j for j in range(a.ncols) if j != e]
            grew = c.rank > 0 and delta_of(c) > delta_of(a)
            if not same_column_matroid(c, m.contract([e]), cols) or grew:
                bad += 1
        drop = rng.sample(range(a.ncols), rng.randint(1, a.ncols - 1)) if a.ncols > 1 else []
        dd = delta_delete(a, drop)
        cols = [j for j in range(a.ncols) if j not in drop]
        grew = dd.rank > 0 and delta_of(dd) > delta_of(a)
        if not same_column_matroid(dd, m.delete(drop), cols) or grew:
            bad += 1
    out.append(_c("delta-minors-commute", bad == 0, bad, 0))
    return out


def suite_extremal(scale="full"):
    out = list(heller_instance_check())
    z = [cyclic_group(t) for t in (1, 2, 3)]
    for g in z:
        for k in (3, 4):
            m = dowling(k, g)[0].matroid
            c = dowling_density_check(m, g.order)
            out.append(_c(f"density-DG({k},Z{g.order})", c.verdict == "equal", c.lhs, c.rhs))
            out.append(_c(f"tight-DG({k},Z{g.order})", not has_line_minor(m, g.order + 3)))
    best, _ = extremal_search(dowling(3, cyclic_group(2))[0].matroid, [uniform(2, 5)])
    out.append(_c("extremal-DG(3,Z2)-noU25", best == dowling_bound(2, 3), best, dowling_bound(2, 3)))
    return out


SUITES = {
    "sizes": suite_sizes,
    "identifications": suite_identifications,
    "exclusions": suite_exclusions,
    "kung": suite_kung,
    "representability": suite_representability,
    "recovery": suite_recovery,
    "tangles": suite_tangles,
    "linking": suite_linking,
    "circuits": suite_circuits,
    "stars": suite_stars,
    "reid": suite_reid,
    "delta": suite_delta,
    "extremal": suite_extremal,
}


def run_suite(name: str, scale: str = "full") -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn(scale)]
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](scale)
