import itertools

import pytest

from matroid_forge.geometries import dowling
from matroid_forge.groups import cyclic_group
from matroid_forge.matroid import (DirectSum, LinearMatroid, circuits, complete_graphic, fano, free_matroid,
                                   free_spike, is_isomorphic, is_simple, projective_geometry, uniform)
from matroid_forge.structures import (StackWitness, StarPartition, find_star_partition,
                                      has_line_minor_predicate, has_reid_minor, is_cycle_graph,
                                      is_g_porcupine, is_g_preporcupine, is_spike, is_stack, is_star,
                                      not_group_frame, porcupine_d, porcupine_restriction,
                                      reid_geometry, reid_incidence_graph, reid_parts, star,
                                      star_lines, star_partition_uncovered, star_partition_valid,
                                      transversal_violations)

Z2 = cyclic_group(2)


def test_fano_is_a_spike_at_every_tip():
    f = fano()
    assert all(is_spike(f, t) for t in f.ground)


def test_free_spike_rank_three_from_matrix():
    # tip e3; each leg is p, p + e3 for a point p off the tip
    cols = [[0, 0, 1], [1, 0, 0], [1, 0, 1], [0, 1, 0], [0, 1, 1], [1, 1, 3], [1, 1, 4]]
    m = LinearMatroid(cols, 5)
    assert is_spike(m, 0)
    assert is_isomorphic(m, free_spike(3))
    assert not is_spike(m, 1)


def test_non_spikes():
    assert not is_spike(uniform(2, 4), 0)
    assert not is_spike(complete_graphic(4), 0)


def test_spike_is_porcupine_with_d_one():
    for r in (3, 4):
        s = free_spike(r)
        assert is_g_porcupine(s, 0, r)
        assert porcupine_d(s, 0) == 1
    s4 = free_spike(4)
    assert all(is_g_porcupine(s4, 0, g) for g in range(1, 5))
    assert not is_g_porcupine(s4, 0, 5)


def test_single_element_porcupine():
    m = free_matroid(1)
    assert is_g_porcupine(m, 0, 10)
    assert porcupine_d(m, 0) == 0


def test_preporcupine_restriction():
    pg = projective_geometry(2, 3)
    assert is_g_preporcupine(pg, 0, 3)
    assert not is_g_porcupine(pg, 0, 3)
    p = porcupine_restriction(pg, 0)
    assert p.n == 9 and 0 in p.ground
    assert is_g_porcupine(p, 0, 3)
    assert porcupine_d(p, 0) == 2


def test_preporcupine_drops_coloop_lines():
    # two spikes glued at the tip along a coloop-free part plus a lonely line
    s = free_spike(3)
    cols = [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [1, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 1],
            [0, 1, 1, 1], [1, 1, 1, 1]]
    m = LinearMatroid(cols, 2)
    assert is_g_preporcupine(m, 0, 1)
    p = porcupine_restriction(m, 0)
    assert is_g_porcupine(p, 0, 1)
    assert s.n == 7


def test_stars():
    for q, sizes in [(3, [3, 3]), (3, [2, 1, 3]), (4, [4, 4]), (5, [5, 2])]:
        m = star(len(sizes) + 1, sizes, q)
        assert m.n == 1 + sum(sizes)
        assert is_simple(m)
        assert is_star(m, 0)
        assert sorted(len(ln) for ln in star_lines(m, 0)) == sorted(sizes)
        assert transversal_violations(m, 0) == []
    assert not is_star(fano(), 0)
    with pytest.raises(ValueError):
        star(3, [4, 1], 3)


def test_star_partition_of_a_star():
    m = star(4, [3, 3, 2], 3)
    sp = find_star_partition(m)
    assert sp is not None
    assert star_partition_valid(m, sp)
    assert sp.x == frozenset({0})
    assert star_partition_uncovered(m, sp) == []


def test_star_partition_without_long_lines():
    # U_{3,4}: the circuit itself spans, partition is the line {0,1} and the class {2,3}
    m = uniform(3, 4)
    sp = find_star_partition(m)
    assert sp is not None and star_partition_valid(m, sp)
    assert sp.x == frozenset()


def test_star_partition_free_and_none():
    sp = find_star_partition(free_matroid(3))
    assert sp is not None and len(sp.lines) == 3
    assert find_star_partition(uniform(3, 6)) is None
    with pytest.raises(ValueError):
        find_star_partition(fano().minor(contract=[0]))


def test_invalid_star_partitions():
    m = fano()
    assert not star_partition_valid(m, StarPartition([0, 1], [m.ground]))
    assert not star_partition_valid(m, StarPartition([], [[0, 1], [1, 2]]))


def test_stack_trivial_and_invalid():
    pg = projective_geometry(2, 3)
    pred = has_line_minor_predicate(4)
    assert is_stack(pg, StackWitness([pg.ground], 3, 1), pred)
    assert not is_stack(pg, StackWitness([pg.ground], 2, 1), pred)
    assert not is_stack(fano(), StackWitness([fano().ground], 3, 1), pred)
    assert not is_stack(pg, StackWitness([pg.ground[:7], pg.ground[6:]], 3, 2), pred)


def test_stack_of_two_planes():
    pg = projective_geometry(2, 3)
    m = DirectSum(pg, pg)
    w = StackWitness([range(13), range(13, 26)], 3, 2)
    assert is_stack(m, w, has_line_minor_predicate(4))
    assert not is_stack(m, w, has_line_minor_predicate(5))


def test_not_group_frame_predicate():
    pred = not_group_frame([Z2])
    assert pred(fano())
    assert not pred(complete_graphic(4))
    assert not pred(dowling(3, Z2)[0].matroid)
    assert not pred(free_matroid(2))
    assert not pred(uniform(2, 4))
    assert pred(uniform(2, 5))
    assert not not_group_frame([cyclic_group(3)])(uniform(2, 5))


def test_reid_geometries():
    r2 = reid_geometry(2)
    assert r2.n == 7 and is_isomorphic(r2, fano())
    for p in (2, 3, 4):
        m = reid_geometry(p)
        assert m.n == 2 * p + 3 and m.r == 3 and is_simple(m)
        l1, l2, l3, x, y, z = reid_parts(p)
        for ln in (l1, l2, l3):
            assert m.rank(ln) == 2
        adj = reid_incidence_graph(m, (l1, l2, l3), x, y, z)
        assert max(len(v) for v in adj.values()) <= 2
        assert is_cycle_graph(adj)
    with pytest.raises(ValueError):
        reid_geometry(1)


def test_cycle_graph_helper():
    assert is_cycle_graph({0: {1, 2}, 1: {0, 2}, 2: {0, 1}})
    assert not is_cycle_graph({0: {1}, 1: {0}})
    two = {0: {1, 2}, 1: {0, 2}, 2: {0, 1}, 3: {4, 5}, 4: {3, 5}, 5: {3, 4}}
    assert not is_cycle_graph(two)


def test_reid_minor_search():
    assert has_reid_minor(complete_graphic(4)) is None
    assert has_reid_minor(fano()) == 2
    pg = projective_geometry(2, 3)
    d = dowling(3, Z2)[0].matroid
    # a ternary Dowling plane plus one more point of PG(2,3)
    from matroid_forge.matroid import find_embedding
    emb = find_embedding(pg, d)
    image = set(emb.values())
    extra = next(e for e in pg.ground if e not in image)
    ext = pg.restrict(sorted(image | {extra}))
    p = has_reid_minor(ext, (2, 3))
    assert p is not None and 2 <= p <= 3


def test_reid_circuits_small():
    m = reid_geometry(3)
    three = [c for c in circuits(m) if len(c) == 3]
    # four triples on each 4-point line, one on {x, y, z} and one on each of the six others
    assert len(three) == 4 + 4 + 1 + 6
