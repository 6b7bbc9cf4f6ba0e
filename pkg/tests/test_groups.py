import itertools

import pytest
from hypothesis import given, strategies as st

from matroid_forge.groups import (FiniteGroup, catalog, cyclic_group, direct_product, find_isomorphism,
                                  format_group, group_isomorphic, parse_group, parse_group_name,
                                  symmetric_group)

CAT = catalog()


def test_cyclic_small():
    assert cyclic_group(1).order == 1
    assert [list(r) for r in cyclic_group(2).table] == [[0, 1], [1, 0]]
    z6 = cyclic_group(6)
    assert z6.is_abelian() and z6.element_order(1) == 6


def test_element_order_by_repeated_product():
    z6 = cyclic_group(6)
    x, n = 1, 1
    while x != 0:
        x, n = z6.op(x, 1), n + 1
    assert n == 6


def test_klein_four():
    v = direct_product(cyclic_group(2), cyclic_group(2))
    assert v.order == 4
    assert all(v.element_order(a) == 2 for a in range(1, 4))


def test_products_and_isomorphism():
    z2, z3 = cyclic_group(2), cyclic_group(3)
    assert group_isomorphic(direct_product(z2, z3), cyclic_group(6))
    assert not group_isomorphic(cyclic_group(4), direct_product(z2, z2))
    for g in CAT.values():
        assert group_isomorphic(direct_product(cyclic_group(1), g), g)


def test_isomorphism_map_is_homomorphism():
    g1, g2 = direct_product(cyclic_group(2), cyclic_group(3)), cyclic_group(6)
    phi = find_isomorphism(g1, g2)
    assert sorted(phi[a] for a in range(6)) == list(range(6))
    for a, b in itertools.product(range(6), repeat=2):
        assert phi[g1.op(a, b)] == g2.op(phi[a], phi[b])


def test_catalog_contents():
    assert set(CAT) == {"Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2^2", "Z2^3", "S3"}
    assert not CAT["S3"].is_abelian()


@pytest.mark.parametrize("name", sorted(CAT))
def test_catalog_associative_with_identity_zero(name):
    g = CAT[name]
    n = g.order
    for a, b, c in itertools.product(range(n), repeat=3):
        assert g.op(g.op(a, b), c) == g.op(a, g.op(b, c))
    for a in range(n):
        assert g.op(0, a) == a == g.op(a, 0)
        assert g.op(a, g.inv(a)) == 0 == g.op(g.inv(a), a)


def test_isomorphism_reflexive_symmetric_on_catalog():
    for (n1, g1), (n2, g2) in itertools.product(CAT.items(), repeat=2):
        assert group_isomorphic(g1, g2) == group_isomorphic(g2, g1)
        assert group_isomorphic(g1, g2) == (n1 == n2)


def test_bad_tables_rejected():
    with pytest.raises(ValueError):
        FiniteGroup(((1, 0), (0, 1)))
    with pytest.raises(ValueError):
        FiniteGroup(((0, 1), (1, 1)))


def test_text_round_trip():
    for g in CAT.values():
        h = parse_group(format_group(g))
        assert h.table == g.table
    assert format_group(cyclic_group(2)).splitlines()[0] == "group 2"
    with pytest.raises(ValueError):
        parse_group("group 2\n0 1 1")


@pytest.mark.parametrize("text,order", [("z3", 3), ("Z2^2", 4), ("z2xz3", 6), ("s3", 6), ("1", 1)])
def test_parse_group_name(text, order):
    assert parse_group_name(text).order == order


def test_symmetric_group_order():
    assert symmetric_group(3).order == 6


@given(st.integers(1, 12), st.integers(0, 11), st.integers(0, 11))
def test_cyclic_op_is_addition(m, a, b):
    g = cyclic_group(m)
    assert g.op(a % m, b % m) == (a + b) % m
