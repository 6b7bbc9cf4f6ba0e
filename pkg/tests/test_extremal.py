import pytest

from matroid_forge.extremal import (Check, compare, dowling_bound, dowling_density_check, extremal_search,
                                    format_check, heller_instance_check, kung_bound_holds, kung_bound_value,
                                    line_length_multiset, line_parameter)
from matroid_forge.geometries import dowling
from matroid_forge.groups import cyclic_group
from matroid_forge.matroid import (BudgetError, complete_graphic, fano, is_isomorphic, projective_geometry,
                                   uniform)

Z2 = cyclic_group(2)


def test_kung_values():
    assert kung_bound_value(1, 5) == 5
    assert kung_bound_value(2, 3) == 7
    assert kung_bound_value(3, 3) == 13
    for ell in range(2, 6):
        # a single (ell + 1)-point line meets the bound
        assert kung_bound_value(ell, 2) == ell + 1
        assert kung_bound_holds(uniform(2, ell + 1), ell)


def test_kung_examples():
    assert kung_bound_holds(fano(), 2)
    assert line_parameter(fano()) == 2
    d = dowling(3, Z2)[0].matroid
    assert line_parameter(d) == 3
    assert kung_bound_holds(d, 3)
    assert len(d) == 9 < kung_bound_value(3, 3)
    assert kung_bound_holds(projective_geometry(2, 3), 3)
    with pytest.raises(ValueError):
        kung_bound_holds(projective_geometry(2, 3), 2)
    assert line_parameter(complete_graphic(4)) == 2


def test_line_parameter_of_free_matroid():
    from matroid_forge.matroid import free_matroid
    assert line_parameter(free_matroid(3)) == 1


def test_dowling_density():
    for t, g in ((2, Z2), (3, cyclic_group(3))):
        for r in (3, 4):
            c = dowling_density_check(dowling(r, g)[0].matroid, t)
            assert c.verdict == "equal" and c.lhs == dowling_bound(t, r) and c.ok
    for n in (3, 4, 5):
        assert dowling_density_check(complete_graphic(n + 1), 1).verdict == "equal"
    c = dowling_density_check(projective_geometry(2, 3), 2)
    assert c.verdict == "above" and (c.lhs, c.rhs) == (13, 9) and not c.ok
    assert dowling_density_check(fano(), 2).verdict == "below"


def test_compare_and_format():
    assert compare(1, 2) == "below" and compare(2, 2) == "equal" and compare(3, 2) == "above"
    assert format_check(Check("x", "PASS", 1, 2)) == "CHECK x PASS 1 2"
    assert not Check("x", "FAIL").ok


def test_extremal_search_examples():
    pg = projective_geometry(2, 3)
    size, wit = extremal_search(pg, [uniform(2, 5)])
    assert size == 13 and len(wit) == 1
    size, wit = extremal_search(dowling(3, Z2)[0].matroid, [uniform(2, 5)])
    assert size == 9
    size, wit = extremal_search(pg, [uniform(2, 4)])
    assert size == 6
    for w in wit:
        assert is_isomorphic(pg.restrict(w), complete_graphic(4)) is not None


def test_extremal_search_monotone_in_ambient():
    pg = projective_geometry(2, 3)
    d = dowling(3, Z2)[0].matroid
    forb = [fano()]
    assert extremal_search(d, forb)[0] <= extremal_search(pg, forb)[0]
    small, _ = extremal_search(fano(), [uniform(2, 3)])
    assert small == 3


def test_extremal_search_guards():
    with pytest.raises(ValueError):
        extremal_search(fano(), [fano()], mode="minors")
    with pytest.raises(BudgetError):
        extremal_search(projective_geometry(2, 3), [fano()], budget=100)


def test_heller_instance():
    checks = heller_instance_check()
    assert [c.name for c in checks] == ["heller-max", "heller-unique-mk4", "heller-formula"]
    assert all(c.ok for c in checks)


def test_line_length_multiset():
    assert line_length_multiset(fano()) == {3: 7}
    assert line_length_multiset(complete_graphic(4)) == {2: 3, 3: 4}
