"""Unit tests for Ext groups, duals, the duality map, and truncation."""

import pytest

from gradedext.ext import (LocallyFiniteFamily, NotLocallyFinite,
                           duality_map, ext_table, ext_via_truncation,
                           pontryagin_dual, truncate_above, verify_duality)
from gradedext.graded import bp_ring, make_ring
from gradedext.presentations import (content_range, cyclic_presentation,
                                     direct_sum, free_presentation, suspend)


def test_ext_cyclic_concentrated_on_top():
    ring = bp_ring(2, 1)
    M = cyclic_presentation(ring, 3, None, 0)          # Z/8
    tab = ext_table(M, 3)
    assert tab.nonzero() == [(2, 2)]
    assert tab.exponents_at(2, 2) == (3,)


def test_ext_shifts_with_suspension():
    ring = bp_ring(2, 1)
    M = suspend(cyclic_presentation(ring, 1, None, 0), 6)
    tab = ext_table(M, 3)
    assert tab.nonzero() == [(2, 8)]                   # t = 6 + D


def test_ext_bp22():
    ring = bp_ring(2, 2)
    M = cyclic_presentation(ring, 1, None, 0)          # Z/2
    tab = ext_table(M, 4)
    assert tab.nonzero() == [(3, 8)]                   # (n+1, D) = (3, 8)
    assert tab.exponents_at(3, 8) == (1,)


def test_ext_free_module_in_s_zero():
    ring = bp_ring(2, 1)
    M = free_presentation(ring, [0])
    tab = ext_table(M, 2, t_max=6, t_min=-2)
    assert all(s == 0 for (s, t) in tab.nonzero())
    assert tab.free_rank_at(0, 0) == 1


def test_pontryagin_dual_orders_and_action():
    ring = bp_ring(2, 1)
    M = cyclic_presentation(ring, 2, (2,), 0)          # R/(4, x^2)
    dual = pontryagin_dual(M, range(-2, 6))
    assert dual.groups == {0: (2,), 2: (2,)}
    # x acts (M^dual)_2 -> (M^dual)_0 dual to the iso M_0 -> M_2
    assert dual.actions[(0, 2)] == [[1]]


def test_duality_map_cyclic():
    ring = bp_ring(2, 1)
    M = cyclic_presentation(ring, 3, None, 0)
    rep = duality_map(M)
    assert rep.ok
    assert rep.psi[0] and rep.phi[0]
    # alpha_N pairs to a unit against the fundamental generator
    assert rep.psi[0][0][0] % 2 == 1


def test_duality_nontrivial_action_module():
    # the case where naive R-linear functionals miss classes
    ring = bp_ring(2, 1)
    M = cyclic_presentation(ring, 1, (2,), 0)          # R/(2, x^2)
    rep = verify_duality(M)
    assert rep.ok, rep.failures


def test_verify_duality_rejects_infinite():
    ring = bp_ring(2, 1)
    with pytest.raises(NotLocallyFinite):
        verify_duality(free_presentation(ring, [0]))


def test_verify_duality_mixed_sum():
    ring = bp_ring(3, 1)
    M = direct_sum(cyclic_presentation(ring, 2, (1,), 0),
                   suspend(cyclic_presentation(ring, 1, (2,), 0), 4))
    rep = verify_duality(M)
    assert rep.ok, rep.failures


def test_n_zero_duality():
    ring = make_ring(2, [])
    M = cyclic_presentation(ring, 3, None, 0)          # plain Z/8
    tab = ext_table(M, 2)
    assert tab.nonzero() == [(1, 0)]                   # Ext^1 = Z/8, Ext^0 = 0
    assert tab.exponents_at(1, 0) == (3,)
    assert verify_duality(M).ok


def test_truncate_above():
    ring = bp_ring(2, 1)
    M = cyclic_presentation(ring, 2, (0,), 0)          # R/4, infinite
    Q = truncate_above(M, 4)
    assert content_range(Q) == (0, 4)
    for t in (0, 2, 4):
        assert Q.group_at(t).exponents == (2,)
    assert Q.group_at(6).exponents == ()


def test_truncation_family_agreement():
    ring = bp_ring(2, 1)
    Z2 = cyclic_presentation(ring, 1, None, 0)
    fam = LocallyFiniteFamily(tuple((4 * j, Z2) for j in range(6)))
    t8 = ext_via_truncation(fam, 8, 3)
    t12 = ext_via_truncation(fam, 12, 3)
    assert t8.valid_t_bound == 8
    for s in range(4):
        for t in range(t8.t_min, 9):
            assert t8.entries.get((s, t)) == t12.entries.get((s, t))
    assert (2, 2) in t8.entries and (2, 6) in t8.entries


def test_ext_table_serialization():
    ring = bp_ring(2, 1)
    M = cyclic_presentation(ring, 2, (1,), 0)
    tab = ext_table(M, 3, with_actions=True)
    from gradedext.ext import ExtTable
    tab2 = ExtTable.from_dict(tab.to_dict())
    assert tab2.entries == tab.entries
    assert tab2.ring == ring
