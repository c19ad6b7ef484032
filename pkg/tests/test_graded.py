"""Unit tests for rings, polynomials, graded modules, and complexes."""

from fractions import Fraction

import pytest

from gradedext.graded import (ChainComplex, GradedFreeModule, GradedMap,
                              Poly, bp_ring, dual_complex, homology_at,
                              make_ring, multiplication_slice, ring_from_dict,
                              ring_to_dict, slice_map, tensor_complexes)


def test_bp_rings():
    assert bp_ring(2, 1).degrees == (2,)
    assert bp_ring(2, 1).D == 2
    assert bp_ring(2, 2).degrees == (2, 6)
    assert bp_ring(2, 2).D == 8
    assert bp_ring(3, 1).degrees == (4,)
    assert bp_ring(3, 1).D == 4
    assert bp_ring(5, 0).degrees == ()
    assert bp_ring(5, 0).D == 0


def test_ring_validation():
    with pytest.raises(ValueError):
        make_ring(4, [2])
    with pytest.raises(ValueError):
        make_ring(2, [0])


def test_ring_roundtrip():
    ring = make_ring(3, [4, 8])
    assert ring_from_dict(ring_to_dict(ring)) == ring


def test_monomials_of_degree():
    ring = bp_ring(2, 2)        # degrees 2, 6
    assert ring.monomials_of_degree(0) == [(0, 0)]
    assert ring.monomials_of_degree(6) == [(0, 1), (3, 0)]
    assert ring.monomials_of_degree(1) == []


def test_poly_arithmetic():
    p = Poly.variable(0, 1) + Poly.constant(2, 1)
    q = Poly.variable(0, 1) - Poly.constant(2, 1)
    prod = p * q
    assert prod.terms == {(2,): Fraction(1), (0,): Fraction(-4)}
    assert (p - p).is_zero()


def test_homogeneity():
    ring = bp_ring(2, 1)
    assert Poly.variable(0, 1).homogeneous_degree(ring) == 2
    mixed = Poly.variable(0, 1) + Poly.constant(1, 1)
    with pytest.raises(ValueError):
        mixed.homogeneous_degree(ring)
    assert Poly.zero().homogeneous_degree(ring) is None


def test_degree_slice_ordering():
    ring = bp_ring(2, 1)
    F = GradedFreeModule((0, 2))
    # slice at 2: x*g0 then g1, ordered by generator index
    assert F.degree_slice(2, ring) == [((1,), 0), ((0,), 1)]
    assert F.degree_slice(1, ring) == []


def test_dual_module_degrees():
    ring = bp_ring(2, 1)
    F = GradedFreeModule((0, 4))
    Fd = F.dual()
    assert Fd.variance == -1
    # dual slice at 2: monomials lowering gen degree 4 to 2
    assert Fd.degree_slice(2, ring) == [((1,), 1)]
    assert Fd.dual().variance == 1


def test_slice_map():
    ring = bp_ring(2, 1)
    F = GradedFreeModule((2,))
    G = GradedFreeModule((0,))
    f = GradedMap(F, G, ((Poly.variable(0, 1),),))   # g -> x*h
    A = slice_map(f, 2, ring)
    assert A.rows == 1 and A.cols == 1               # G slice at 2 is {x*h}
    assert A.column(0) == (1,)


def test_multiplication_slice_variance():
    ring = bp_ring(2, 1)
    F = GradedFreeModule((0,))
    up = multiplication_slice(F, 0, 0, ring)
    assert up.rows == 1 and up.cols == 1       # g -> x*g
    down = multiplication_slice(F.dual(), 0, 0, ring)
    # dual slice extends to negative degrees: x*(dual gen) lives at -2
    assert down.cols == 1 and down.rows == 1


def _koszul_one_var(ring, power):
    F1 = GradedFreeModule((power * ring.degrees[0],))
    F0 = GradedFreeModule((0,))
    d = GradedMap(F0.__class__((power * ring.degrees[0],)), F0,
                  ((Poly.variable(0, 1, power=power),),))
    return ChainComplex(ring, (F0, F1), (GradedMap(F1, F0,
                        ((Poly.variable(0, 1, power=power),),)),))


def test_chain_complex_check_and_homology():
    ring = bp_ring(2, 1)
    C = _koszul_one_var(ring, 1)
    C.check()
    exps, free = homology_at(C, 0, 0, ring)
    assert (exps, free) == ((), 1)             # Z_(2) in degree 0
    exps, free = homology_at(C, 0, 2, ring)
    assert (exps, free) == ((), 0)             # killed by x
    exps, free = homology_at(C, 1, 2, ring)
    assert (exps, free) == ((), 0)             # no H_1


def test_tensor_is_koszul():
    ring = bp_ring(2, 1)
    A = _koszul_one_var(ring, 1)
    B = _koszul_one_var(ring, 2)
    T = tensor_complexes(A, B)
    T.check()
    assert [T.module(s).rank for s in range(3)] == [1, 2, 1]
    d2 = T.differentials[1]
    # d^2 = 0 needs the Koszul sign
    comp = T.differentials[0].compose(d2)
    assert comp.is_zero()


def test_dual_complex():
    ring = bp_ring(2, 1)
    C = _koszul_one_var(ring, 1)
    D = dual_complex(C)
    assert D.cochain
    assert D.module(0).variance == -1
    D.check()
