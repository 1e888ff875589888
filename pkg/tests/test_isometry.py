import pytest

from quadlat import intmat
from quadlat.catalog import hyperbolic_plane, lambda24, rank_one, simple_lattice
from quadlat.errors import (
    DiscActionNontrivial,
    NonIntegralReflection,
    NotAnIsometry,
    NotUnimodular,
    OrderCapExceeded,
    ZeroVector,
)
from quadlat.isometry import (
    MINUS_IDENTITY,
    TRIVIAL,
    disc_action,
    extend_to_unimodular,
    invariant_and_coinvariant,
    make_isometry,
    negated_reflection,
    reflection,
)
from quadlat.lattice import Sublattice, direct_sum, lattice


def test_beauville_type_involution():
    L = lattice([[6, 0], [0, -4]])
    g = make_isometry(L, [[5, 4], [-6, -5]])
    assert g.order == 2
    assert g.matrix == negated_reflection(L, (1, -1)).matrix
    T, S = invariant_and_coinvariant(L, [g])
    assert T.basis == ((1, -1),) and T.gram() == ((2,),)
    assert S.basis == ((2, -3),) and S.gram() == ((-12,),)
    act = disc_action(L, g)
    # A_L = Z/2 x Z/12 and g acts as -1 on both generators
    assert act.classification == MINUS_IDENTITY


def test_not_an_isometry():
    with pytest.raises(NotAnIsometry):
        make_isometry(hyperbolic_plane(), [[1, 1], [0, 1]])


def test_order_cap():
    # two roots with (a, b)^2 = a^2 b^2: their reflections generate an infinite group
    L = direct_sum(hyperbolic_plane(), rank_one(-2))
    r1 = reflection(L, (0, 0, 1)).matrix_list()
    r2 = reflection(L, (1, 0, 1)).matrix_list()
    with pytest.raises(OrderCapExceeded):
        make_isometry(L, intmat.matmul(r1, r2), order_cap=50)


def test_reflection_errors():
    L = direct_sum(hyperbolic_plane(), rank_one(-4))
    with pytest.raises(ZeroVector):
        reflection(L, (0, 0, 0))
    with pytest.raises(NonIntegralReflection):
        reflection(L, (1, 0, 0))
    with pytest.raises(NonIntegralReflection):
        reflection(L, (1, 2, 0))  # square 4, pairs to 1 with f
    r = reflection(L, (0, 0, 1))
    assert r.apply((0, 0, 1)) == (0, 0, -1)


def test_invariant_lattice_is_primitive_and_orthogonal():
    E8 = simple_lattice("E8", -1)
    g = reflection(E8, E8.basis_vector(0)) @ reflection(E8, E8.basis_vector(2))
    T, S = invariant_and_coinvariant(E8, [g])
    assert T.primitive and S.primitive
    assert T.rank + S.rank == 8
    assert all(E8.pair(t, s) == 0 for t in T.basis for s in S.basis)


def test_extension_of_minus_one_on_diagonal_e8():
    L = lambda24()
    rows = []
    for i in range(8):
        v = [0] * 24
        v[8 + i] = v[16 + i] = 1
        rows.append(v)
    M = Sublattice(L, rows)
    assert M.primitive
    ML = M.lattice()
    assert ML.gram == tuple(tuple(2 * x for x in r) for r in simple_lattice("E8", -1).gram)
    minus = make_isometry(ML, [[-int(i == j) for j in range(8)] for i in range(8)])
    assert disc_action(ML, minus).classification == TRIVIAL
    (ext,) = extend_to_unimodular(M, [minus])
    # expected: identity on U^4 and (x, y) -> (-y, -x) on E8(-1)^2
    for i in range(8):
        assert ext.apply(L.basis_vector(i)) == L.basis_vector(i)
    for i in range(8):
        img = ext.apply(L.basis_vector(8 + i))
        assert img == tuple(-x for x in L.basis_vector(16 + i))
    assert ext.order == 2


def test_extension_rejects_nontrivial_disc_action():
    U = hyperbolic_plane()
    M = Sublattice(U, [(1, 2)])
    g = make_isometry(M.lattice(), [[-1]])
    with pytest.raises(DiscActionNontrivial):
        extend_to_unimodular(M, [g])


def test_extension_needs_unimodular_ambient():
    L = rank_one(2)
    M = Sublattice(L, [(1,)])
    with pytest.raises(NotUnimodular):
        extend_to_unimodular(M, [])
