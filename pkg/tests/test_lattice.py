import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import conjugate, even_grams, random_unimodular
from quadlat import intmat
from quadlat.catalog import hyperbolic_plane, rank_one, simple_lattice
from quadlat.errors import (
    CapExceeded,
    DegenerateLattice,
    IndefiniteLattice,
    RankMismatch,
    ZeroVector,
)
from quadlat.lattice import (
    Lattice,
    Sublattice,
    direct_sum,
    divisibility,
    is_isometric_small,
    lattice,
    lattice_info,
    orthogonal_complement,
    rescale,
    saturate,
    vectors_of_norm,
)


def _nondegenerate(G):
    return intmat.det(G) != 0


@given(even_grams(), even_grams())
def test_direct_sum_multiplies_det_and_adds_signature(G1, G2):
    if not (_nondegenerate(G1) and _nondegenerate(G2)):
        return
    A, B = lattice(G1), lattice(G2)
    S = direct_sum(A, B)
    assert S.determinant == A.determinant * B.determinant
    assert S.signature == (A.signature[0] + B.signature[0], A.signature[1] + B.signature[1])


@given(even_grams(), st.integers(-4, 4).filter(bool))
def test_rescale_det_and_signature(G, n):
    if not _nondegenerate(G):
        return
    L = lattice(G)
    R = rescale(L, n)
    assert R.determinant == n ** L.rank * L.determinant
    expected = L.signature if n > 0 else L.signature[::-1]
    assert tuple(R.signature) == tuple(expected)


def test_degenerate_rejected():
    with pytest.raises(DegenerateLattice):
        lattice([[0, 0], [0, 2]])


def test_info_of_u():
    info = lattice_info(hyperbolic_plane())
    assert (info.rank, tuple(info.signature), info.determinant, info.disc_summary) == (2, (1, 1), -1, ())


@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=3))
def test_saturate_idempotent(rows):
    if intmat.rank(rows) != len(rows):
        return
    L = direct_sum(hyperbolic_plane(), hyperbolic_plane())
    S = saturate(Sublattice(L, rows))
    assert S.primitive
    assert saturate(S).basis == S.basis


@given(even_grams(), st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_divisibility_divides_square(G, v):
    if not _nondegenerate(G):
        return
    L = lattice(G)
    v = v[: L.rank]
    if not any(v):
        with pytest.raises(ZeroVector):
            divisibility(L, v)
        return
    assert L.norm(v) % divisibility(L, v) == 0


def test_orthogonal_complement_of_e_plus_f():
    L = direct_sum(hyperbolic_plane(), rank_one(-2))
    C = orthogonal_complement(Sublattice(L, [(1, 1, 0)]))
    for row in C.basis:
        assert L.pair(row, (1, 1, 0)) == 0
    assert C.lattice().determinant == 4  # <-2> + <-2>
    assert C.primitive


def test_vectors_of_norm_roots_of_e8_and_a2():
    assert len(vectors_of_norm(simple_lattice("E8"), 2)) == 240
    assert len(vectors_of_norm(simple_lattice("A2"), 2)) == 6
    assert len(vectors_of_norm(simple_lattice("E8", -1), -2)) == 240
    assert vectors_of_norm(simple_lattice("A2"), -2) == []


def test_vectors_of_norm_errors():
    with pytest.raises(IndefiniteLattice):
        vectors_of_norm(hyperbolic_plane(), 2)
    with pytest.raises(CapExceeded):
        vectors_of_norm(simple_lattice("E8"), 2, cap=10)
    with pytest.raises(ValueError):
        vectors_of_norm(simple_lattice("A2"), 0)


def test_isometric_small_yes_has_valid_witness():
    L, M = lattice([[0, 2], [2, -2]]), lattice([[2, 0], [0, -2]])
    v = is_isometric_small(L, M)
    assert v.is_yes
    P = v.witness
    assert intmat.matmul(intmat.matmul(intmat.transpose(P), L.gram_list()), P) == M.gram_list()


def test_isometric_small_certified_no():
    v = is_isometric_small(lattice([[0, 2], [2, -2]]), rescale(hyperbolic_plane(), 2))
    assert v.is_no and v.certificate == "represented-values"
    assert is_isometric_small(simple_lattice("A2"), lattice([[2, 0], [0, 6]])).certificate == "determinant"
    with pytest.raises(RankMismatch):
        is_isometric_small(simple_lattice("A2"), simple_lattice("A3"))


def test_isometric_small_definite_exhaustive(rng):
    D4 = simple_lattice("D4")
    for _ in range(5):
        P = random_unimodular(rng, 4)
        M = lattice(conjugate(D4.gram_list(), P))
        v = is_isometric_small(D4, M)
        assert v.is_yes
        W = v.witness
        assert intmat.matmul(intmat.matmul(intmat.transpose(W), D4.gram_list()), W) == M.gram_list()


def test_summand_labels_are_bookkeeping_only():
    a = hyperbolic_plane()
    b = Lattice(((0, 1), (1, 0)))
    assert a == b
    assert [lab for lab, _ in direct_sum(a, rank_one(2)).summands] == ["U", "<2>"]
