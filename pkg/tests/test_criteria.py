import itertools
from collections import deque

import pytest

from conftest import conjugate, random_unimodular
from quadlat import intmat
from quadlat.catalog import (
    bb_lattice,
    e6_dual,
    hyperbolic_plane,
    lambda8,
    lambda24,
    lambda26,
    power,
    rank_one,
    rescale,
    simple_lattice,
)
from quadlat.criteria import (
    INDUCED,
    NEGATIVE_OF_POSITIVE,
    NEITHER,
    NOT_INDUCED,
    POSITIVE,
    MukaiVector,
    algebraic_part_candidates,
    classify_mukai_vector,
    contains_U,
    eichler_equivalent,
    embed_corank1,
    induced_check,
    isotropy_obstruction,
    mukai_pairing,
    numerical_moduli_check,
    split_U,
)
from quadlat.errors import (
    DegenerateLattice,
    GramMismatch,
    MissingU2,
    NotPrimitive,
    OddSquare,
    UnsupportedType,
)
from quadlat.isometry import MINUS_IDENTITY, reflection
from quadlat.lattice import direct_sum, lattice, lattice_info

# --- Mukai vectors


def test_mukai_squares_and_pairing():
    ns = rank_one(2)
    for n in range(2, 6):
        assert MukaiVector(1, (0,), 1 - n, ns).square == 2 * n - 2
    assert MukaiVector(0, (3,), 0, ns).square == 18
    assert mukai_pairing(MukaiVector(1, (0,), 0, ns), MukaiVector(0, (0,), 1, ns)) == -1
    with pytest.raises(GramMismatch):
        mukai_pairing(MukaiVector(1, (0,), 0, ns), MukaiVector(1, (0,), 0, rank_one(4)))


def test_mukai_classification():
    ns = rank_one(2)
    assert classify_mukai_vector(MukaiVector(1, (0,), -1, ns)) == POSITIVE
    assert classify_mukai_vector(MukaiVector(-1, (0,), 1, ns)) == NEGATIVE_OF_POSITIVE
    assert classify_mukai_vector(MukaiVector(0, (0,), 1, ns)) == NEITHER
    eff = MukaiVector(0, (1,), 0, ns, l_effective=True)
    assert classify_mukai_vector(eff) == POSITIVE
    assert classify_mukai_vector(-eff) == NEGATIVE_OF_POSITIVE


def test_mukai_positive_iff_negative_is_negative_of_positive():
    ns = lattice([[2, 1], [1, -2]])
    for r, a, b, s, eff in itertools.product(range(-2, 3), range(-2, 3), range(-2, 3), range(-2, 3), (False, True)):
        v = MukaiVector(r, (a, b), s, ns, eff)
        assert (classify_mukai_vector(v) == POSITIVE) == (classify_mukai_vector(-v) == NEGATIVE_OF_POSITIVE)


# --- embeddings and Eichler


def test_embed_corank1_examples():
    _, S = embed_corank1(lambda24(), 2)
    info = lattice_info(S.lattice())
    assert (info.rank, info.determinant, tuple(info.signature)) == (23, 2, (3, 20))
    v, S = embed_corank1(lambda8(), 6)
    assert lattice_info(S.lattice()).rank == 7 and abs(S.lattice().determinant) == 6
    assert lattice_info(S.lattice()).disc_summary == lattice_info(bb_lattice("Kum", 2)).disc_summary
    v, S = embed_corank1(lambda26(), 4)
    assert S.rank == 25
    with pytest.raises(DegenerateLattice):
        embed_corank1(lambda24(), 0)
    with pytest.raises(OddSquare):
        embed_corank1(lambda24(), 3)


def test_embed_positive_square_has_divisibility_one():
    from quadlat.lattice import divisibility

    for s in (2, 4, 10):
        v, _ = embed_corank1(lambda24(), s)
        assert divisibility(lambda24(), v) == 1


U2M2 = direct_sum(hyperbolic_plane(), hyperbolic_plane(), rank_one(-2))


def test_eichler_examples():
    L24 = lambda24()
    v = (1, 1) + (0,) * 22
    w = (0, 0, 1, 1) + (0,) * 20
    assert eichler_equivalent(L24, v, w)
    assert eichler_equivalent(L24, w, v)
    assert not eichler_equivalent(U2M2, (0, 0, 0, 0, 1), (1, -1, 0, 0, 0))
    with pytest.raises(MissingU2):
        eichler_equivalent(direct_sum(hyperbolic_plane(), rank_one(-2)), (1, 0, 0), (0, 1, 0))
    with pytest.raises(NotPrimitive):
        eichler_equivalent(U2M2, (2, 0, 0, 0, 0), (0, 2, 0, 0, 0))


def _swap(v):
    return (v[2], v[3], v[0], v[1]) + tuple(v[4:])


def test_eichler_symmetric_under_swapping_u_summands():
    vecs = [v for v in itertools.product(range(-1, 2), repeat=5) if intmat.vector_gcd(v) == 1]
    for v in vecs[::7]:
        for w in vecs[::11]:
            assert eichler_equivalent(U2M2, v, w) == eichler_equivalent(U2M2, _swap(v), _swap(w))


def _orbit_generators():
    L = U2M2
    gens = []
    for v in itertools.product(range(-1, 2), repeat=5):
        if not any(v) or abs(L.norm(v)) != 2:
            continue
        try:
            gens.append(reflection(L, v).matrix_list())
        except Exception:
            continue
    swap = [[0] * 5 for _ in range(5)]
    for i, j in ((0, 2), (1, 3), (2, 0), (3, 1), (4, 4)):
        swap[j][i] = 1
    gens.append(swap)
    return gens


def _orbit(v, gens, height=4):
    sparse = [[[(k, c) for k, c in enumerate(row) if c] for row in g] for g in gens]
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for g in sparse:
            y = tuple(sum(c * x[k] for k, c in row) for row in g)
            if max(map(abs, y)) <= height and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def test_eichler_equivalence_matches_bounded_orbits():
    gens = _orbit_generators()
    vecs = [v for v in itertools.product(range(-1, 2), repeat=5) if intmat.vector_gcd(v) == 1]
    orbits = {}
    for v in vecs:
        if v not in orbits:
            orb = _orbit(v, gens)
            for x in orb:
                orbits[x] = orb
    checked = 0
    for v in vecs:
        for w in vecs:
            if eichler_equivalent(U2M2, v, w):
                assert w in orbits[v], (v, w)
                checked += 1
            elif w in orbits[v]:
                pytest.fail(f"{v} and {w} share an orbit but differ in square or class")
    assert checked > 0


# --- hyperbolic summands


def test_contains_u_examples():
    v = contains_U(direct_sum(hyperbolic_plane(), simple_lattice("A2")))
    assert v.is_yes and v.detail["route"] == "syntactic"
    a2 = contains_U(simple_lattice("A2"))
    assert a2.is_no and a2.certificate == "definite"
    u2 = contains_U(direct_sum(rescale(hyperbolic_plane(), 2), rank_one(2)))
    assert u2.is_no and u2.certificate == "scaled-gram"


def test_contains_u_finds_and_validates_witness(rng):
    base = direct_sum(hyperbolic_plane(), rank_one(-2)).gram_list()
    for _ in range(6):
        P = random_unimodular(rng, 3, steps=3)
        L = lattice(conjugate(base, P))
        v = contains_U(L, height_bound=4)
        assert v.is_yes, v
        e, f = v.witness
        assert (L.norm(e), L.norm(f), L.pair(e, f)) == (0, 0, 1)
        assert v.detail["complement"].gram == ((-2,),)


def test_contains_u_stable_on_scaled_plane(rng):
    for _ in range(4):
        P = random_unimodular(rng, 2)
        v = contains_U(lattice(conjugate(rescale(hyperbolic_plane(), 2).gram_list(), P)))
        assert v.is_no and v.certificate == "scaled-gram"


def test_contains_u_length_obstruction():
    L = direct_sum(rescale(hyperbolic_plane(), 3), rank_one(2))
    # entries of U(3) + <2> share no common factor, but l(A) = 3 > rank - 2
    v = contains_U(L)
    assert v.is_no and v.certificate == "length-obstruction"


def test_contains_u_unknown_reports_bound():
    L = direct_sum(simple_lattice("A2"), e6_dual(-3))
    v = contains_U(L, height_bound=1)
    assert v.state == "Unknown" and v.bound == 1
    assert v.detail["length"] == 6


def test_extended_certificate_is_sound_on_known_splits():
    # lattices that do split off U must never be certified
    for L in (direct_sum(hyperbolic_plane(), rank_one(-2)), direct_sum(hyperbolic_plane(), simple_lattice("E8", -1)),
              direct_sum(hyperbolic_plane(), rescale(hyperbolic_plane(), 3))):
        assert isotropy_obstruction(L) is None
    assert isotropy_obstruction(direct_sum(simple_lattice("A2"), e6_dual(-3))) == 3


def test_split_u():
    K = split_U(direct_sum(hyperbolic_plane(), rank_one(4)))
    assert K.gram == ((4,),)
    assert split_U(simple_lattice("A2")) is None


def test_numerical_moduli_check():
    assert numerical_moduli_check(direct_sum(hyperbolic_plane(), rank_one(2)), lambda24()).is_yes
    assert numerical_moduli_check(simple_lattice("A2"), lambda24()).is_no
    # Neron-Severi of the Hilbert square of a degree-2 K3: <2> + <2 - 2n>
    cands = algebraic_part_candidates(direct_sum(rank_one(2), rank_one(-2)), "K3n", 2)
    verdicts = [numerical_moduli_check(c, lambda24()) for c in cands]
    assert any(v.is_yes for v in verdicts)


def test_induced_check_examples():
    rep = induced_check("K3n", 2, rank_one(6), 3, "nonsymplectic", "trivial")
    assert rep.final == NOT_INDUCED and len(rep.candidates) == 1
    for a in (1, 2, 3):
        T = direct_sum(hyperbolic_plane(), power(rank_one(-2), a))
        assert induced_check("K3n", 2, T, 2, "nonsymplectic", "trivial").final == INDUCED
    T = direct_sum(hyperbolic_plane(), simple_lattice("E8", -2))
    assert induced_check("K3n", 2, T, 2, "nonsymplectic", "trivial").final == INDUCED


def test_induced_check_nontrivial_action_and_types():
    rep = induced_check("K3n", 2, rank_one(6), 3, "nonsymplectic", MINUS_IDENTITY)
    assert rep.final == NOT_INDUCED and rep.candidates == ()
    with pytest.raises(UnsupportedType):
        induced_check("Og10", None, rank_one(6), 3, "nonsymplectic", "trivial")


def test_induced_check_symplectic_minus2_count():
    T = direct_sum(hyperbolic_plane(), rank_one(2))
    rep = induced_check("K3n", 2, T, 2, "symplectic", "trivial", coinvariant=simple_lattice("E8", -2))
    assert rep.symplectic_minus2 == 0 and rep.final == INDUCED
    rep = induced_check("K3n", 2, T, 2, "symplectic", "trivial", coinvariant=simple_lattice("A1", -1))
    assert rep.symplectic_minus2 == 2 and rep.final == "Unknown"
