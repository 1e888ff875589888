"""Named lattices, Beauville-Bogomolov lattices and the hyperkähler constructions."""
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from . import intmat
from .discform import (
    TwoElemInvariants,
    _overlattice,
    _saturated_in,
    discriminant_form,
)
from .errors import (
    ConsistencyWarning,
    NonIntegralDual,
    NotPrimitive,
    UnknownName,
    UnsupportedType,
    WrongSquare,
)
from .lattice import (
    Lattice,
    Sublattice,
    direct_sum,
    divisibility,
    is_isometric_small,
    lattice,
    orthogonal_complement,
    rescale,
)

# 3 * (Cartan matrix of E6)^-1, labelled as in e_type(6). Re-derived in the tests.
E6_DUAL_TIMES_3 = (
    (4, 5, 6, 4, 2, 3),
    (5, 10, 12, 8, 4, 6),
    (6, 12, 18, 12, 6, 9),
    (4, 8, 12, 10, 5, 6),
    (2, 4, 6, 5, 4, 3),
    (3, 6, 9, 6, 3, 6),
)


def hyperbolic_plane():
    return lattice([[0, 1], [1, 0]], "U")


def rank_one(q):
    return lattice([[q]], f"<{q}>")


def _cartan(n, edges):
    G = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        G[i][j] = G[j][i] = -1
    return G


def a_type(k):
    if k < 1:
        raise UnknownName(f"A{k}")
    return lattice(_cartan(k, [(i, i + 1) for i in range(k - 1)]), f"A{k}")


def d_type(k):
    if k < 4:
        raise UnknownName(f"D{k}")
    edges = [(i, i + 1) for i in range(k - 2)] + [(k - 3, k - 1)]
    return lattice(_cartan(k, edges), f"D{k}")


def e_type(k):
    if k not in (6, 7, 8):
        raise UnknownName(f"E{k}")
    # chain of k-1 nodes, extra node attached to the third node of the chain
    edges = [(i, i + 1) for i in range(k - 2)] + [(2, k - 1)]
    return lattice(_cartan(k, edges), f"E{k}")


def e6_dual(scale):
    """The dual of E6 with its form multiplied by ``scale`` (needs 3 | scale)."""
    if scale is None or scale % 3:
        raise NonIntegralDual(f"E6 dual scaled by {scale} is not integral")
    gram = [[scale // 3 * x for x in row] for row in E6_DUAL_TIMES_3]
    L = lattice(gram, f"E6v({scale})")
    if not L.even:
        raise NonIntegralDual(f"E6 dual scaled by {scale} is odd")
    return L


_SIMPLE = re.compile(r"^(U|A\d+|D\d+|E[678]|E6v)$")


def simple_lattice(name, scale=None):
    """A single named atom, optionally rescaled (``E8`` with scale -1 is E8(-1))."""
    if not _SIMPLE.match(name):
        raise UnknownName(name)
    if name == "E6v":
        return e6_dual(scale)
    if name == "U":
        L = hyperbolic_plane()
    elif name[0] == "A":
        L = a_type(int(name[1:]))
    elif name[0] == "D":
        L = d_type(int(name[1:]))
    else:
        L = e_type(int(name[1:]))
    return rescale(L, scale) if scale not in (None, 1) else L


def power(L, k):
    return direct_sum(*([L] * k))


def lambda24():
    """The Mukai lattice of a K3 surface, U^4 + E8(-1)^2."""
    return direct_sum(power(hyperbolic_plane(), 4), power(simple_lattice("E8", -1), 2))


def lambda8():
    return power(hyperbolic_plane(), 4)


def lambda26():
    return direct_sum(lambda24(), hyperbolic_plane())


@dataclass(frozen=True)
class DeformationType:
    tag: str
    n: Optional[int] = None

    def __post_init__(self):
        tag = _canonical_tag(self.tag)
        object.__setattr__(self, "tag", tag)
        if tag in ("K3n", "Kum"):
            if self.n is None or self.n < 2:
                raise ValueError(f"{tag} needs n >= 2, got {self.n}")
        elif self.n is not None:
            object.__setattr__(self, "n", None)


_TAGS = {"k3n": "K3n", "kum": "Kum", "og6": "Og6", "og10": "Og10"}


def _canonical_tag(tag):
    try:
        return _TAGS[tag.lower()]
    except KeyError:
        raise UnsupportedType(f"unknown deformation type {tag!r}") from None


def bb_lattice(tag, n=None):
    """H^2 with its Beauville-Bogomolov form for the four known deformation types."""
    t = DeformationType(tag, n)
    U3 = power(hyperbolic_plane(), 3)
    E8m = power(simple_lattice("E8", -1), 2)
    if t.tag == "K3n":
        return direct_sum(U3, E8m, rank_one(2 - 2 * t.n))
    if t.tag == "Kum":
        return direct_sum(U3, rank_one(-2 - 2 * t.n))
    if t.tag == "Og6":
        return direct_sum(U3, rank_one(-2), rank_one(-2))
    return direct_sum(U3, E8m, simple_lattice("A2", -1))


def epw(k):
    """<2> + <-2>^k."""
    return direct_sum(rank_one(2), power(rank_one(-2), k))


def named_lattice(name, scale=None, n=None):
    """Look up a lattice by name.

    Besides the root lattices, ``U``, ``E6v`` and ``<q>`` this knows ``L24``,
    ``L8``, ``L26``, ``epw`` (needs ``n``) and ``bb-K3n``, ``bb-Kum``,
    ``bb-Og6``, ``bb-Og10``.
    """
    m = re.fullmatch(r"<(-?\d+)>", name)
    if m:
        L = rank_one(int(m.group(1)))
    elif name in ("L24", "Lambda24"):
        L = lambda24()
    elif name in ("L8", "Lambda8"):
        L = lambda8()
    elif name in ("L26", "Lambda26"):
        L = lambda26()
    elif name == "epw":
        if n is None:
            raise UnknownName("epw needs its parameter k")
        L = epw(n)
    elif name.startswith("bb-"):
        L = bb_lattice(name[3:], n)
    else:
        return simple_lattice(name, scale)
    return rescale(L, scale) if scale not in (None, 1) else L


def gamma_v(ambient=None, w=None, with_basis=False):
    """Index-2 gluing of w^perp with <-6> along the order-2 discriminant classes.

    With ``with_basis`` the result is ``(M, basis, base)``: the rows of
    ``basis`` give M inside ``base = w^perp + <-6>`` tensored with Q.
    """
    L = lambda24() if ambient is None else ambient
    if w is None:
        w = (1, 1) + (0,) * (L.rank - 2)
    w = tuple(w)
    if intmat.vector_gcd(w) != 1:
        raise NotPrimitive(f"{w} is not primitive")
    if L.norm(w) != 2:
        raise WrongSquare(f"w^2 = {L.norm(w)}, expected 2")
    K = orthogonal_complement(Sublattice(L, [w])).lattice()
    sigma = rank_one(-6)
    AK = discriminant_form(K)
    if AK.orders != (2,):
        raise AssertionError(f"A of w^perp is {AK.orders}, expected Z/2")
    alpha = AK.lift((1,))
    if (AK.q((1,)) + Fraction(-6, 4)) % 2:
        raise AssertionError("glue vector is not isotropic")
    base = direct_sum(K, sigma)
    glue = tuple(alpha) + (Fraction(1, 2),)
    M, basis = _overlattice(base, [glue])
    n = base.rank
    k_rows = [[int(i == j) for j in range(n)] for i in range(n - 1)]
    s_rows = [[int(j == n - 1) for j in range(n)]]
    if not (_saturated_in(basis, k_rows) and _saturated_in(basis, s_rows)):
        raise AssertionError("a gluing summand is not primitive")
    if not M.even:
        raise AssertionError("gluing produced an odd lattice")
    return (M, basis, base) if with_basis else M


# Allowed div(T) for the class T dual to a line in a section, imported from
# wall-divisor classifications; they are not derivable from Gram matrices.
SECTION_DIVISIBILITY = {"K3n": (2,), "Kum": (2,), "Og10": (1, 3)}


def _section_t_squares(tag, n, d):
    if tag == "K3n":
        return [-2 * (n + 3)]
    if tag == "Kum":
        # only T^2 mod 8 is pinned down; the class is fixed mod 2d anyway
        return [-(2 * n + 2)]
    return list(range(0, 2 * d, 2))


def _odd_part_free(L):
    return all(d % 2 == 0 and (d & (d - 1)) == 0 for d in discriminant_form(L).orders)


class SectionLattice(NamedTuple):
    lattice: Lattice
    name: str
    raw_gram: tuple
    divisibility: int


def lagrangian_section_lattice(tag, n=None):
    """Rank-2 lattice spanned by the fibre class D and the section class T.

    Gram in basis (D, T) is [[0, d], [d, T^2]] with d = div(T). Candidates whose
    discriminant group has odd torsion are discarded: the span is the invariant
    lattice of an involution.
    """
    t = DeformationType(tag, n)
    if t.tag not in SECTION_DIVISIBILITY:
        raise UnsupportedType(f"no section lattice for {t.tag}")
    survivors = []
    for d in SECTION_DIVISIBILITY[t.tag]:
        for tt in _section_t_squares(t.tag, t.n, d):
            raw = lattice([[0, d], [d, tt]])
            if _odd_part_free(raw):
                survivors.append((d, tt, raw))
    classes = {(d, tt % (2 * d)) for d, tt, _ in survivors}
    if len(classes) != 1:
        raise AssertionError(f"section lattice not unique: {sorted(classes)}")
    d, tt, raw = survivors[0]
    r = tt % (2 * d)
    if d == 1:
        canon, name = hyperbolic_plane(), "U"
    elif d == 2 and r == 0:
        canon, name = rescale(hyperbolic_plane(), 2), "U(2)"
    elif d == 2:
        canon, name = direct_sum(rank_one(2), rank_one(-2)), "<2>+<-2>"
    else:
        raise AssertionError(f"unexpected section lattice class d={d}, T^2={tt}")
    v = is_isometric_small(raw, canon)
    if not v.is_yes:
        raise AssertionError(f"reduction to {name} failed: {v}")
    return SectionLattice(canon, name, raw.gram, d)


class SectionCheck(NamedTuple):
    compatible: bool
    square: int
    divisibility: int
    allowed_pairings: tuple


def fibre_admits_section(L, F, tag):
    """Can the isotropic class F be the fibre class of a fibration with a section?

    A section class T must pair with F to div(T), an allowed value from
    SECTION_DIVISIBILITY, while every pairing with F is a multiple of div(F).
    """
    t = _canonical_tag(tag)
    sq = L.norm(F)
    div = divisibility(L, F)
    allowed = SECTION_DIVISIBILITY.get(t, ())
    ok = sq == 0 and any(c % div == 0 for c in allowed)
    return SectionCheck(ok, sq, div, allowed)


def assignment_to_k3(inv):
    """Invariants (r-1, a+1, 1) of the K3 invariant lattice after splitting off U."""
    r, a, _ = inv
    out = TwoElemInvariants(r - 1, a + 1, 1)
    if out.a > out.r:
        warnings.warn(
            f"no 2-elementary lattice has length {out.a} > rank {out.r}",
            ConsistencyWarning,
            stacklevel=2,
        )
    return out
