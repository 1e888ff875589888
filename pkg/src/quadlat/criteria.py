"""Hyperbolic-plane detection, Mukai vectors, and the induced-automorphism test."""
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import intmat
from .catalog import hyperbolic_plane, rank_one, _canonical_tag
from .discform import discriminant_form, primitive_gluings
from .errors import (
    DegenerateLattice,
    GramMismatch,
    MissingU2,
    NotPrimitive,
    OddSquare,
    UnsupportedType,
)
from .isometry import TRIVIAL
from .lattice import (
    Lattice,
    Sublattice,
    direct_sum,
    divisibility,
    env_cap,
    gcd_of_entries,
    lattice_info,
    orthogonal_complement,
    vectors_of_norm,
)
from .verdict import Verdict

# --- Mukai vectors -----------------------------------------------------------

POSITIVE = "positive"
NEGATIVE_OF_POSITIVE = "negative-of-positive"
NEITHER = "neither"


@dataclass(frozen=True)
class MukaiVector:
    """``(r, l, s)`` with ``l`` in a Neron-Severi lattice ``ns``.

    ``l_effective`` is supplied by the caller; it is not something a Gram
    matrix can decide.
    """

    r: int
    l: tuple
    s: int
    ns: Lattice
    l_effective: bool = False

    def __post_init__(self):
        object.__setattr__(self, "l", tuple(int(x) for x in self.l))
        if len(self.l) != self.ns.rank:
            raise ValueError("l has the wrong length for the Neron-Severi lattice")

    def __neg__(self):
        # -l is effective exactly when l is not (for l != 0)
        eff = (not self.l_effective) if any(self.l) else self.l_effective
        return MukaiVector(-self.r, tuple(-x for x in self.l), -self.s, self.ns, eff)

    @property
    def square(self):
        return mukai_pairing(self, self)


def mukai_pairing(v, w):
    if v.ns.gram != w.ns.gram:
        raise GramMismatch("Mukai vectors live over different Neron-Severi lattices")
    return v.ns.pair(v.l, w.l) - v.r * w.s - w.r * v.s


def _is_positive(v):
    if v.square < 2:
        return False
    if v.r > 0:
        return True
    if v.r == 0 and any(v.l):
        return v.l_effective
    return v.r == 0 and not any(v.l) and v.s > 0


def classify_mukai_vector(v):
    if _is_positive(v):
        return POSITIVE
    if _is_positive(-v):
        return NEGATIVE_OF_POSITIVE
    return NEITHER


# --- embeddings and the Eichler criterion ---------------------------------------


def _u_blocks(L):
    return [start for label, start, size in L.blocks() if label == "U" and size == 2]


def embed_corank1(target, s):
    """``v = e + (s/2) f`` in the first hyperbolic summand, and ``v^perp``."""
    if s % 2:
        raise OddSquare(f"square {s} is odd")
    if s == 0:
        raise DegenerateLattice("an isotropic v has a degenerate complement")
    blocks = _u_blocks(target)
    if not blocks:
        raise ValueError("target has no labelled hyperbolic summand")
    v = [0] * target.rank
    v[blocks[0]] = 1
    v[blocks[0] + 1] = s // 2
    v = tuple(v)
    return v, orthogonal_complement(Sublattice(target, [v]))


def eichler_equivalent(L, v, w):
    """Check the Eichler-criterion hypothesis for primitive ``v`` and ``w``.

    True iff ``v^2 = w^2`` and ``v/div(v)``, ``w/div(w)`` give the same class
    in A_L. No isometry is constructed.
    """
    if len(_u_blocks(L)) < 2:
        raise MissingU2("need two labelled hyperbolic summands")
    for x in (v, w):
        if intmat.vector_gcd(x) != 1:
            raise NotPrimitive(f"{tuple(x)} is not primitive")
    if L.norm(v) != L.norm(w):
        return False
    A = discriminant_form(L)

    def cls(x):
        d = divisibility(L, x)
        return A.coords(tuple(Fraction(c, d) for c in x))

    return cls(v) == cls(w)


# --- U summands ------------------------------------------------------------------


def _legendre(a, p):
    return pow(a % p, (p - 1) // 2, p)


def _diagonal_mod_p(G, p):
    """Nonzero diagonal entries of a congruence-diagonalisation over F_p, p odd."""
    n = len(G)
    A = [[x % p for x in r] for r in G]
    active = list(range(n))
    diag = []
    while active:
        piv = next((i for i in active if A[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and A[i][j]), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                A[i][k] = (A[i][k] + A[j][k]) % p
            for k in range(n):
                A[k][i] = (A[k][i] + A[k][j]) % p
            piv = i
        inv = pow(A[piv][piv], -1, p)
        diag.append(A[piv][piv])
        active.remove(piv)
        for i in active:
            c = A[i][piv] * inv % p
            if c:
                for k in range(n):
                    A[i][k] = (A[i][k] - c * A[piv][k]) % p
                for k in range(n):
                    A[k][i] = (A[k][i] - c * A[k][piv]) % p
    return diag


def _prime_factors(n):
    n, out, p = abs(n), [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def isotropy_obstruction(L, max_rank_mod2=16):
    """A prime p for which no vector outside the radical mod p is isotropic mod p.

    An isotropic e of divisibility 1 would be such a vector (mod 4 when p = 2),
    so a returned prime proves that L has no U summand. Returns None when no
    prime in the checked range certifies.
    """
    G = L.gram_list()
    n = L.rank
    for p in _prime_factors(2 * L.determinant):
        if p == 2:
            if n > max_rank_mod2:
                continue
            found = False
            for x in itertools.product((0, 1), repeat=n):
                Gx = intmat.matvec(G, x)
                if all(c % 2 == 0 for c in Gx):
                    continue
                if intmat.dot(x, Gx) % 4 == 0:
                    found = True
                    break
            if not found:
                return p
            continue
        d = _diagonal_mod_p(G, p)
        k = len(d)
        if k <= 1:
            return p
        if k == 2 and _legendre(-d[0] * d[1], p) != 1:
            return p
    return None


def _certificate(L, extended):
    if L.is_definite:
        return Verdict.no("definite")
    m = gcd_of_entries(L)
    if m > 1:
        return Verdict.no("scaled-gram", m=m)
    length = len(lattice_info(L).disc_summary)
    if length > L.rank - 2:
        return Verdict.no("length-obstruction", length=length, rank=L.rank)
    if extended:
        p = isotropy_obstruction(L)
        if p is not None:
            return Verdict.no("represented-values", prime=p)
    return None


def _complete(L, e):
    """Hyperbolic pair (e, f) from a primitive isotropic e of divisibility 1, or None."""
    Ge = intmat.matvec(L.gram, e)
    # coefficients c with sum c_i (Ge)_i = 1 give f' with (e, f') = 1
    g, coeffs = Ge[0], [1] + [0] * (len(Ge) - 1)
    for i in range(1, len(Ge)):
        d, a, b = intmat.xgcd(g, Ge[i])
        coeffs = [a * c for c in coeffs]
        coeffs[i] = b
        g = d
    if g < 0:
        coeffs = [-c for c in coeffs]
    fp = tuple(coeffs)
    sq = L.norm(fp)
    if sq % 2:
        return None
    f = tuple(a - (sq // 2) * b for a, b in zip(fp, e))
    return e, f


def _split_at(L, e, f):
    K = orthogonal_complement(Sublattice(L, [e, f]))
    return K, Lattice(K.gram())


def _validate(L, e, f, K):
    if L.norm(e) or L.norm(f) or L.pair(e, f) != 1:
        raise AssertionError("witness is not a hyperbolic pair")
    split = direct_sum(hyperbolic_plane(), K)
    a, b = lattice_info(L), lattice_info(split)
    if (a.rank, a.signature, a.determinant, a.disc_summary) != (
        b.rank, b.signature, b.determinant, b.disc_summary
    ):
        raise AssertionError("U + K does not match L")
    if L.even and not discriminant_form(L).is_isomorphic(discriminant_form(split)):
        raise AssertionError("U + K has a different discriminant form")


def _isotropic_in_box(G, h):
    """Isotropic x with max |x_i| <= h, first nonzero entry positive, with Gx.

    Depth-first, carrying the partial products sum_i x_i G_i so each leaf costs O(1).
    """
    n = len(G)
    x = [0] * n

    def rec(k, lin, q, started):
        if k == n:
            if started and q == 0:
                yield tuple(x), lin
            return
        lo = -h if started else 0
        for c in range(lo, h + 1):
            x[k] = c
            if c:
                # q grows by c^2 G_kk + 2c (sum_{i<k} x_i G_ik)
                q2 = q + c * (c * G[k][k] + 2 * lin[k])
                lin2 = [a + c * g for a, g in zip(lin, G[k])]
                yield from rec(k + 1, lin2, q2, True)
            else:
                yield from rec(k + 1, lin, q, started)
        x[k] = 0

    yield from rec(0, [0] * n, 0, False)


def _box_size(n, h):
    return ((2 * h + 1) ** n - 1) // 2


def contains_U(L, height_bound=2, cap=None, extended=False):
    """Does L split off a hyperbolic plane?

    Syntactic U summands answer first, then the No-certificates, then a search
    for an isotropic vector of divisibility 1 with entries bounded by
    ``height_bound``. On Yes the witness is ``(e, f)`` and
    ``detail["complement"]`` is K with L = U + K. ``extended`` adds the mod-p
    isotropy certificate to the fixed list.
    """
    blocks = _u_blocks(L)
    if blocks:
        s = blocks[0]
        e, f = L.basis_vector(s), L.basis_vector(s + 1)
        _, Klat = _split_at(L, e, f)
        return Verdict.yes((e, f), complement=Klat, route="syntactic")
    cert = _certificate(L, extended)
    if cert is not None:
        return cert
    cap = env_cap("CANDIDATES", 10**6) if cap is None else cap
    h = height_bound
    while h > 0 and _box_size(L.rank, h) > cap:
        h -= 1
    G = L.gram_list()
    isotropic = 0
    for x, Gx in _isotropic_in_box(G, h):
        isotropic += 1
        if intmat.vector_gcd(Gx) != 1:
            continue
        pair = _complete(L, x)
        if pair is None:
            continue
        e, f = pair
        _, Klat = _split_at(L, e, f)
        _validate(L, e, f, Klat)
        return Verdict.yes((e, f), complement=Klat, route="search", height=h)
    return Verdict.unknown(h, candidates=_box_size(L.rank, h), isotropic=isotropic,
                           length=len(lattice_info(L).disc_summary), rank=L.rank,
                           capped=h < height_bound)


def split_U(L, height_bound=2, cap=None, extended=False):
    """The complement K with L = U + K, or None when no split was found."""
    v = contains_U(L, height_bound, cap, extended)
    return v.detail["complement"] if v.is_yes else None


def numerical_moduli_check(algebraic_part, target, height_bound=2):
    """contains_U on the algebraic part of a Mukai lattice; Yes means a numerical moduli space."""
    if not target.is_unimodular or target.rank not in (8, 24):
        raise ValueError("target must be one of the Mukai lattices of rank 8 or 24")
    if algebraic_part.rank > target.rank:
        raise ValueError("algebraic part is larger than the target")
    return contains_U(algebraic_part, height_bound)


def complement_square(tag, n):
    tag = _canonical_tag(tag)
    if tag == "K3n":
        return 2 * n - 2
    if tag == "Kum":
        return 2 * n + 2
    raise UnsupportedType(f"no Mukai-lattice embedding recorded for {tag}")


def algebraic_part_candidates(pic, tag, n, torsion_exponent=None):
    """Primitive gluings of a Picard lattice with the rank-one complement."""
    return primitive_gluings(pic, rank_one(complement_square(tag, n)), torsion_exponent)


# --- induced automorphisms -----------------------------------------------------------

INDUCED = "Induced"
NOT_INDUCED = "NotInduced"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class InducedReport:
    disc_action: str
    candidates: tuple
    verdicts: tuple
    final: str
    symplectic_minus2: Optional[int] = None
    notes: tuple = field(default=())


def _is_prime(p):
    return p > 1 and all(p % d for d in range(2, int(p**0.5) + 1))


def induced_check(x_type, n, t_x, p, mode, disc_action, coinvariant=None,
                  height_bound=2, extended=False):
    """Can a group of order p with invariant lattice ``t_x`` come from a K3 or abelian surface?"""
    tag = _canonical_tag(x_type)
    if tag not in ("K3n", "Kum"):
        raise UnsupportedType(f"induced_check covers K3n and Kum, not {tag}")
    if mode not in ("symplectic", "nonsymplectic"):
        raise ValueError(f"unknown mode {mode!r}")
    if not _is_prime(p):
        raise ValueError(f"group order {p} is not prime")
    if disc_action != TRIVIAL:
        return InducedReport(disc_action, (), (), NOT_INDUCED,
                             notes=("action on the discriminant group is not trivial",))
    notes = []
    minus2 = None
    if mode == "symplectic" and coinvariant is not None:
        S = coinvariant
        minus2 = len(vectors_of_norm(S, -2)) if S.is_negative_definite else None
        if minus2 is None:
            raise ValueError("co-invariant lattice of a symplectic action must be negative definite")
    cands = tuple(algebraic_part_candidates(t_x, tag, n, p))
    verdicts = tuple(contains_U(c, height_bound, extended=extended) for c in cands)
    if not cands:
        final = UNKNOWN
        notes.append("no gluing passes the torsion filter")
    elif any(v.is_yes for v in verdicts):
        final = INDUCED
    elif all(v.is_no for v in verdicts):
        final = NOT_INDUCED
    else:
        final = UNKNOWN
    if minus2:
        final = UNKNOWN
        notes.append(f"co-invariant lattice has {minus2} vectors of square -2")
    return InducedReport(TRIVIAL, cands, verdicts, final, minus2, tuple(notes))

