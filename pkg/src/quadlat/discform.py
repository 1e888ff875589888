"""Finite quadratic forms on discriminant groups, and gluing of even lattices."""
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import gcd, prod
from typing import NamedTuple, Optional

from . import intmat
from .errors import (
    CapExceeded,
    DefiniteLattice,
    NotIsotropic,
    NotTwoElementary,
    OddLattice,
)
from .lattice import Lattice, direct_sum, env_cap


def _mod(x, m):
    x = Fraction(x)
    return x - m * (x // m)


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """A finite abelian group ``prod Z/d_i`` with a Q/2Z-valued quadratic form.

    ``gram[i][i]`` is ``q(g_i) mod 2`` and ``gram[i][j]`` (i != j) is
    ``b(g_i, g_j) mod 1``. Elements are coefficient tuples ``c`` with
    ``0 <= c_i < d_i``.
    """

    orders: tuple
    gram: tuple
    lifts: Optional[tuple] = field(default=None, compare=False, repr=False)
    source: Optional[Lattice] = field(default=None, compare=False, repr=False)
    _vinv: Optional[tuple] = field(default=None, compare=False, repr=False)
    _vdiag: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        k = len(self.orders)
        gram = tuple(
            tuple(_mod(self.gram[i][j], 2 if i == j else 1) for j in range(k)) for i in range(k)
        )
        object.__setattr__(self, "gram", gram)

    @property
    def order(self):
        return prod(self.orders)

    @property
    def length(self):
        return len(self.orders)

    @property
    def exponent(self):
        e = 1
        for d in self.orders:
            e = _lcm(e, d)
        return e

    @property
    def zero(self):
        return (0,) * len(self.orders)

    def generators(self):
        k = len(self.orders)
        return [tuple(int(i == j) for j in range(k)) for i in range(k)]

    def elements(self, cap=None):
        cap = env_cap("DISC", 10**4) if cap is None else cap
        if self.order > cap:
            raise CapExceeded(f"discriminant group of order {self.order} exceeds cap {cap}")
        return list(itertools.product(*(range(d) for d in self.orders)))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def mul(self, n, x):
        return tuple((n * a) % d for a, d in zip(x, self.orders))

    def element_order(self, x):
        o = 1
        for a, d in zip(x, self.orders):
            o = _lcm(o, d // gcd(a, d))
        return o

    def q(self, x):
        k = len(x)
        s = sum(x[i] * x[i] * self.gram[i][i] for i in range(k))
        s += 2 * sum(x[i] * x[j] * self.gram[i][j] for i in range(k) for j in range(i + 1, k))
        return _mod(s, 2)

    def b(self, x, y):
        k = len(x)
        s = Fraction(0)
        for i in range(k):
            for j in range(k):
                s += x[i] * y[j] * self.gram[i][j]
        return _mod(s, 1)

    def span(self, gens):
        """The subgroup generated by ``gens`` as a frozenset."""
        seen = {self.zero}
        frontier = [self.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def lift(self, x):
        """Representative in L^dual (source-lattice coordinates, Fractions)."""
        if self.lifts is None:
            raise ValueError("abstract form has no lifts")
        n = len(self.lifts[0]) if self.lifts else (self.source.rank if self.source else 0)
        v = [Fraction(0)] * n
        for c, g in zip(x, self.lifts):
            for i in range(n):
                v[i] += c * g[i]
        return tuple(v)

    def coords(self, v):
        """Group element of a dual vector ``v`` given in source coordinates."""
        if self._vinv is None:
            raise ValueError("abstract form has no coordinate map")
        y = [sum(Fraction(a) * b for a, b in zip(row, v)) for row in self._vinv]
        out = []
        for yi, d in zip(y, self._vdiag):
            if d == 1:
                if yi.denominator != 1:
                    raise ValueError("vector is not in the dual lattice")
                continue
            c = yi * d
            if c.denominator != 1:
                raise ValueError("vector is not in the dual lattice")
            out.append(int(c) % d)
        return tuple(out)

    def is_isotropic(self, gens):
        H = self.span(gens)
        return all(self.q(h) == 0 for h in H)

    def orthogonal(self, gens):
        return frozenset(
            x for x in self.elements() if all(self.b(x, g) == 0 for g in gens)
        )

    def subquotient(self, top, bottom):
        """The form induced on ``top / bottom`` (subgroups given by generators).

        Only meaningful when ``bottom`` is isotropic and ``top`` lies in its
        orthogonal; the caller is responsible for that.
        """
        k = len(self.orders)
        box = [[d if i == j else 0 for j in range(k)] for i, d in enumerate(self.orders)]
        P = intmat.hnf([list(g) for g in top] + box)
        Q = [list(g) for g in bottom] + box
        Pinv = intmat.rational_inverse(P)
        C = [[int(x) for x in row] for row in intmat.matmul(Q, Pinv)]
        d, _, _, Vinv = intmat.smith(C)
        gens, orders = [], []
        for i, di in enumerate(d):
            if di > 1:
                vec = intmat.matmul([Vinv[i]], P)[0]
                gens.append(tuple(x % o for x, o in zip(vec, self.orders)))
                orders.append(di)
        gram = [
            [self.q(x) if i == j else self.b(x, y) for j, y in enumerate(gens)]
            for i, x in enumerate(gens)
        ]
        return FiniteQuadraticForm(tuple(orders), tuple(map(tuple, gram)))

    def value_profile(self):
        """Multiset of (element order, q value); an isomorphism invariant."""
        prof = {}
        for x in self.elements():
            key = (self.element_order(x), self.q(x))
            prof[key] = prof.get(key, 0) + 1
        return prof

    def is_isomorphic(self, other):
        if self.orders != other.orders:
            return False
        if self.order == 1:
            return True
        if self.value_profile() != other.value_profile():
            return False
        return self.find_isomorphism(other) is not None

    def find_isomorphism(self, other):
        """Images of this form's generators under an isometry onto ``other``."""
        gens = self.generators()
        q_of = [self.q(g) for g in gens]
        pool = {}
        for y in other.elements():
            pool.setdefault((other.element_order(y), other.q(y)), []).append(y)
        images = []

        def rec(i, spanned):
            if i == len(gens):
                return True
            want = prod(self.orders[: i + 1])
            for y in pool.get((self.orders[i], q_of[i]), []):
                if y in spanned:
                    continue
                if any(other.b(images[j], y) != self.gram[j][i] for j in range(i)):
                    continue
                new_span = other.span(images + [y])
                if len(new_span) != want:
                    continue
                images.append(y)
                if rec(i + 1, new_span):
                    return True
                images.pop()
            return False

        return list(images) if rec(0, frozenset({other.zero})) else None


@lru_cache(maxsize=256)
def discriminant_form(L):
    """A_L = L^dual / L with its discriminant quadratic form (memoised per Gram)."""
    if not L.even:
        raise OddLattice("discriminant quadratic form needs an even lattice")
    G = L.gram_list()
    n = L.rank
    if n == 0:
        return FiniteQuadraticForm((), (), lifts=(), source=L, _vinv=(), _vdiag=())
    d, _, V, Vinv = intmat.smith(G)
    lifts, orders = [], []
    for i, di in enumerate(d):
        if di > 1:
            lifts.append(tuple(Fraction(V[r][i], di) for r in range(n)))
            orders.append(di)
    gram = [
        [intmat.bilinear(G, u, v) for v in lifts] for u in lifts
    ]
    return FiniteQuadraticForm(
        tuple(orders),
        tuple(map(tuple, gram)),
        lifts=tuple(lifts),
        source=L,
        _vinv=tuple(map(tuple, Vinv)),
        _vdiag=tuple(d),
    )


@dataclass(frozen=True)
class DiscSubgroup:
    generators: tuple
    elements: frozenset
    form: Optional[FiniteQuadraticForm] = field(default=None, compare=False, repr=False)

    @property
    def order(self):
        return len(self.elements)

    def sort_key(self):
        return (self.order, sorted(self.elements))


def subgroup(form, gens):
    gens = tuple(tuple(g) for g in gens)
    return DiscSubgroup(gens, form.span(gens), form)


def _all_subgroups(form, elements, admissible=None, ok_with=None):
    """Every subgroup built by adjoining one admissible element at a time."""
    start = DiscSubgroup((), frozenset({form.zero}), form)
    found = {start.elements: start}
    frontier = [start]
    pool = [x for x in elements if any(x) and (admissible is None or admissible(x))]
    while frontier:
        nxt = []
        for H in frontier:
            for x in pool:
                if x in H.elements:
                    continue
                if ok_with is not None and not ok_with(H, x):
                    continue
                gens = H.generators + (x,)
                elems = form.span(gens)
                if elems not in found:
                    S = DiscSubgroup(gens, elems, form)
                    found[elems] = S
                    nxt.append(S)
        frontier = nxt
    return sorted(found.values(), key=DiscSubgroup.sort_key)


def isotropic_subgroups(A, cap=None):
    """All subgroups of ``A`` on which the quadratic form vanishes mod 2Z."""
    elements = A.elements(cap)
    return _all_subgroups(
        A,
        elements,
        admissible=lambda x: A.q(x) == 0,
        ok_with=lambda H, x: all(A.b(x, g) == 0 for g in H.generators),
    )


class TwoElemInvariants(NamedTuple):
    r: int
    a: int
    delta: int


def two_elementary_invariants(L):
    A = discriminant_form(L)
    if any(d != 2 for d in A.orders):
        raise NotTwoElementary(f"discriminant group has invariant factors {A.orders}")
    delta = 0 if all(A.gram[i][i].denominator == 1 for i in range(A.length)) else 1
    return TwoElemInvariants(L.rank, A.length, delta)


def nikulin_equal(L, M):
    """Equality of the invariants that classify indefinite 2-elementary lattices."""
    for X in (L, M):
        if X.is_definite:
            raise DefiniteLattice("the classification applies to indefinite lattices only")
    a, b = two_elementary_invariants(L), two_elementary_invariants(M)
    return (L.rank, L.signature, a.a, a.delta) == (M.rank, M.signature, b.a, b.delta)


def _overlattice(L, lifts):
    """Lattice spanned by L and rational vectors ``lifts`` (L-coordinates).

    Returns ``(M, basis)`` where ``basis`` rows are M's basis in L-coordinates.
    The basis is LLL-reduced when M is definite.
    """
    n = L.rank
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)] + [list(v) for v in lifts]
    basis = intmat.rational_row_span_basis(rows)
    G = L.gram_list()
    gram = intmat.matmul(intmat.matmul(basis, G), intmat.transpose(basis))
    if any(x.denominator != 1 for row in gram for x in row):
        raise NotIsotropic("glue vectors do not pair integrally")
    gram = [[int(x) for x in row] for row in gram]
    if any(gram[i][i] % 2 for i in range(n)):
        raise NotIsotropic("overlattice would be odd")
    M = Lattice(tuple(map(tuple, gram)))
    if M.is_definite:
        sign = 1 if M.is_positive_definite else -1
        T = intmat.lll_gram([[sign * x for x in r] for r in gram])
        basis = intmat.matmul(T, basis)
        gram = intmat.matmul(intmat.matmul(T, gram), intmat.transpose(T))
        M = Lattice(tuple(map(tuple, gram)))
    return M, basis


def _rational_det(B):
    den = intmat.common_denominator(x for r in B for x in r)
    ints = [[int(x * den) for x in r] for r in B]
    return Fraction(intmat.det(ints), den ** len(B))


def overlattice_from_isotropic(L, H):
    """The overlattice of ``L`` attached to an isotropic subgroup of A_L."""
    A = H.form if H.form is not None else discriminant_form(L)
    if A.source is not None and A.source != L:
        raise ValueError("subgroup belongs to the discriminant form of another lattice")
    if not all(A.q(h) == 0 for h in H.elements):
        raise NotIsotropic("q does not vanish on the subgroup")
    M, basis = _overlattice(L, [A.lift(g) for g in H.generators])
    index = 1 / abs(_rational_det(basis))
    if index != H.order:
        raise AssertionError(f"index {index} != |H| = {H.order}")
    AM = discriminant_form(M)
    if AM.order * H.order**2 != A.order:
        raise AssertionError("|A_M| != |A_L| / |H|^2")
    perp = A.orthogonal(H.generators)
    quotient = A.subquotient(sorted(perp), H.generators)
    if not AM.is_isomorphic(quotient):
        raise AssertionError("discriminant form of the overlattice is not H^perp/H")
    return M


def _block(L, start, size):
    return Lattice(tuple(tuple(L.gram[start + i][start + j] for j in range(size)) for i in range(size)),
                   (("", size),) if size else ())


def _split_syntactic_u(L):
    """Separate labelled U summands from the rest of L."""
    us, rest = [], []
    for label, start, size in L.blocks():
        part = _block(L, start, size).relabel(label) if size else None
        (us if label == "U" else rest).append(part)
    rest_lat = direct_sum(*rest) if rest else Lattice(())
    return us, rest_lat


def _homomorphisms(src, dst, H, target_q):
    """Injective maps H -> dst, given on H's generators, with q_dst(f(x)) = target_q(x)."""
    gens = H.generators
    cands = []
    for g in gens:
        o = src.element_order(g)
        tq = target_q(g)
        cands.append([y for y in dst.elements() if o % dst.element_order(y) == 0 and dst.q(y) == tq])
    for imgs in itertools.product(*cands):
        table = {src.zero: dst.zero}
        frontier = [src.zero]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, y in zip(gens, imgs):
                    xs, ys = src.add(x, g), dst.add(table[x], y)
                    if xs in table:
                        if table[xs] != ys:
                            ok = False
                            break
                    else:
                        table[xs] = ys
                        nxt.append(xs)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(set(table.values())) != len(table):
            continue
        if all(dst.q(table[x]) == target_q(x) for x in table):
            yield table, imgs


def _saturated_in(basis_rows, sub_rows):
    """Is span(sub_rows) primitive in the lattice with rational basis ``basis_rows``?"""
    inv = intmat.rational_inverse(basis_rows)
    coords = intmat.matmul([[Fraction(x) for x in r] for r in sub_rows], inv)
    if any(x.denominator != 1 for r in coords for x in r):
        return False
    return intmat.is_saturated([[int(x) for x in r] for r in coords])


def primitive_gluings(T, W, torsion_exponent=None, cap=None):
    """Even overlattices of T + W in which both summands stay primitive."""
    us, T0 = _split_syntactic_u(T)
    us_w, W0 = _split_syntactic_u(W)
    AT, AW = discriminant_form(T0), discriminant_form(W0)
    for A in (AT, AW):
        A.elements(cap)
    swap = AW.order > AT.order
    small, big = (AT, AW) if swap else (AW, AT)
    n_t, n_w = T0.rank, W0.rank
    base = direct_sum(T0, W0)
    results = []
    for H in _all_subgroups(small, small.elements(cap)):
        for table, imgs in _homomorphisms(small, big, H, lambda x: -small.q(x) % 2):
            lifts = []
            for g, y in zip(H.generators, imgs):
                a, b = small.lift(g), big.lift(y)
                t_part, w_part = (a, b) if swap else (b, a)
                lifts.append(tuple(t_part) + tuple(w_part))
            M, basis = _overlattice(base, lifts)
            t_rows = [[int(i == j) for j in range(n_t + n_w)] for i in range(n_t)]
            w_rows = [[int(i == j) for j in range(n_t + n_w)] for i in range(n_t, n_t + n_w)]
            if not (_saturated_in(basis, t_rows) and _saturated_in(basis, w_rows)):
                raise AssertionError("gluing along an injective graph lost primitivity")
            if torsion_exponent is not None and torsion_exponent % discriminant_form(M).exponent:
                continue
            results.append(direct_sum(*us, *us_w, M) if (us or us_w) else M)
    return results
