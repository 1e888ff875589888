"""Finite-order isometries, fixed lattices and their action on discriminant groups.

Matrices act on column coordinate vectors: the j-th column of ``matrix`` is the
image of the j-th basis vector, and ``matrix^T G matrix = G``.
"""
from dataclasses import dataclass
from fractions import Fraction

from . import intmat
from .discform import discriminant_form
from .errors import (
    DiscActionNontrivial,
    NonIntegralReflection,
    NotAnIsometry,
    NotPrimitive,
    NotUnimodular,
    OrderCapExceeded,
    ZeroVector,
)
from .lattice import Sublattice, env_cap, orthogonal_complement, saturate

TRIVIAL = "trivial"
MINUS_IDENTITY = "minus-identity"
OTHER = "other"


@dataclass(frozen=True)
class Isometry:
    lattice: object
    matrix: tuple
    order: int

    def apply(self, v):
        return tuple(intmat.matvec(self.matrix, v))

    def matrix_list(self):
        return [list(r) for r in self.matrix]

    def __matmul__(self, other):
        M = intmat.matmul(self.matrix_list(), other.matrix_list())
        return make_isometry(self.lattice, M)

    def power(self, k):
        M = intmat.identity(self.lattice.rank)
        for _ in range(k % self.order):
            M = intmat.matmul(self.matrix_list(), M)
        return M


def _order(P, cap):
    n = len(P)
    I = intmat.identity(n)
    M = [list(r) for r in P]
    for k in range(1, cap + 1):
        if M == I:
            return k
        M = intmat.matmul(P, M)
    raise OrderCapExceeded(f"no power up to {cap} is the identity")


def make_isometry(L, P, order_cap=None):
    order_cap = env_cap("ORDER", 120) if order_cap is None else order_cap
    P = [[int(x) for x in row] for row in P]
    if len(P) != L.rank or any(len(r) != L.rank for r in P):
        raise NotAnIsometry("matrix size does not match the lattice rank")
    G = L.gram_list()
    if intmat.matmul(intmat.matmul(intmat.transpose(P), G), P) != G:
        raise NotAnIsometry("P^T G P != G")
    return Isometry(L, tuple(map(tuple, P)), _order(P, order_cap))


def _reflection_matrix(L, v, negate):
    if not any(v):
        raise ZeroVector("cannot reflect in the zero vector")
    vv = L.norm(v)
    if vv == 0:
        raise NonIntegralReflection("isotropic vector")
    Gv = intmat.matvec(L.gram, v)
    if any((2 * x) % vv for x in Gv):
        raise NonIntegralReflection(f"v^2 = {vv} does not divide 2(x, v) for every x")
    n = L.rank
    sign = -1 if negate else 1
    cols = []
    for i in range(n):
        c = 2 * Gv[i] // vv
        cols.append([sign * (int(i == k) - c * v[k]) for k in range(n)])
    return intmat.transpose(cols)


def reflection(L, v):
    """x -> x - 2(x,v)/v^2 v."""
    return make_isometry(L, _reflection_matrix(L, v, False))


def negated_reflection(L, v):
    """x -> -x + 2(x,v)/v^2 v, which fixes v and negates v^perp."""
    return make_isometry(L, _reflection_matrix(L, v, True))


def invariant_and_coinvariant(L, group):
    """Fixed lattice of the generators and its orthogonal complement."""
    n = L.rank
    rows = []
    for g in group:
        if g.lattice != L:
            raise ValueError("isometry acts on a different lattice")
        for i in range(n):
            rows.append([g.matrix[i][j] - int(i == j) for j in range(n)])
    if not rows or not any(any(r) for r in rows):
        fixed = Sublattice(L, intmat.identity(n))
    else:
        K = intmat.kernel(rows)
        fixed = Sublattice(L, intmat.hnf(K) if K else ())
    fixed = saturate(fixed)
    return fixed, orthogonal_complement(fixed)


@dataclass(frozen=True)
class DiscAction:
    map: tuple
    classification: str


def disc_action(L, g):
    """The automorphism of A_L induced by ``g``; ``map[i]`` is the image of generator i."""
    A = discriminant_form(L)
    images = []
    for x in A.generators():
        v = A.lift(x)
        images.append(A.coords(tuple(intmat.matvec(g.matrix, v))))
    gens = A.generators()
    if images == gens:
        kind = TRIVIAL
    elif images == [A.neg(x) for x in gens]:
        kind = MINUS_IDENTITY
    else:
        kind = OTHER
    return DiscAction(tuple(images), kind)


def extend_to_unimodular(M, group):
    """Extend isometries of a primitive sublattice M of a unimodular lattice.

    Each ``g`` in ``group`` must be an isometry of ``M.lattice()`` acting
    trivially on A_M; the extension acts as the identity on M^perp.
    """
    L = M.ambient
    if not L.is_unimodular:
        raise NotUnimodular(f"ambient determinant is {L.determinant}")
    if not M.primitive:
        raise NotPrimitive("M must be primitive in L")
    ML = M.lattice()
    for g in group:
        if disc_action(ML, g).classification != TRIVIAL:
            raise DiscActionNontrivial("the isometry does not act trivially on A_M")
    C = orthogonal_complement(M)
    B = [list(r) for r in M.basis] + [list(r) for r in C.basis]
    Bt = intmat.transpose(B)
    Bt_inv = intmat.rational_inverse(Bt)
    out = []
    r = M.rank
    n = L.rank
    for g in group:
        block = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i < r and j < r:
                    block[i][j] = Fraction(g.matrix[i][j])
                elif i == j:
                    block[i][j] = Fraction(1)
        Q = intmat.matmul(intmat.matmul(Bt, block), Bt_inv)
        if any(x.denominator != 1 for row in Q for x in row):
            raise AssertionError("extension is not integral despite trivial discriminant action")
        out.append(make_isometry(L, [[int(x) for x in row] for row in Q]))
    return out
