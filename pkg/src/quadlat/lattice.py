"""Integral lattices given by Gram matrices, and the basic operations on them."""
import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import NamedTuple

from . import intmat
from .errors import (
    CapExceeded,
    DegenerateLattice,
    IndefiniteLattice,
    RankMismatch,
    ZeroVector,
)
from .verdict import Verdict


def env_cap(name, default):
    value = os.environ.get(f"QUADLAT_CAP_{name}")
    return int(value) if value else default


class Signature(NamedTuple):
    positive: int
    negative: int


@dataclass(frozen=True)
class Lattice:
    """A free Z-module with a symmetric integer Gram matrix.

    ``summands`` records how the lattice was assembled, as ``(label, size)``
    pairs covering consecutive coordinate blocks. It is bookkeeping only: it
    does not take part in equality, and an unlabelled block has label ``""``.
    """

    gram: tuple
    summands: tuple = field(default=(), compare=False)
    allow_degenerate: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", gram)
        summands = tuple(self.summands) or ((("", n),) if n else ())
        if sum(size for _, size in summands) != n:
            raise ValueError("summand sizes do not cover the rank")
        object.__setattr__(self, "summands", summands)
        if not self.allow_degenerate and n and self.determinant == 0:
            raise DegenerateLattice("Gram matrix is singular")

    @property
    def rank(self):
        return len(self.gram)

    @cached_property
    def determinant(self):
        return intmat.det([list(r) for r in self.gram])

    @property
    def even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @cached_property
    def _signature(self):
        return intmat.signature([list(r) for r in self.gram])

    @property
    def signature(self):
        pos, neg, _ = self._signature
        return Signature(pos, neg)

    @property
    def is_positive_definite(self):
        return self._signature[0] == self.rank

    @property
    def is_negative_definite(self):
        return self._signature[1] == self.rank

    @property
    def is_definite(self):
        return self.rank > 0 and (self.is_positive_definite or self.is_negative_definite)

    @property
    def is_unimodular(self):
        return abs(self.determinant) == 1

    def pair(self, u, v):
        return intmat.bilinear(self.gram, u, v)

    def norm(self, v):
        return self.pair(v, v)

    def gram_list(self):
        return [list(r) for r in self.gram]

    def basis_vector(self, i):
        return tuple(int(i == j) for j in range(self.rank))

    def blocks(self):
        """Yield ``(label, start, size)`` for each recorded summand."""
        start = 0
        for label, size in self.summands:
            yield label, start, size
            start += size

    def relabel(self, label):
        return Lattice(self.gram, ((label, self.rank),) if self.rank else ())

    def __repr__(self):
        labels = [lab for lab, _ in self.summands]
        if labels and all(labels):
            return f"Lattice({' + '.join(labels)})"
        return f"Lattice(gram={[list(r) for r in self.gram]})"


def lattice(gram, label=""):
    gram = tuple(tuple(r) for r in gram)
    return Lattice(gram, ((label, len(gram)),) if gram else ())


def direct_sum(*lattices):
    n = sum(L.rank for L in lattices)
    gram = [[0] * n for _ in range(n)]
    off = 0
    summands = []
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                gram[off + i][off + j] = L.gram[i][j]
        off += L.rank
        summands.extend(L.summands)
    return Lattice(tuple(map(tuple, gram)), tuple(summands))


def rescale(L, n):
    if n == 0:
        raise ValueError("scale must be nonzero")
    gram = tuple(tuple(n * x for x in row) for row in L.gram)
    summands = tuple((f"{lab}({n})" if lab and n != 1 else lab, size) for lab, size in L.summands)
    return Lattice(gram, summands)


@dataclass(frozen=True)
class LatticeInfo:
    rank: int
    signature: Signature
    determinant: int
    even: bool
    disc_summary: tuple


def lattice_info(L):
    d = intmat.smith(L.gram_list())[0] if L.rank else []
    return LatticeInfo(
        rank=L.rank,
        signature=L.signature,
        determinant=L.determinant,
        even=L.even,
        disc_summary=tuple(x for x in d if x > 1),
    )


def invariant_factors(L):
    return lattice_info(L).disc_summary


@dataclass(frozen=True)
class Sublattice:
    """The span of integer row vectors inside an ambient lattice."""

    ambient: Lattice
    basis: tuple

    def __post_init__(self):
        basis = tuple(tuple(int(x) for x in row) for row in self.basis)
        if any(len(row) != self.ambient.rank for row in basis):
            raise ValueError("basis rows must have ambient rank length")
        if basis and intmat.rank([list(r) for r in basis]) != len(basis):
            raise ValueError("basis rows must be linearly independent")
        object.__setattr__(self, "basis", basis)

    @property
    def rank(self):
        return len(self.basis)

    @cached_property
    def primitive(self):
        return intmat.is_saturated([list(r) for r in self.basis])

    def gram(self):
        G = self.ambient.gram
        return tuple(
            tuple(intmat.bilinear(G, u, v) for v in self.basis) for u in self.basis
        )

    def lattice(self):
        return Lattice(self.gram(), allow_degenerate=True)

    def to_ambient(self, coords):
        """Ambient coordinates of an integer combination of the basis rows."""
        out = [0] * self.ambient.rank
        for c, row in zip(coords, self.basis):
            for i, x in enumerate(row):
                out[i] += c * x
        return tuple(out)


def saturate(S):
    if not S.basis:
        return S
    return Sublattice(S.ambient, intmat.saturate_rows([list(r) for r in S.basis]))


def orthogonal_complement(S):
    L = S.ambient
    if not S.basis:
        return Sublattice(L, intmat.identity(L.rank))
    M = [intmat.matvec(L.gram, row) for row in S.basis]
    K = intmat.kernel(M)
    return Sublattice(L, intmat.hnf(K) if K else ())


def divisibility(L, v):
    if not any(v):
        raise ZeroVector("divisibility of the zero vector is undefined")
    return intmat.vector_gcd(intmat.matvec(L.gram, v))


def _ldl(G):
    n = len(G)
    q = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        q[i][i] = Fraction(G[i][i]) - sum(q[k][k] * q[k][i] ** 2 for k in range(i))
        for j in range(i + 1, n):
            q[i][j] = (G[i][j] - sum(q[k][k] * q[k][i] * q[k][j] for k in range(i))) / q[i][i]
    return q


def _short_vectors(G, bound):
    """All x != 0 with x^T G x <= bound, G positive definite (Fincke-Pohst)."""
    n = len(G)
    q = _ldl(G)
    x = [0] * n
    out = []

    def rec(i, budget):
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        c = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        t = c.numerator // c.denominator
        while q[i][i] * (t - c) ** 2 <= budget:
            t -= 1
        t += 1
        while q[i][i] * (t - c) ** 2 <= budget:
            x[i] = t
            rec(i - 1, budget - q[i][i] * (t - c) ** 2)
            t += 1
        x[i] = 0

    rec(n - 1, Fraction(bound))
    return out


def vectors_of_norm(L, n, cap=None):
    """All vectors of square ``n`` in a definite lattice, lexicographically."""
    cap = env_cap("VECTORS", 10**6) if cap is None else cap
    if L.is_positive_definite:
        G, target = L.gram_list(), n
    elif L.is_negative_definite:
        G, target = [[-x for x in row] for row in L.gram], -n
    else:
        raise IndefiniteLattice("short vector enumeration needs a definite lattice")
    if target < 0:
        return []
    if target == 0:
        raise ValueError("norm 0 only contains the zero vector")
    found = [v for v in _short_vectors(G, target) if intmat.bilinear(G, v, v) == target]
    if len(found) > cap:
        raise CapExceeded(f"{len(found)} vectors of norm {n} exceed cap {cap}")
    return sorted(found)


def _components(G):
    n = len(G)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and G[i][j]:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _represented_values(G, m):
    """The set {x^T G x mod m}, by depth-first enumeration of (Z/m)^n."""
    n = len(G)
    out = set()

    def rec(k, lin, q):
        if k == n - 1:
            for c in range(m):
                out.add((q + c * (c * G[k][k] + 2 * lin[k])) % m)
            return
        for c in range(m):
            q2 = (q + c * (c * G[k][k] + 2 * lin[k])) % m
            rec(k + 1, [(a + c * g) % m for a, g in zip(lin, G[k])], q2)

    if n:
        rec(0, [0] * n, 0)
    else:
        out.add(0)
    return frozenset(out)


def _search_witness(GL, GM, candidates):
    """Backtrack over columns of P with P^T GL P = GM."""
    n = len(GM)
    cols = []

    def rec(j):
        if j == n:
            return True
        for v in candidates(GM[j][j]):
            Gv = intmat.matvec(GL, v)
            if all(intmat.dot(cols[i], Gv) == GM[i][j] for i in range(j)):
                cols.append(v)
                if rec(j + 1):
                    return True
                cols.pop()
        return False

    if rec(0):
        return intmat.transpose([list(c) for c in cols])
    return None


def _check_witness(L, M, P):
    return intmat.matmul(intmat.matmul(intmat.transpose(P), L.gram_list()), P) == M.gram_list()


def is_isometric_small(L, M, bound=8):
    """Decide L ~ M for small ranks; Yes carries P with P^T G_L P = G_M."""
    if L.rank != M.rank:
        raise RankMismatch(f"ranks {L.rank} and {M.rank} differ")
    n = L.rank
    if L.signature != M.signature:
        return Verdict.no("signature", left=L.signature, right=M.signature)
    if L.even != M.even:
        return Verdict.no("parity")
    if L.determinant != M.determinant:
        return Verdict.no("determinant", left=L.determinant, right=M.determinant)
    if L.gram == M.gram:
        return Verdict.yes(intmat.identity(n))
    for m in (4, 8, 3, 9, 5):
        if m**n > 10**5:
            continue
        a, b = _represented_values(L.gram, m), _represented_values(M.gram, m)
        if a != b:
            return Verdict.no("represented-values", modulus=m, left=sorted(a), right=sorted(b))
    if L.even:
        from .discform import discriminant_form

        if not discriminant_form(L).is_isomorphic(discriminant_form(M)):
            return Verdict.no("disc-form")

    verdict = _match_components(L, M, bound)
    if verdict is not None:
        return verdict

    if L.is_definite:
        return _definite_isometry(L, M)
    if n > 4:
        return Verdict.unknown(bound, reason="indefinite rank above 4 without matching block structure")
    box = [
        v for v in itertools.product(range(-bound, bound + 1), repeat=n) if any(v)
    ]
    by_norm = {}
    for v in box:
        by_norm.setdefault(L.norm(v), []).append(v)
    P = _search_witness(L.gram, M.gram, lambda a: by_norm.get(a, []))
    if P is not None:
        assert _check_witness(L, M, P)
        return Verdict.yes(P)
    return Verdict.unknown(bound, reason="box search exhausted")


def _definite_isometry(L, M):
    GM = M.gram_list()
    sign = 1 if M.is_positive_definite else -1
    T = intmat.lll_gram([[sign * x for x in r] for r in GM])
    GMr = intmat.matmul(intmat.matmul(T, GM), intmat.transpose(T))
    cache = {}

    def candidates(a):
        if a not in cache:
            cache[a] = vectors_of_norm(L, a)
        return cache[a]

    Pr = _search_witness(L.gram, GMr, candidates)
    if Pr is None:
        return Verdict.no("exhaustive")
    Tinv = [[int(x) for x in row] for row in intmat.rational_inverse(T)]
    P = intmat.matmul(Pr, intmat.transpose(Tinv))
    assert _check_witness(L, M, P)
    return Verdict.yes(P)


def _match_components(L, M, bound):
    cl, cm = _components(L.gram), _components(M.gram)
    if len(cl) == 1 and len(cm) == 1:
        return None
    if sorted(map(len, cl)) != sorted(map(len, cm)):
        return None
    n = L.rank
    P = [[0] * n for _ in range(n)]
    used = set()
    for comp_m in cm:
        sub_m = Lattice(tuple(tuple(M.gram[i][j] for j in comp_m) for i in comp_m))
        for k, comp_l in enumerate(cl):
            if k in used or len(comp_l) != len(comp_m):
                continue
            sub_l = Lattice(tuple(tuple(L.gram[i][j] for j in comp_l) for i in comp_l))
            v = is_isometric_small(sub_l, sub_m, bound)
            if v.is_yes:
                used.add(k)
                for a, i in enumerate(comp_l):
                    for b, j in enumerate(comp_m):
                        P[i][j] = v.witness[a][b]
                break
        else:
            return None
    assert _check_witness(L, M, P)
    return Verdict.yes(P)


def gcd_of_entries(L):
    g = 0
    for row in L.gram:
        for x in row:
            g = gcd(g, x)
    return g
