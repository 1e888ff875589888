import random

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from quadlat import intmat

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def random_unimodular(rng, n, steps=6):
    """Product of elementary row operations and sign flips."""
    M = intmat.identity(n)
    for _ in range(steps):
        if n == 1:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    k = rng.randrange(n)
    M[k] = [-x for x in M[k]]
    return M


def conjugate(G, P):
    """P G P^T, the Gram matrix in the basis given by the rows of P."""
    return intmat.matmul(intmat.matmul(P, G), intmat.transpose(P))


@st.composite
def even_grams(draw, max_rank=4, bound=4):
    n = draw(st.integers(1, max_rank))
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = 2 * draw(st.integers(-bound, bound))
        for j in range(i + 1, n):
            G[i][j] = G[j][i] = draw(st.integers(-bound, bound))
    return G


@pytest.fixture
def rng():
    return random.Random(20261019)
