"""Shared strategies and independent oracles for the test suite."""

import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from fsing import Ideal, PolyRing

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_poly(rng: random.Random, S: PolyRing, terms=3, deg=3):
    d = {}
    for _ in range(rng.randint(1, terms)):
        e = tuple(rng.randint(0, deg) for _ in range(S.n))
        d[e] = rng.randrange(1, S.p)
    return S.from_dict(d)


def random_monomial_ideal(rng, S, gens=3, deg=4):
    out = []
    for _ in range(rng.randint(1, gens)):
        out.append(S.monomial(tuple(rng.randint(0, deg) for _ in range(S.n))))
    return Ideal(S, out)


@st.composite
def polys(draw, S, terms=4, deg=3):
    d = draw(st.dictionaries(st.tuples(*[st.integers(0, deg)] * S.n),
                             st.integers(0, S.p - 1), max_size=terms))
    return S.from_dict(d)


def rank_mod_p(rows, p):
    """Rank of an integer matrix over F_p by plain Gaussian elimination."""
    m = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def monomials_of_degree(n, d):
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            yield (a,) + rest


def homogeneous_component_rank(gens, d, S):
    """dim_k (I)_d for homogeneous generators, by spanning all m*g."""
    cols = list(monomials_of_degree(S.n, d))
    index = {c: i for i, c in enumerate(cols)}
    rows = []
    for g in gens:
        gd = g.degree()
        if gd > d:
            continue
        for mono in monomials_of_degree(S.n, d - gd):
            row = [0] * len(cols)
            for e, c in g.shift(mono).terms():
                row[index[tuple(e)]] = c
            rows.append(row)
    return (rank_mod_p(rows, S.p) if rows else 0), cols


def monomial_root(exps, q):
    return tuple(a // q for a in exps)


@pytest.fixture
def rng():
    return random.Random(20261019)
