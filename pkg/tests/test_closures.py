import random
from itertools import combinations, product

import pytest
from scipy.optimize import linprog

from fsing import (Ideal, PolyRing, RingCtx, bracket_power, briancon_skoda_check, frobenius_closure_test,
                   member, monomial_integral_closure, tau_hypersurface, tight_closure_witness)
from fsing.closures import IN, OUT, UNKNOWN, monomial_exponents
from fsing.errors import NotMonomial, ZeroMultiplier
from fsing.ideal import ideal_power

from conftest import homogeneous_component_rank, monomials_of_degree, rank_mod_p


def ideal(S, *gens):
    return Ideal(S, [S.parse(g) for g in gens])


def in_hull_lp(point, exps, k=1):
    """point in k*conv(exps) + R^n_{>=0}, decided by a feasibility LP."""
    m, n = len(exps), len(point)
    # variables lambda_j >= 0 with sum = k and sum lambda_j v_j <= point
    A_ub = [[exps[j][i] for j in range(m)] for i in range(n)]
    res = linprog(c=[0] * m, A_ub=A_ub, b_ub=list(point), A_eq=[[1] * m], b_eq=[k],
                  bounds=[(0, None)] * m, method="highs")
    return res.status == 0


def closure_by_lp(S, exps, k=1):
    bounds = [k * max(v[i] for v in exps) for i in range(S.n)]
    pts = [a for a in product(*(range(b + 1) for b in bounds)) if in_hull_lp(a, exps, k)]
    return Ideal(S, [S.monomial(a) for a in pts])


S2v = PolyRing(5, ("x", "y"))
S3v = PolyRing(3, ("x", "y", "z"))


# -- integral closure -----------------------------------------------------

@pytest.mark.parametrize("gens,expected", [
    (["x"], ["x"]),
    (["x^2", "y^2"], ["x^2", "x*y", "y^2"]),
    (["x^3", "y^2"], ["x^3", "x^2*y", "y^2"]),
])
def test_intclosure_examples(gens, expected):
    I = ideal(S2v, *gens)
    assert monomial_integral_closure(I) == ideal(S2v, *expected)
    assert closure_by_lp(S2v, monomial_exponents(I)) == ideal(S2v, *expected)


def test_midpoint():
    assert member(S2v.parse("x^2*y^2"), monomial_integral_closure(ideal(S2v, "x^4", "y^4")))
    assert in_hull_lp((2, 2), [(4, 0), (0, 4)])


def test_intclosure_against_lp():
    rng = random.Random(23)
    for _ in range(40):
        S = S3v if rng.random() < 0.5 else S2v
        exps = [tuple(rng.randint(0, 4) for _ in range(S.n)) for _ in range(rng.randint(1, 3))]
        I = Ideal(S, [S.monomial(v) for v in exps])
        k = rng.randint(1, 2)
        assert monomial_integral_closure(I, k) == closure_by_lp(S, monomial_exponents(I), k)


def test_intclosure_contains_ideal_and_is_idempotent():
    rng = random.Random(4)
    for _ in range(30):
        exps = [tuple(rng.randint(0, 5) for _ in range(2)) for _ in range(3)]
        I = Ideal(S2v, [S2v.monomial(v) for v in exps])
        bar = monomial_integral_closure(I)
        assert I.issubset(bar)
        assert monomial_integral_closure(bar) == bar


def test_not_monomial():
    with pytest.raises(NotMonomial):
        monomial_integral_closure(ideal(S2v, "x+y"))


@pytest.mark.parametrize("gens,m", [(["x", "y"], 1), (["x^2", "y^3"], 2), (["x"], 3)])
def test_briancon_skoda_examples(gens, m):
    I = ideal(S2v, *gens)
    assert briancon_skoda_check(I, m)
    n = len(gens)
    # the same containment via the LP hull oracle
    assert closure_by_lp(S2v, [e for e, _ in [g.terms()[0] for g in ideal_power(I, m + n).gens]]) \
        .issubset(ideal_power(I, m))


def test_pull_off_bracket_power():
    # a^{r q} inside a^[q] a^{(r-1) q} for r-generated monomial ideals, e = 1
    rng = random.Random(5)
    S = PolyRing(2, ("x", "y"))
    for _ in range(20):
        r = rng.randint(1, 3)
        a = Ideal(S, [S.monomial((rng.randint(0, 3), rng.randint(0, 3))) for _ in range(r)])
        lhs = ideal_power(a, r * 2)
        rhs = bracket_power(a, 1) * ideal_power(a, (r - 1) * 2)
        assert lhs.issubset(rhs)


# -- Frobenius closure ----------------------------------------------------

def test_fclosure_polynomial():
    assert frobenius_closure_test(S2v.parse("x"), ideal(S2v, "x^2"), 1).status == OUT
    v = frobenius_closure_test(S2v.parse("x^2*y"), ideal(S2v, "x^2"), 1)
    assert v.status == IN and v.witness == {"e": 0}


def _homogeneous_member(f, gens, p):
    """Independent check that homogeneous f lies in (gens) via one graded piece."""
    S = f.ring
    d = f.degree()
    rank, cols = homogeneous_component_rank(gens, d, S)
    index = {c: i for i, c in enumerate(cols)}
    row = [0] * len(cols)
    for e, c in f.terms():
        row[index[tuple(e)]] = c
    rows = []
    for g in gens:
        if g.degree() <= d:
            for mono in monomials_of_degree(S.n, d - g.degree()):
                r = [0] * len(cols)
                for e, c in g.shift(mono).terms():
                    r[index[tuple(e)]] = c
                rows.append(r)
    return rank_mod_p(rows + [row], p) == rank


def test_fclosure_exhaustive_search():
    # all cubic forms over F_2 in a few monomials; look for z^2 in (x,y)^F \ (x,y)
    S = PolyRing(2, ("x", "y", "z"))
    mons = [(3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1), (2, 1, 0), (0, 1, 2)]
    found = 0
    for k in range(1, len(mons) + 1):
        for sub in combinations(mons, k):
            f = S.from_dict({m: 1 for m in sub})
            R = RingCtx(2, S.vars, [f])
            I = ideal(S, "x", "y")
            z = S.parse("z^2")
            v = frobenius_closure_test(z, I, 2, R)
            assert v.status != IN or v.witness["e"] >= 0
            if v.status == IN and v.witness["e"] > 0:
                q = 2 ** v.witness["e"]
                gens = [S.gen(0) ** q, S.gen(1) ** q, f]
                assert _homogeneous_member(z.frobenius(v.witness["e"]), gens, 2)
                assert not member(z, R.lift(I))
                found += 1
    assert found > 0


def test_fclosure_fermat_cubic_char2():
    S = PolyRing(2, ("x", "y", "z"))
    R = RingCtx(2, S.vars, [S.parse("x^3+y^3+z^3")])
    v = frobenius_closure_test(S.parse("z^2"), ideal(S, "x", "y"), 2, R)
    assert v.status == IN and v.witness == {"e": 1}


def test_fclosure_fpure_graded_certificate():
    S = PolyRing(7, ("x", "y", "z"))
    R = RingCtx(7, S.vars, [S.parse("x^3+y^3+z^3")])
    v = frobenius_closure_test(S.parse("z^2"), ideal(S, "x", "y"), 1, R)
    assert v.status == OUT and v.proven


def test_fclosure_inconclusive_non_fpure():
    S = PolyRing(5, ("x", "y", "z"))
    R = RingCtx(5, S.vars, [S.parse("x^3+y^3+z^3")])
    # z^10 = -z (x^3+y^3)^3 lies in (x^5, y^5), a witness at e = 1
    assert frobenius_closure_test(S.parse("z^2"), ideal(S, "x", "y"), 1, R).witness == {"e": 1}
    v = frobenius_closure_test(S.parse("z"), ideal(S, "x", "y"), 1, R)
    assert v.status == UNKNOWN and not v.proven


# -- tight closure --------------------------------------------------------

def test_tc_polynomial_c1_matches_member():
    rng = random.Random(42)
    S = PolyRing(3, ("x", "y"))
    for _ in range(60):
        I = Ideal(S, [S.monomial((rng.randint(0, 3), rng.randint(0, 3))) for _ in range(2)])
        z = S.monomial((rng.randint(0, 3), rng.randint(0, 3)))
        v = tight_closure_witness(z, I, S.one(), 2)
        assert (v.status == IN) == member(z, I)
        if v.status == OUT:
            assert v.witness["q"] == 1


def test_tc_elliptic_bounded_evidence():
    S = PolyRing(5, ("x", "y", "z"))
    R = RingCtx(5, S.vars, [S.parse("x^3+y^3+z^3")])
    v = tight_closure_witness(S.parse("z^2"), ideal(S, "x", "y"), S.parse("x"), 4, R)
    assert v.status == IN and not v.proven
    for e in range(5):
        assert member(S.parse("x") * S.parse("z^2").frobenius(e),
                      R.lift(bracket_power(ideal(S, "x", "y"), e)))


def test_tc_certified_not_in_closure():
    # z is not in (x, y)* in the p = 7 cone: c = x is in tau(R) = m
    S = PolyRing(7, ("x", "y", "z"))
    R = RingCtx(7, S.vars, [S.parse("x^3+y^3+z^3")])
    c = S.parse("x")
    v = tight_closure_witness(S.parse("z"), ideal(S, "x", "y"), c, 3, R)
    assert v.status == OUT and v.proven
    q = v.witness["q"]
    e = {7 ** k: k for k in range(4)}[q]
    assert member(c, tau_hypersurface(R).ideal)
    assert not member(c * S.parse("z").frobenius(e), R.lift(bracket_power(ideal(S, "x", "y"), e)))


def test_tc_zero_multiplier():
    S = PolyRing(5, ("x", "y", "z"))
    R = RingCtx(5, S.vars, [S.parse("x^3+y^3+z^3")])
    with pytest.raises(ZeroMultiplier):
        tight_closure_witness(S.parse("z"), ideal(S, "x"), S.parse("x^3+y^3+z^3"), 1, R)


def test_containment_chain_on_monomials():
    # I, then verified Frobenius-closure members, then tight-closure evidence, inside the integral closure
    rng = random.Random(77)
    S = PolyRing(2, ("x", "y"))
    for _ in range(30):
        I = Ideal(S, [S.monomial((rng.randint(0, 4), rng.randint(0, 4))) for _ in range(2)])
        bar = monomial_integral_closure(I)
        z = S.monomial((rng.randint(0, 4), rng.randint(0, 4)))
        if frobenius_closure_test(z, I, 2).status == IN:
            assert member(z, bar)
        if tight_closure_witness(z, I, S.gen(0), 2).status == IN:
            assert member(z, bar)
