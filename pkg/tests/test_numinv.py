import logging
from fractions import Fraction

import pytest

from fsing import Ideal, PolyRing, RingCtx, fedder_is_fpure, fsig_sequence, hk_sequence, splitting_prime_approx
from fsing.errors import NotFPure, NotZeroDimensional
from fsing.numinv import default_emax, level_one_compatible


def ring(p, vars, *J):
    S = PolyRing(p, vars)
    return RingCtx(p, vars, [S.parse(g) for g in J] or None)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_regular_ring_counts(p, n):
    R = ring(p, ("x", "y", "z")[:n])
    e_max = 3 if p ** (3 * n) <= 20000 else 2
    hk = hk_sequence(R, e_max=e_max)
    fs = fsig_sequence(R, e_max=e_max)
    for e, (l, a) in enumerate(zip(hk.counts, fs.counts), start=1):
        assert l == a == p ** (e * n)
    assert hk.ratios == [1] * e_max and fs.limit_estimate == 1


def test_han_monsky_lengths():
    R = ring(5, ("w", "x", "y", "z"), "w^4+x^4+y^4+z^4")
    est = hk_sequence(R, e_max=2)
    assert est.dimension == 3
    assert est.counts == [339, 43017]
    # closed form 168/61 q^3 - 107/61 3^e
    for e, l in enumerate(est.counts, start=1):
        assert Fraction(168, 61) * 5 ** (3 * e) - Fraction(107, 61) * 3 ** e == l
    assert abs(est.ratios[1] - Fraction(168, 61)) <= Fraction(2, 1000)


def test_regular_sequence_hk_constant():
    S = PolyRing(3, ("x", "y"))
    R = RingCtx(3, S.vars)
    est = hk_sequence(R, Ideal(S, [S.parse("x^2"), S.parse("y^3")]), e_max=3)
    assert est.ratios == [6, 6, 6]
    assert est.converged_hint


def test_hk_not_m_primary():
    S = PolyRing(3, ("x", "y"))
    with pytest.raises(NotZeroDimensional):
        hk_sequence(RingCtx(3, S.vars), Ideal(S, [S.gen(0)]), e_max=1)


def test_a1_signature():
    R = ring(5, ("x", "y", "z"), "x*y-z^2")
    est = fsig_sequence(R, e_max=2)
    assert est.counts == [13, 313]
    assert abs(est.ratios[1] - Fraction(1, 2)) <= Fraction(5, 100)


def test_elliptic_signature_zero():
    R = ring(5, ("x", "y", "z"), "x^3+y^3+z^3")
    assert fsig_sequence(R, e_max=2).counts == [0, 0]


@pytest.mark.parametrize("p,f", [(5, "x*y-z^2"), (7, "x^3+y^3+z^3"), (5, "x^3+y^3+z^3"),
                                 (3, "x^2+y^3+z^5"), (2, "x*y*z")])
def test_signature_vs_hk_and_fedder(p, f):
    R = ring(p, ("x", "y", "z"), f)
    a = fsig_sequence(R, e_max=2).counts
    l = hk_sequence(R, e_max=2).counts
    assert all(0 <= x <= y for x, y in zip(a, l))
    assert (a[0] > 0) == fedder_is_fpure(R.J())
    assert all(r >= 1 - Fraction(1, 100) for r in hk_sequence(R, e_max=2).ratios)


def test_huneke_leuschke_soft():
    # s(R) <= (e_HK(I) - e_HK(J)) / length(J/I) for I = m^2 in J = m, at finite level
    R = ring(3, ("x", "y", "z"), "x*y-z^2")
    S = R.S
    m = Ideal.maximal(S)
    tol = Fraction(1, 10)
    s = fsig_sequence(R, e_max=2).limit_estimate
    hk_I = hk_sequence(R, m * m, e_max=2).limit_estimate
    hk_J = hk_sequence(R, m, e_max=2).limit_estimate
    assert s <= (hk_I - hk_J) / 3 + 2 * tol


def test_default_emax_budget():
    assert default_emax(5, 3) == 3
    assert 5 ** (3 * default_emax(5, 3)) <= 10 ** 7
    assert default_emax(2, 0) == 1


def test_emax_warning(caplog):
    R = ring(2, ("x",))
    with caplog.at_level(logging.WARNING):
        hk_sequence(R, e_max=24)
    assert any("budget" in r.message for r in caplog.records)


def test_splitting_prime_examples():
    R = ring(7, ("x", "y", "z"), "x^3+y^3+z^3")
    sp = splitting_prime_approx(R, e_max=2)
    assert sp.certified and sp.ideal == Ideal.maximal(R.S)

    R = ring(5, ("x", "y"))
    sp = splitting_prime_approx(R)
    assert sp.certified and sp.ideal.is_zero()

    with pytest.raises(NotFPure):
        splitting_prime_approx(ring(5, ("x", "y", "z"), "x^3+y^3+z^3"))


def test_splitting_prime_node_brute_force():
    # every monomial ideal containing xy, generated in degree <= 2, that is
    # compatible with all level-1 maps; the largest proper one is the answer
    R = ring(5, ("x", "y"), "x*y")
    S = R.S
    cands = [(1, 0), (0, 1), (2, 0), (0, 2)]
    compatible = []
    from itertools import combinations
    for k in range(0, len(cands) + 1):
        for sub in combinations(cands, k):
            P = Ideal(S, [S.parse("x*y")] + [S.monomial(v) for v in sub])
            if not P.is_unit() and level_one_compatible(R, P):
                compatible.append(P)
    biggest = compatible[0]
    for P in compatible[1:]:
        biggest = biggest + P
    assert biggest == Ideal(S, [S.gen(0), S.gen(1)])
    sp = splitting_prime_approx(R, e_max=2)
    assert sp.certified and sp.ideal == biggest
