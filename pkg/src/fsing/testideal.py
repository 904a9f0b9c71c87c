"""Test ideals: map-pairs via the Katzman chain, hypersurface rings,
pairs (S, a^t) over a polynomial ring, and F-thresholds."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, gcd
from typing import List, Optional, Sequence, Tuple

from .errors import (NoTestElementFound, NotInMaximal, NotIrreducible, NotPrincipal,
                     QuotientRingUnsupported, ZeroTestElement)
from .fieldpoly import Poly
from .frobenius import CartierMapSpec, bracket_power, eth_root, trace_image
from .ideal import Ideal, RingCtx, ideal_power, krull_dim, member, minimize_monomials

log = logging.getLogger(__name__)

MAX_CHAIN = 64


@dataclass
class TauResult:
    ideal: Ideal
    stabilized: bool
    levels_used: int
    test_element: Optional[Poly] = None
    notes: List[str] = field(default_factory=list)

    def is_unit(self) -> bool:
        return self.ideal.is_unit()


@dataclass(frozen=True)
class PairAt:
    """The pair (S, a^t) with S a polynomial ring and t >= 0 rational."""

    ring: RingCtx
    a: Ideal
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        if self.ring.defining is not None:
            raise QuotientRingUnsupported("tau(a^t) is computed over polynomial rings only")
        if self.t < 0:
            raise ValueError("t must be non-negative")
        if self.a.is_zero():
            raise ValueError("a must be a non-zero ideal")


def _katzman(start: Ideal, step, max_iter: int) -> TauResult:
    """J_0 = start, J_n = J_{n-1} + step(J_{n-1}) until two steps add nothing."""
    J = start
    quiet = 0
    for n in range(1, max_iter + 1):
        nxt = J + step(J)
        nxt = Ideal(J.ring, nxt.groebner())
        if nxt == J:
            quiet += 1
            if quiet == 2:
                return TauResult(J, True, n)
        else:
            quiet = 0
        J = nxt
    return TauResult(J, False, max_iter)


def tau_map_pair(spec: CartierMapSpec, c: Optional[Poly] = None,
                 max_iter: int = MAX_CHAIN) -> TauResult:
    """tau(S, phi) by the ascending chain J_n = J_{n-1} + phi(J_{n-1}^{1/q}).

    Default test element is u^3: S_u is regular, phi generates the maps
    there, and u lies in phi(S^{1/q}).
    """
    if spec.ring.defining is not None:
        raise QuotientRingUnsupported("use tau_hypersurface for quotient rings")
    S = spec.ring.S
    if c is None:
        c = spec.u ** 3
    c = S(c)
    if not c:
        raise ZeroTestElement("the test element must be non-zero")
    res = _katzman(Ideal(S, [c]), lambda J: trace_image(J, spec), max_iter)
    res.test_element = c
    return res


def _principal_generator(R: RingCtx) -> Poly:
    gb = R.defining.groebner()
    if len(gb) != 1:
        raise NotPrincipal(f"defining ideal has {len(gb)} reduced generators")
    return gb[0]


def check_squarefree(f: Poly) -> bool:
    """f has no repeated factor iff its singular locus has codimension >= 2 in S.

    A square factor g^2 | f puts the whole hypersurface g = 0 inside
    V(f, df/dx_1, ..., df/dx_n).
    """
    S = f.ring
    if f.is_constant():
        return False
    sing = Ideal(S, [f] + [f.derivative(i) for i in range(S.n)])
    if sing.is_unit():
        return True
    return krull_dim(RingCtx.from_ring(S, sing)) < S.n - 1


def hypersurface_test_element(f: Poly) -> Tuple[Poly, Poly]:
    """(b, c): b a partial derivative of f non-zero mod f, c = b^3."""
    S = f.ring
    fI = Ideal(S, [f])
    for i in range(S.n):
        b = f.derivative(i)
        if b and not member(b, fI):
            return b, b ** 3
    raise NoTestElementFound("every partial derivative vanishes modulo f; supply c")


def tau_hypersurface(R: RingCtx, c: Optional[Poly] = None,
                     max_iter: int = MAX_CHAIN) -> TauResult:
    """tau(R) for R = S/(f), via the trace u = f^{p-1} of the Gorenstein ring.

    The result ideal lives in S and contains f; its image in R is tau(R).
    """
    S = R.S
    if R.defining is None:
        return TauResult(Ideal.unit(S), True, 0, S.one(), ["polynomial ring: tau(S) = S"])
    f = _principal_generator(R)
    if not check_squarefree(f):
        raise NotIrreducible(f"{f} has a repeated factor")
    notes = ["irreducibility of f is not certified; only square-freeness is checked"]
    u = f ** (R.p - 1)
    if c is None:
        b, c = hypersurface_test_element(f)
        image = eth_root(Ideal(S, [u]), 1) + Ideal(S, [f])
        if not member(b, image):
            notes.append(f"b = {b} is not in phi(R^(1/p)); c = b^3 relies on b being in the Jacobian ideal")
    c = S(c)
    if not c or member(c, Ideal(S, [f])):
        raise ZeroTestElement("test element is zero in R")
    fI = Ideal(S, [f])
    res = _katzman(Ideal(S, [c, f]), lambda J: eth_root(J * u, 1) + fI, max_iter)
    res.test_element = c
    res.notes = notes
    return res


def is_strongly_f_regular(R: RingCtx) -> bool:
    """tau(R) = R; polynomial rings are regular hence strongly F-regular."""
    return sfr_result(R).is_unit()


def sfr_result(R: RingCtx) -> TauResult:
    return tau_hypersurface(R)


def root_of_products(c, factors: Sequence[Tuple[Ideal, int]], e: int) -> Ideal:
    """(c a_1^N_1 ... a_k^N_k)^[1/q] for a polynomial or ideal c.

    Bracket powers are pulled out first: an ideal a with r generators has
    a^N = a^[q] a^(N-q) once N > r(q-1), and (a^[q] X)^[1/q] = a X^[1/q].
    """
    inner = c if isinstance(c, Ideal) else Ideal(c.ring, [c])
    S = inner.ring
    q = S.p ** e
    outer = Ideal.unit(S)
    for a, N in factors:
        r = generator_count(a)
        k = 0
        while N > r * (q - 1):
            N -= q
            k += 1
        inner = inner * ideal_power(a, N)
        if k:
            outer = outer * ideal_power(a, k)
    root = eth_root(inner, e)
    return root if outer.is_unit() else outer * root


def generator_count(a: Ideal) -> int:
    """Size of a small generating set (minimal generators for monomial ideals)."""
    gens = [g for g in a.gens if g]
    if gens and all(g.is_monomial() for g in gens):
        return len(minimize_monomials(gens))
    return min(len(gens), len(a.groebner()))


def root_of_power(c: Poly, a: Ideal, N: int, e: int) -> Ideal:
    """(c a^N)^[1/q]."""
    return root_of_products(c, [(a, N)], e)


def default_pair_element(pair: PairAt) -> Poly:
    """c = g^ceil(t), g the first generator: it lies in a^ceil(t), inside tau(a^t)."""
    return default_mixed_element([(pair.a, pair.t)])


def default_mixed_element(factors: Sequence[Tuple[Ideal, Fraction]]) -> Poly:
    c = None
    for a, t in factors:
        g = next(g for g in a.gens if g)
        term = g ** ceil(t)
        c = term if c is None else c * term
    return c


def tau_ideal_regular(pair: PairAt, c: Optional[Poly] = None, rounding: str = "qm1",
                      e_max: int = MAX_CHAIN, threads: int = 1) -> TauResult:
    """tau(S, a^t) by the stabilising chain of ``tau_mixed_regular``."""
    return tau_mixed_regular(pair.ring, [(pair.a, pair.t)], c, rounding, e_max, threads)


def _split_denominator(ts: Sequence[Fraction], p: int) -> Tuple[int, int]:
    """(b, c) with every t in ts of the form m / (p^b (p^c - 1))."""
    b = 0
    rest = 1
    for t in ts:
        d = t.denominator
        v = 0
        while d % p == 0:
            d //= p
            v += 1
        b = max(b, v)
        rest = rest * d // gcd(rest, d)
    c = 1
    while (p ** c - 1) % rest:
        c += 1
    return b, c


def tau_mixed_regular(R: RingCtx, factors: Sequence[Tuple[Ideal, Fraction]],
                      c: Optional[Poly] = None, rounding: str = "qm1",
                      e_max: int = MAX_CHAIN, threads: int = 1) -> TauResult:
    """tau(S, a_1^t_1 ... a_k^t_k) over a polynomial ring S.

    Each t_i is multiplied by p^k, k as small as possible, so that
    s_i = t_i p^k satisfies s_i >= r_i - 1 (r_i generators of a_i) and has
    denominator prime to p; then s_i = m_i / (Q - 1) with Q = p^c.  For such
    exponents a_i^(m_i (Q+1)) = (a_i^m_i)^[Q] a_i^m_i, so the level-nc terms
    of the defining sum are the iterates of G(J) = (prod a_i^m_i J)^[1/Q] and
    tau(a^s) is the chain J_{k+1} = J_k + G(J_k).  A step that adds nothing
    proves stability, since G does not change along the chain.
    Finally tau(a^t) = tau(a^s)^[1/p^k].

    rounding "qm1" starts the chain at (c); rounding "q" starts it at
    a^ceil(s) and ignores c (the ascending union of (a^ceil(sQ^n))^[1/Q^n]).
    ``e_max`` caps the number of chain steps.  ``threads`` is accepted for
    interface symmetry; the chain is inherently sequential.
    """
    if R.defining is not None:
        raise QuotientRingUnsupported("tau(a^t) is computed over polynomial rings only")
    if rounding not in ("qm1", "q"):
        raise ValueError(f"unknown rounding {rounding!r}")
    S = R.S
    p = S.p
    factors = [(a, Fraction(t)) for a, t in factors]
    for a, t in factors:
        if t < 0 or a.is_zero():
            raise ValueError("need non-zero ideals and t >= 0")
    factors = [(a, t) for a, t in factors if t > 0]
    if not factors:
        return TauResult(Ideal.unit(S), True, 0, S.one())
    b, cexp = _split_denominator([t for _, t in factors], p)
    Q = p ** cexp
    j = 0
    while any(t * p ** (b + j) < generator_count(a) - 1 for a, t in factors):
        j += 1
    scaled = [(a, t * p ** (b + j)) for a, t in factors]
    ms = [(a, int(s * (Q - 1))) for a, s in scaled]
    if rounding == "q":
        c = S.one()
        start = Ideal.unit(S)
        for a, s in scaled:
            start = start * ideal_power(a, ceil(s))
    else:
        if c is None:
            c = default_mixed_element(scaled)
        c = S(c)
        if not c:
            raise ZeroTestElement("the test element must be non-zero")
        start = Ideal(S, [c])

    def step(J):
        return root_of_products(J, ms, cexp)

    J = Ideal(S, start.groebner())
    done = False
    n = 0
    while n < e_max:
        n += 1
        nxt = Ideal(S, (J + step(J)).groebner())
        if nxt == J:
            done = True
            break
        J = nxt
    depth = b + j
    if depth:
        J = Ideal(S, eth_root(J, depth).groebner())
    return TauResult(J, done, n, c)


def nu_value(f: Poly, e: int, m: Optional[Ideal] = None) -> int:
    """max { r : f^r not in m^[p^e] } by binary search."""
    S = f.ring
    if m is None:
        m = Ideal.maximal(S)
    if not f or not member(f, m):
        raise NotInMaximal(f"{f} is not a non-zero element of {m}")
    mq = bracket_power(m, e)
    q = S.p ** e
    k = len([g for g in m.gens if g])
    lo, hi = 0, k * (q - 1) + 1  # f^lo outside, f^hi inside
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if member(f ** mid, mq):
            hi = mid
        else:
            lo = mid
    return lo


def fpt_intervals(f: Poly, e_max: int, m: Optional[Ideal] = None) -> List[Tuple[int, int, Fraction, Fraction]]:
    """[(e, nu, lower, upper)] with fpt in (nu/q, (nu+1)/q] at each level."""
    out = []
    p = f.ring.p
    for e in range(1, e_max + 1):
        q = p ** e
        nu = nu_value(f, e, m)
        out.append((e, nu, Fraction(nu, q), Fraction(nu + 1, q)))
    return out


def fpt_bounds(f: Poly, e_max: int, m: Optional[Ideal] = None) -> Tuple[Fraction, Fraction]:
    """fpt(f) lies in the half-open interval (lower, upper] from level e_max."""
    if e_max < 1:
        raise ValueError("e_max must be >= 1")
    q = f.ring.p ** e_max
    nu = nu_value(f, e_max, m)
    return Fraction(nu, q), Fraction(nu + 1, q)


def jumping_numbers_grid(R: RingCtx, a: Ideal, t_max: Fraction, denom: int,
                         rounding: str = "qm1", e_max: int = MAX_CHAIN,
                         threads: int = 1) -> Tuple[List[Fraction], bool]:
    """Grid points k/denom <= t_max where tau(a^t) differs from the previous point.

    Each candidate k/denom certifies a jump somewhere in ((k-1)/denom, k/denom].
    Returns (candidates, all_stabilized).
    """
    if denom < 1:
        raise ValueError("denom must be >= 1")
    t_max = Fraction(t_max)
    out = []
    ok = True
    prev = tau_ideal_regular(PairAt(R, a, Fraction(0)), rounding=rounding, e_max=e_max)
    k = 1
    while Fraction(k, denom) <= t_max:
        cur = tau_ideal_regular(PairAt(R, a, Fraction(k, denom)), rounding=rounding,
                                e_max=e_max, threads=threads)
        ok = ok and cur.stabilized
        if cur.ideal != prev.ideal:
            out.append(Fraction(k, denom))
        prev = cur
        k += 1
    return out, ok
