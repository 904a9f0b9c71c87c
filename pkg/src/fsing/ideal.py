"""Ideals of F_p[x_1..x_n] and of quotients S/J, backed by ``groebner``."""

from __future__ import annotations

import threading
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import MixedRings, NotZeroDimensional, ZeroDivisorIdeal
from .fieldpoly import DEGREVLEX, MonomialOrder, Poly, PolyRing
from .groebner import GBasis, groebner, minimal_exponents


class Ideal:
    """An ideal of the polynomial ring ``ring`` given by generators.

    Reduced Groebner bases are cached per monomial order.  Equality is
    equality of ideals (compared via reduced degrevlex bases).
    """

    def __init__(self, ring: PolyRing, gens: Iterable):
        self.ring = ring
        gs = []
        for g in gens:
            g = ring(g)
            if g:
                gs.append(g)
        self.gens: Tuple[Poly, ...] = tuple(gs) if gs else (ring.zero(),)
        self._gb: Dict[MonomialOrder, GBasis] = {}
        self._lock = threading.Lock()

    @classmethod
    def maximal(cls, ring: PolyRing) -> "Ideal":
        """The homogeneous maximal ideal (x_1, ..., x_n)."""
        return cls(ring, ring.gens())

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one()])

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def is_zero(self) -> bool:
        return all(not g for g in self.gens)

    def gb(self, order: MonomialOrder = DEGREVLEX) -> GBasis:
        basis = self._gb.get(order)
        if basis is None:
            basis = groebner(self.gens, order)
            with self._lock:
                basis = self._gb.setdefault(order, basis)
        return basis

    def groebner(self, order: MonomialOrder = DEGREVLEX) -> List[Poly]:
        return self.gb(order).polys()

    def is_unit(self) -> bool:
        return self.gb().is_unit

    def contains(self, f) -> bool:
        return member(self.ring(f), self)

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def issubset(self, other: "Ideal") -> bool:
        _same_ring(self, other)
        return all(member(g, other) for g in self.gens)

    def __le__(self, other: "Ideal") -> bool:
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        _same_ring(self, other)
        return self.groebner() == other.groebner()

    def __hash__(self):
        return hash(tuple(self.groebner()))

    def __add__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Ideal(self.ring, [g * other for g in self.gens])
        _same_ring(self, other)
        a = [g for g in self.gens if g]
        b = [g for g in other.gens if g]
        if not a or not b:
            return Ideal(self.ring, [])
        mono = all(g.is_monomial() for g in a) and all(g.is_monomial() for g in b)
        if mono:
            a, b = minimize_monomials(a), minimize_monomials(b)
        return Ideal(self.ring, _prod_gens(a, b, mono))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Ideal":
        return ideal_power(self, n)

    def minimal_gens(self) -> List[Poly]:
        """Reduced-basis generators, the canonical form used for output."""
        return self.groebner()


def _same_ring(a: Ideal, b: Ideal):
    if a.ring != b.ring:
        raise MixedRings(f"{a.ring} vs {b.ring}")


class RingCtx:
    """R = S/J with S = F_p[vars]; ``defining`` is None for S itself."""

    def __init__(self, p: int, vars: Sequence[str], defining=None):
        self.S = PolyRing(p, vars)
        if defining is None:
            self.defining: Optional[Ideal] = None
        else:
            if not isinstance(defining, Ideal):
                defining = Ideal(self.S, defining)
            self.defining = None if defining.is_zero() else defining

    @classmethod
    def from_ring(cls, S: PolyRing, defining=None) -> "RingCtx":
        return cls(S.p, S.vars, defining)

    @property
    def p(self) -> int:
        return self.S.p

    @property
    def vars(self) -> Tuple[str, ...]:
        return self.S.vars

    @property
    def n(self) -> int:
        return self.S.n

    @property
    def is_polynomial(self) -> bool:
        return self.defining is None

    def J(self) -> Ideal:
        """The defining ideal, the zero ideal for a polynomial ring."""
        return self.defining if self.defining is not None else Ideal(self.S, [])

    def ideal(self, gens) -> Ideal:
        return Ideal(self.S, gens)

    def lift(self, I: Ideal) -> Ideal:
        """Preimage of the image of I in R, i.e. I + J in S."""
        return I + self.defining if self.defining is not None else I

    def maximal(self) -> Ideal:
        return Ideal.maximal(self.S)

    def member(self, f: Poly, I: Ideal) -> bool:
        """f in I + J.

        When J = (g) and g has a term c v^d with d the largest power of the
        variable v in g, attained only there, the test runs in a copy of S
        with v first under the elimination order: the lead term of g is then
        c v^d and I + J usually has a far smaller basis than in degrevlex.
        """
        if self.defining is None:
            return member(f, I)
        plan = self._member_plan()
        if plan is None:
            return member(f, self.lift(I))
        T, move = plan
        big = Ideal(T, [move(g) for g in I.gens + self.defining.gens])
        if not f:
            return True
        return big.gb(MonomialOrder("elim", 1)).reduces_to_zero(move(f))

    def _member_plan(self):
        if not hasattr(self, "_plan"):
            self._plan = None
            gens = [g for g in self.defining.gens if g]
            if len(gens) == 1 and self.n > 1:
                g = gens[0]
                exps = [e for e, _ in g.terms()]
                for v in range(self.n):
                    d = max(e[v] for e in exps)
                    top = [e for e in exps if e[v] == d]
                    if d > 0 and len(top) == 1 and sum(top[0]) == d:
                        self._plan = _moved_ring(self.S, v)
                        break
        return self._plan

    def __repr__(self):
        q = f", defining={self.defining}" if self.defining is not None else ""
        return f"RingCtx(p={self.p}, vars={list(self.vars)}{q})"


def _moved_ring(S: PolyRing, v: int):
    """A copy of S with variable v listed first, and the map into it."""
    order = [v] + [i for i in range(S.n) if i != v]
    T = PolyRing(S.p, tuple(S.vars[i] for i in order))
    un = S.unpack

    def move(f: Poly) -> Poly:
        return T.from_dict({tuple(un(m)[i] for i in order): c for m, c in f.packed_terms().items()})

    return T, move


def ideal_power(I: Ideal, n: int) -> Ideal:
    """I^n, generated by products; monomial ideals keep only minimal generators."""
    if n < 0:
        raise ValueError("negative power")
    ring = I.ring
    if n == 0:
        return Ideal.unit(ring)
    gens = [g for g in I.gens if g]
    if not gens:
        return Ideal(ring, [])
    mono = all(g.is_monomial() for g in gens)
    if mono:
        gens = minimize_monomials(gens)
        if len(gens) == 1:
            return Ideal(ring, [gens[0] ** n])
        if len(gens) == 2:
            u, v = gens
            return Ideal(ring, minimize_monomials([u ** i * v ** (n - i) for i in range(n + 1)]))
    result = [ring.one()]
    base = list(gens)
    while n:
        if n & 1:
            result = _prod_gens(result, base, mono)
        n >>= 1
        if n:
            base = _prod_gens(base, base, mono)
    return Ideal(ring, result)


def _prod_gens(a: List[Poly], b: List[Poly], mono: bool) -> List[Poly]:
    prods = {}
    for f in a:
        for g in b:
            h = f * g
            prods[h] = None
    out = list(prods)
    if mono:
        out = minimize_monomials(out)
    return out


def minimize_monomials(mons: List[Poly]) -> List[Poly]:
    """Minimal generators of a monomial ideal (coefficients normalised to 1)."""
    ring = mons[0].ring
    exps = {ring.unpack(next(iter(m.packed_terms()))) for m in mons if m}
    return [ring.monomial(e) for e in minimal_exponents(exps)]


def member(f: Poly, I: Ideal) -> bool:
    """True iff f lies in I (normal form is zero)."""
    if f.ring != I.ring:
        raise MixedRings("polynomial and ideal live in different rings")
    if not f:
        return True
    return I.gb().reduces_to_zero(f)


def _extended(ring: PolyRing) -> Tuple[PolyRing, str]:
    name = "t_"
    while name in ring.vars:
        name += "_"
    return PolyRing(ring.p, (name,) + ring.vars), name


def _embed(f: Poly, big: PolyRing) -> Poly:
    # prepend a zero exponent for the auxiliary variable
    un = f.ring.unpack
    return big.from_dict({(0,) + un(m): c for m, c in f.packed_terms().items()})


def _restrict(f: Poly, small: PolyRing) -> Poly:
    un = f.ring.unpack
    return small.from_dict({un(m)[1:]: c for m, c in f.packed_terms().items()})


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via t*I + (1-t)*J and elimination of t."""
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    big, t = _extended(ring)
    tv = big.gen(t)
    gens = [tv * _embed(g, big) for g in I.gens] + [(1 - tv) * _embed(g, big) for g in J.gens]
    gb = groebner(gens, MonomialOrder("elim", 1))
    out = [_restrict(g, ring) for g, e in zip(gb.polys(), gb.lead_exps()) if e[0] == 0]
    return Ideal(ring, out)


def colon(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {f : f J ⊆ I}, intersected over the generators of J."""
    _same_ring(I, J)
    if J.is_zero():
        raise ZeroDivisorIdeal("colon by the zero ideal")
    result: Optional[Ideal] = None
    for g in J.gens:
        if not g:
            continue
        part = colon_poly(I, g)
        result = part if result is None else intersect(result, part)
        if result.is_zero():
            break
    return result


def colon_poly(I: Ideal, g: Poly) -> Ideal:
    """(I : g) = (I ∩ (g)) / g."""
    ring = I.ring
    if member(g, I):
        return Ideal.unit(ring)
    if I.is_zero():
        return Ideal(ring, [])
    inter = intersect(I, Ideal(ring, [g]))
    return Ideal(ring, [h.divexact(g) for h in inter.gens if h])


def standard_monomial_count(leads: Sequence[Tuple[int, ...]], n: int) -> int:
    """Number of monomials in n variables divisible by none of ``leads``.

    Raises NotZeroDimensional when the count is infinite.
    """
    leads = [tuple(l) for l in leads]
    if any(sum(l) == 0 for l in leads):
        return 0
    for i in range(n):
        if not any(l[i] > 0 and sum(l) == l[i] for l in leads):
            raise NotZeroDimensional("quotient is not finite-dimensional")

    @lru_cache(maxsize=None)
    def count(ls: Tuple[Tuple[int, ...], ...], k: int) -> int:
        # ls: minimal leads in the last k variables
        if any(sum(l) == 0 for l in ls):
            return 0
        if k == 0:
            return 1
        if k == 1:
            return min(l[0] for l in ls)
        bound = min(l[0] for l in ls if sum(l[1:]) == 0)
        total = 0
        for a in range(bound):
            sub = _minimal(tuple(l[1:] for l in ls if l[0] <= a))
            total += count(sub, k - 1)
        return total

    return count(_minimal(tuple(leads)), n)


def _minimal(ls):
    ls = sorted(set(ls), key=sum)
    kept = []
    for l in ls:
        if not any(all(a <= b for a, b in zip(k, l)) for k in kept):
            kept.append(l)
    return tuple(kept)


def vspace_length(I: Ideal) -> int:
    """dim_k S/I for a zero-dimensional I (callers add J themselves)."""
    gb = I.gb()
    if not gb.recs:
        raise NotZeroDimensional("the zero ideal has infinite colength")
    return standard_monomial_count(gb.lead_exps(), I.ring.n)


def standard_monomials(I: Ideal) -> List[Tuple[int, ...]]:
    """Explicit list of standard monomials (only sensible for small lengths)."""
    gb = I.gb()
    leads = gb.lead_exps()
    n = I.ring.n
    standard_monomial_count(leads, n)  # zero-dimensionality check
    bounds = [min(l[i] for l in leads if l[i] > 0 and sum(l) == l[i]) for i in range(n)]
    out = []

    def rec(prefix):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        i = len(prefix)
        for a in range(bounds[i]):
            cand = prefix + [a]
            if any(all(l[j] <= cand[j] for j in range(i + 1)) and all(l[j] == 0 for j in range(i + 1, n))
                   for l in leads):
                break
            rec(cand)

    rec([])
    return [m for m in out if not any(all(a <= b for a, b in zip(l, m)) for l in leads)]


def krull_dim(R: RingCtx) -> int:
    """Krull dimension of S/J: largest variable set independent modulo in(J)."""
    n = R.n
    if R.defining is None:
        return n
    gb = R.defining.gb()
    if gb.is_unit:
        return -1
    supports = [frozenset(i for i, a in enumerate(e) if a) for e in gb.lead_exps()]
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0
