"""Buchberger's algorithm over F_p with the sugar strategy and the
Gebauer-Moeller pair criteria.

Internally a monomial is an int *key*: the weight rows of the monomial
order sit above the packed exponent fields, so comparing keys as ints is
comparing monomials in the order, and multiplying monomials adds keys.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .errors import DegreeOverflow
from .fieldpoly import DEGREVLEX, FIELD_BITS, FIELD_MASK, MAX_EXP, MonomialOrder, Poly, PolyRing

Term = Tuple[int, int]


class Encoder:
    """Maps packed exponents to order keys and back for one ring and order."""

    def __init__(self, ring: PolyRing, order: MonomialOrder):
        self.ring = ring
        self.order = order
        n = ring.n
        rows = order.weight_rows(n)
        base = FIELD_BITS * n
        nrows = len(rows)
        shifts = [base + FIELD_BITS * (nrows - 1 - r) for r in range(nrows)]
        self.weights = []
        for i in range(n):
            k = sum(1 << shifts[r] for r in range(nrows) if rows[r][i])
            if k:
                self.weights.append((ring._shifts[i], k))
        self.lowmask = (1 << base) - 1
        self.guard = ring.guard

    def encode(self, m: int) -> int:
        key = m
        for s, k in self.weights:
            key += ((m >> s) & FIELD_MASK) * k
        return key

    def decode(self, key: int) -> int:
        return key & self.lowmask

    def exps(self, key: int) -> Tuple[int, ...]:
        return self.ring.unpack(key & self.lowmask)

    def to_terms(self, f: Poly) -> List[Term]:
        enc = self.encode
        t = [(enc(m), c) for m, c in f.packed_terms().items()]
        t.sort(reverse=True)
        return t

    def to_poly(self, terms) -> Poly:
        low = self.lowmask
        return Poly(self.ring, {k & low: c for k, c in terms})


def minimal_exponents(exps) -> List[Tuple[int, ...]]:
    """The minimal elements of a set of exponent vectors under division."""
    exps = sorted(set(exps))
    if not exps:
        return []
    if len(exps[0]) == 2:
        # staircase sweep: sorted by x, keep a vector when its y drops
        kept = []
        for e in exps:
            if not kept or e[1] < kept[-1][1]:
                kept.append(e)
        return kept
    exps.sort(key=sum)
    kept = []
    for e in exps:
        if not any(all(a <= b for a, b in zip(k, e)) for k in kept):
            kept.append(e)
    return kept


@dataclass
class _Rec:
    lead: int
    exps: Tuple[int, ...]
    tail: List[Term]
    sugar: int


def _monic(terms: List[Term], p: int) -> List[Term]:
    c0 = terms[0][1]
    if c0 == 1:
        return terms
    inv = pow(c0, p - 2, p)
    return [(k, c * inv % p) for k, c in terms]


def reduce_terms(D: Dict[int, int], reducers: Sequence[Tuple[int, List[Term]]], p: int,
                 guard: int) -> List[Term]:
    """Full normal form of the polynomial held in ``D`` (consumed).

    ``reducers`` are (lead key, monic tail) pairs.  Returns the remainder
    as a descending term list.
    """
    heap = [-k for k in D]
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    out = []
    while heap:
        k = -pop(heap)
        c = D.pop(k, 0)
        if not c:
            continue
        kg = k | guard
        for lk, tail in reducers:
            if (kg - lk) & guard == guard:
                s = k - lk
                for tk, tc in tail:
                    nk = tk + s
                    old = D.get(nk)
                    if old is None:
                        D[nk] = (-c * tc) % p
                        push(heap, -nk)
                    else:
                        v = (old - c * tc) % p
                        if v:
                            D[nk] = v
                        else:
                            del D[nk]
                break
        else:
            out.append((k, c))
    return out


class GBasis:
    """A reduced Groebner basis together with its encoder."""

    def __init__(self, enc: Encoder, recs: List[_Rec]):
        self.enc = enc
        self.recs = sorted(recs, key=lambda r: r.lead)
        self._reducers = [(r.lead, r.tail) for r in self.recs]

    @property
    def is_unit(self) -> bool:
        return len(self.recs) == 1 and self.recs[0].lead == 0

    def polys(self) -> List[Poly]:
        if not self.recs:
            return [self.enc.ring.zero()]
        return [self.enc.to_poly([(r.lead, 1)] + r.tail) for r in self.recs]

    def lead_exps(self) -> List[Tuple[int, ...]]:
        return [r.exps for r in self.recs]

    def normal_form(self, f: Poly) -> Poly:
        if not f or not self.recs:
            return f
        enc = self.enc
        D = {enc.encode(m): c for m, c in f.packed_terms().items()}
        return enc.to_poly(reduce_terms(D, self._reducers, enc.ring.p, enc.guard))

    def reduces_to_zero(self, f: Poly) -> bool:
        return not self.normal_form(f)


def _lcm_exps(a, b):
    e = tuple(x if x >= y else y for x, y in zip(a, b))
    if sum(e) >= MAX_EXP:
        raise DegreeOverflow("S-pair degree exceeds 2^31")
    return e


def groebner(polys: Sequence[Poly], order: MonomialOrder = DEGREVLEX) -> GBasis:
    """Reduced Groebner basis of the ideal generated by ``polys``."""
    if not polys:
        raise ValueError("need at least one generator")
    ring = polys[0].ring
    enc = Encoder(ring, order)
    p = ring.p
    guard = enc.guard
    pack = ring.pack

    store: List[_Rec] = []
    active: List[int] = []
    pairs: List[Tuple[int, int, int, int]] = []

    def lcm_key(i, j):
        return enc.encode(pack(_lcm_exps(store[i].exps, store[j].exps)))

    def divides(a, b):
        return ((b | guard) - a) & guard == guard

    def reducers():
        return [(store[i].lead, store[i].tail) for i in active]

    def coprime(a, b):
        return all(x == 0 or y == 0 for x, y in zip(a, b))

    def update(h: int):
        nonlocal pairs
        rh = store[h]
        lh = rh.lead
        cand = [(g, lcm_key(h, g)) for g in active]
        keep = []
        for idx, (g, L) in enumerate(cand):
            if coprime(rh.exps, store[g].exps):
                keep.append((g, L, True))
                continue
            others = [L2 for g2, L2 in cand[idx + 1:]] + [L2 for _, L2, _ in keep]
            if any(divides(L2, L) for L2 in others):
                continue
            keep.append((g, L, False))
        new_pairs = []
        for item in pairs:
            s, L, i, j = item
            if divides(lh, L) and lcm_key(i, h) != L and lcm_key(j, h) != L:
                continue
            new_pairs.append(item)
        for g, L, cop in keep:
            if cop:
                continue
            rg = store[g]
            dl = sum(enc.exps(L))
            sug = max(rh.sugar - sum(rh.exps), rg.sugar - sum(rg.exps)) + dl
            new_pairs.append((sug, L, min(g, h), max(g, h)))
        heapq.heapify(new_pairs)
        pairs = new_pairs
        active[:] = [g for g in active if not divides(lh, store[g].lead)] + [h]

    def add(terms: List[Term], sugar: int):
        terms = _monic(terms, p)
        lead = terms[0][0]
        store.append(_Rec(lead, enc.exps(lead), terms[1:], sugar))
        update(len(store) - 1)

    inputs = []
    for f in polys:
        if f.ring != ring:
            from .errors import MixedRings
            raise MixedRings("generators from different rings")
        if f:
            inputs.append((enc.to_terms(f), f.degree()))
    if inputs and all(len(terms) == 1 for terms, _ in inputs):
        # monomial ideal: the reduced basis is the set of minimal monomials
        kept = minimal_exponents(enc.exps(terms[0][0]) for terms, _ in inputs)
        return GBasis(enc, [_Rec(enc.encode(pack(e)), e, [], sum(e)) for e in kept])
    inputs.sort(key=lambda t: (t[0][0][0], t[1]))
    for terms, deg in inputs:
        r = reduce_terms(dict(terms), reducers(), p, guard)
        if r:
            add(r, deg)
            if r[0][0] == 0:
                break

    while pairs and not (len(active) == 1 and store[active[0]].lead == 0):
        sug, L, i, j = heapq.heappop(pairs)
        ri, rj = store[i], store[j]
        si, sj = L - ri.lead, L - rj.lead
        D: Dict[int, int] = {}
        for tk, tc in ri.tail:
            D[tk + si] = tc
        for tk, tc in rj.tail:
            nk = tk + sj
            v = (D.get(nk, 0) - tc) % p
            if v:
                D[nk] = v
            else:
                D.pop(nk, None)
        if not D:
            continue
        r = reduce_terms(D, reducers(), p, guard)
        if r:
            add(r, sug)

    recs = [store[i] for i in active]
    if any(r.lead == 0 for r in recs):
        return GBasis(enc, [_Rec(0, enc.exps(0), [], 0)])
    # inter-reduce tails
    final = []
    for idx, r in enumerate(recs):
        others = [(o.lead, o.tail) for jdx, o in enumerate(recs) if jdx != idx]
        tail = reduce_terms(dict(r.tail), others, p, guard) if r.tail else []
        final.append(_Rec(r.lead, r.exps, tail, r.sugar))
    return GBasis(enc, final)
