"""Frobenius powers, p^e-th roots, the trace map, Fedder's criterion and
the splitting-number ideals I_e.

A map phi: S^{1/q} -> S (q = p^e) is stored as a multiplier u with
phi(-) = Phi^e(u^{1/q} * -), where Phi^e sends the basis monomial
x^{(q-1,...,q-1)/q} to 1 and every other basis monomial x^{lambda/q} to 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .errors import (InvalidBasisIndex, InvalidMap, NotContaining, NotMaximal,
                     NotZeroDimensional, QuotientRingUnsupported)
from .fieldpoly import Poly, frobenius_decompose
from .ideal import Ideal, RingCtx, colon, member, vspace_length


@dataclass(frozen=True)
class CartierMapSpec:
    """phi = Phi^e(u^{1/p^e} * -) on R = S/J.

    When R has a defining ideal J the multiplier must lie in (J^[q] : J),
    otherwise the map does not descend to R.
    """

    ring: RingCtx
    e: int
    u: Poly

    def __post_init__(self):
        if self.e < 1:
            raise InvalidMap("level e must be >= 1")
        if self.u.ring != self.ring.S:
            raise InvalidMap("multiplier lives in a different ring")
        if not self.u:
            raise InvalidMap("multiplier u = 0 gives the zero map")
        J = self.ring.defining
        if J is not None and not member(self.u, frobenius_colon(J, self.e)):
            raise InvalidMap(f"u = {self.u} is not in (J^[q] : J); the map does not descend")

    @property
    def q(self) -> int:
        return self.ring.p ** self.e

    def power(self, m: int) -> "CartierMapSpec":
        """phi^m, the m-fold composite, at level m*e."""
        q = self.q
        exp = sum(q ** i for i in range(m))
        return CartierMapSpec(self.ring, self.e * m, self.u ** exp)

    def __call__(self, f: Poly) -> Poly:
        """phi(f^{1/q}) for a single element f."""
        return trace(self.u * f, self.e)


def bracket_power(I: Ideal, e: int) -> Ideal:
    """I^[p^e], generated by the p^e-th powers of the generators."""
    if e < 0:
        raise ValueError("e must be >= 0")
    if e == 0:
        return I
    return Ideal(I.ring, [g.frobenius(e) for g in I.gens])


def _check_polynomial(R: Optional[RingCtx]):
    if R is not None and R.defining is not None:
        raise QuotientRingUnsupported(
            "p^e-th roots are only defined here over a polynomial ring; "
            "twist by (J^[q] : J) and work in S instead")


def eth_root(I: Ideal, e: int, R: Optional[RingCtx] = None) -> Ideal:
    """The smallest ideal K of S with I contained in K^[p^e]."""
    _check_polynomial(R)
    if e < 0:
        raise ValueError("e must be >= 0")
    if e == 0:
        return I
    gens = []
    for g in I.gens:
        if g:
            gens.extend(frobenius_decompose(g, e).values())
    return Ideal(I.ring, gens)


def trace(f: Poly, e: int) -> Poly:
    """Phi^e(f^{1/q}): the component of f on the basis monomial x^{(q-1)/q}."""
    if not f:
        return f
    q = f.ring.p ** e
    top = (q - 1,) * f.ring.n
    return frobenius_decompose(f, e).get(top, f.ring.zero())


def trace_image(I: Ideal, spec: CartierMapSpec) -> Ideal:
    """phi(I^{1/q}) = (u I)^[1/q] in the polynomial ring."""
    _check_polynomial(spec.ring)
    if I.ring != spec.ring.S:
        raise InvalidMap("ideal and map live in different rings")
    return eth_root(I * spec.u, spec.e)


def hom_to_multiplier(images: Mapping[Sequence[int], Poly], e: int, R: RingCtx) -> CartierMapSpec:
    """Convert basis images lambda -> phi(x^{lambda/q}) into the multiplier form.

    Unlisted basis monomials map to zero.  u = sum image(lambda)^q x^{q-1-lambda}.
    """
    S = R.S
    q = R.p ** e
    u = S.zero()
    clean: Dict[Tuple[int, ...], Poly] = {}
    for lam, img in images.items():
        lam = tuple(int(a) for a in lam)
        if len(lam) != S.n or any(a < 0 or a > q - 1 for a in lam):
            raise InvalidBasisIndex(f"basis index {lam} outside [0, {q - 1}]^{S.n}")
        img = S(img)
        clean[lam] = img
        if img:
            u = u + img.frobenius(e).shift(tuple(q - 1 - a for a in lam))
    if not u:
        raise InvalidMap("all basis images are zero")
    spec = CartierMapSpec(R, e, u)
    # every listed index, and every index when the basis is small
    check = list(clean)
    if q ** S.n <= 4096:
        check = list(product(range(q), repeat=S.n))
    for lam in check:
        got = trace(u.shift(lam), e)
        want = clean.get(lam, S.zero())
        if got != want:
            raise AssertionError(f"multiplier does not reproduce image of {lam}: {got} != {want}")
    return spec


def frobenius_colon(J: Ideal, e: int) -> Ideal:
    """(J^[q] : J); for a principal J = (f) this is (f^{q-1})."""
    if J.is_zero():
        return Ideal.unit(J.ring)
    nonzero = [g for g in J.gens if g]
    if len(nonzero) == 1:
        f = nonzero[0]
        return Ideal(J.ring, [f ** (J.ring.p ** e - 1)])
    return colon(bracket_power(J, e), J)


def _check_maximal(m: Ideal, J: Ideal):
    try:
        length = vspace_length(m)
    except NotZeroDimensional:
        length = None
    if length != 1:
        raise NotMaximal(f"{m} is not a maximal ideal with residue field F_p")
    if not J.issubset(m):
        raise NotContaining(f"{m} does not contain the defining ideal")


def fedder_is_fpure(J: Ideal, m: Optional[Ideal] = None) -> bool:
    """Fedder's criterion: (S/J)_m is F-pure iff (J^[p] : J) is not inside m^[p].

    The colon is always computed by elimination here (no principal
    shortcut) so that the UFD identity can be used as an independent check.
    """
    S = J.ring
    if m is None:
        m = Ideal.maximal(S)
    _check_maximal(m, J)
    if J.is_zero():
        return True
    C = colon(bracket_power(J, 1), J)
    mq = bracket_power(m, 1)
    return not C.issubset(mq)


def splitting_ideal_Ie(R: RingCtx, e: int, m: Optional[Ideal] = None) -> Ideal:
    """Preimage in S of I_e = {r : phi(r^{1/q}) in m for all phi}.

    Computed as (m^[q] : (J^[q] : J)); its colength is a_e.
    """
    if e < 1:
        raise ValueError("e must be >= 1")
    if m is None:
        m = R.maximal()
    J = R.J()
    mq = bracket_power(m, e)
    if J.is_zero():
        return mq
    return colon(mq, frobenius_colon(J, e))
