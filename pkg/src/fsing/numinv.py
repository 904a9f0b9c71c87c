"""Hilbert-Kunz lengths, F-splitting numbers a_e and the splitting prime.

All counts are exact integers.  The "estimate" of a limit is just the
last ratio; nothing is extrapolated.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional

from .errors import NotFPure
from .frobenius import bracket_power, eth_root, fedder_is_fpure, frobenius_colon, splitting_ideal_Ie
from .ideal import Ideal, RingCtx, intersect, krull_dim, vspace_length
from .testideal import is_strongly_f_regular

log = logging.getLogger(__name__)

BUDGET = 10 ** 7
DEFAULT_TOLERANCE = Fraction(1, 100)


@dataclass
class Level:
    e: int
    count: int
    ratio: Fraction


@dataclass
class InvariantEstimate:
    levels: List[Level]
    dimension: int
    tolerance: Fraction = DEFAULT_TOLERANCE

    @property
    def counts(self) -> List[int]:
        return [lv.count for lv in self.levels]

    @property
    def ratios(self) -> List[Fraction]:
        return [lv.ratio for lv in self.levels]

    @property
    def limit_estimate(self) -> Optional[Fraction]:
        return self.levels[-1].ratio if self.levels else None

    @property
    def converged_hint(self) -> bool:
        if len(self.levels) < 2:
            return False
        return abs(self.levels[-1].ratio - self.levels[-2].ratio) < self.tolerance


def default_emax(p: int, d: int) -> int:
    """Largest e with p^(e d) within the standard-monomial budget (at least 1)."""
    if d <= 0:
        return 1
    e = 1
    while p ** ((e + 1) * d) <= BUDGET:
        e += 1
    return e


def _levels(R: RingCtx, e_max: Optional[int], count: Callable[[int], int],
            threads: int, tolerance) -> InvariantEstimate:
    d = krull_dim(R)
    if e_max is None:
        e_max = default_emax(R.p, d)
    elif d > 0 and R.p ** (e_max * d) > BUDGET:
        log.warning("p^(e d) = %d exceeds the %d budget; expect heavy memory use",
                    R.p ** (e_max * d), BUDGET)
    es = list(range(1, e_max + 1))
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        counts = list(pool.map(count, es))
    levels = [Level(e, c, Fraction(c, R.p ** (e * d))) for e, c in zip(es, counts)]
    return InvariantEstimate(levels, d, Fraction(tolerance))


def hk_sequence(R: RingCtx, I: Optional[Ideal] = None, e_max: Optional[int] = None,
                threads: int = 1, tolerance=DEFAULT_TOLERANCE) -> InvariantEstimate:
    """Exact lengths l_e = dim_k S/(I^[p^e] + J) and ratios l_e / p^(e d)."""
    if I is None:
        I = R.maximal()
    vspace_length(R.lift(I))  # raises NotZeroDimensional unless m-primary

    def count(e):
        return vspace_length(R.lift(bracket_power(I, e)))

    return _levels(R, e_max, count, threads, tolerance)


def fsig_sequence(R: RingCtx, e_max: Optional[int] = None, threads: int = 1,
                  tolerance=DEFAULT_TOLERANCE) -> InvariantEstimate:
    """Exact a_e = length(R/I_e) and ratios a_e / p^(e d)."""

    def count(e):
        return vspace_length(splitting_ideal_Ie(R, e))

    return _levels(R, e_max, count, threads, tolerance)


@dataclass
class SplittingPrime:
    ideal: Ideal
    certified: bool
    levels_used: int
    notes: List[str] = field(default_factory=list)


def level_one_compatible(R: RingCtx, P: Ideal) -> bool:
    """phi(P^{1/p}) inside P for every phi in Hom_R(R^{1/p}, R), with P ⊇ J."""
    C = frobenius_colon(R.J(), 1)
    return eth_root(C * P, 1).issubset(R.lift(P))


def splitting_prime_approx(R: RingCtx, e_max: int = 3) -> SplittingPrime:
    """Intersection of the I_e preimages for e <= e_max.

    Strongly F-regular rings short-circuit to P = 0 (the image of J).
    Otherwise the result is certified when the intersection did not move
    between the last two levels and it is compatible with every level-1 map.
    """
    J = R.J()
    S = R.S
    if not fedder_is_fpure(J):
        raise NotFPure("R is not F-pure at the origin")
    if is_strongly_f_regular(R):
        P = J if R.defining is not None else Ideal(S, [])
        return SplittingPrime(P, True, 0, ["strongly F-regular: the splitting prime is 0"])
    P = None
    stable = False
    for e in range(1, e_max + 1):
        Ie = splitting_ideal_Ie(R, e)
        nxt = Ie if P is None else Ideal(S, intersect(P, Ie).groebner())
        stable = P is not None and nxt == P
        P = nxt
    compatible = level_one_compatible(R, P)
    notes = []
    if not stable:
        notes.append("intersection still moving at e_max")
    if not compatible:
        notes.append("result is not compatible with every level-1 map")
    return SplittingPrime(Ideal(S, P.groebner()), stable and compatible, e_max, notes)
