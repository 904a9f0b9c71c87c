"""Bounded-e closure checks with certificates, plus monomial integral
closure and the Briancon-Skoda containment."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NoTestElementFound, NotIrreducible, NotMonomial, ZeroMultiplier
from .fieldpoly import Poly
from .frobenius import bracket_power, fedder_is_fpure
from .ideal import Ideal, RingCtx, ideal_power, member, minimize_monomials
from .testideal import TauResult, tau_hypersurface

IN = "in_closure"
OUT = "not_in_closure"
UNKNOWN = "inconclusive"


@dataclass
class ClosureVerdict:
    """status is IN, OUT or UNKNOWN.

    ``proven`` distinguishes a proof of membership (a checked Frobenius
    witness or z in I) from bounded evidence c z^q in I^[q] for e <= e_max.
    OUT is only returned with a proof.
    """

    status: str
    witness: Dict[str, object] = field(default_factory=dict)
    detail: str = ""
    proven: bool = True


def _ctx(R: Optional[RingCtx], I: Ideal) -> RingCtx:
    return R if R is not None else RingCtx.from_ring(I.ring)


def frobenius_closure_test(z: Poly, I: Ideal, e_max: int, R: Optional[RingCtx] = None) -> ClosureVerdict:
    """Look for e <= e_max with z^(p^e) in I^[p^e] (in R = S/J)."""
    R = _ctx(R, I)
    z = R.S(z)
    if R.member(z, I):
        return ClosureVerdict(IN, {"e": 0}, "z lies in I")
    for e in range(1, e_max + 1):
        if R.member(z.frobenius(e), bracket_power(I, e)):
            return ClosureVerdict(IN, {"e": e}, f"z^{R.p ** e} lies in I^[{R.p ** e}]")
    if R.defining is None:
        return ClosureVerdict(OUT, {"q": R.p},
                              "polynomial rings are F-pure, so the Frobenius closure of I is I")
    if graded_fpure(R):
        return ClosureVerdict(OUT, {"q": R.p},
                              "R is graded and F-pure at m, so the Frobenius closure of I is I")
    return ClosureVerdict(UNKNOWN, {"e_max": e_max},
                          f"no witness with e <= {e_max}", proven=False)


def graded_fpure(R: RingCtx) -> bool:
    """J homogeneous and Fedder holds at m; then R is F-pure everywhere."""
    J = R.J()
    homogeneous = all(len({sum(e) for e, _ in g.terms()}) <= 1 for g in J.gens)
    return homogeneous and fedder_is_fpure(J)


def ambient_test_ideal(R: RingCtx) -> Optional[TauResult]:
    """tau of the ambient ring when it is computable here, else None."""
    if R.defining is not None and len(R.defining.groebner()) != 1:
        return None
    try:
        return tau_hypersurface(R)
    except (NotIrreducible, NoTestElementFound):
        # e.g. a non-reduced hypersurface: no certified test element here
        return None


def tight_closure_witness(z: Poly, I: Ideal, c: Poly, e_max: int, R: Optional[RingCtx] = None,
                          tau: Optional[TauResult] = None) -> ClosureVerdict:
    """Check c z^q in I^[q] for q = p^e, e = 0..e_max.

    All passing is bounded evidence only.  A failure is a proof that z is
    not in I* when c lies in the test ideal of R.
    """
    R = _ctx(R, I)
    S = R.S
    z, c = S(z), S(c)
    if not c or member(c, R.J()):
        raise ZeroMultiplier("c must be non-zero in R")
    if R.member(z, I):
        return ClosureVerdict(IN, {"c": "1", "e": 0}, "z lies in I")
    failed = None
    for e in range(0, e_max + 1):
        q = R.p ** e
        if not R.member(c * z.frobenius(e), bracket_power(I, e)):
            failed = e
            break
    if failed is None:
        return ClosureVerdict(IN, {"c": str(c), "e_max": e_max},
                              f"c z^q in I^[q] for every e <= {e_max}; bounded evidence, not a proof",
                              proven=False)
    q = R.p ** failed
    if tau is None:
        tau = ambient_test_ideal(R)
    if tau is not None and tau.stabilized and member(c, tau.ideal):
        return ClosureVerdict(OUT, {"c": str(c), "q": q},
                              f"c is in tau(R) and c z^{q} is not in I^[{q}]")
    return ClosureVerdict(UNKNOWN, {"c": str(c), "q": q},
                          f"c z^{q} not in I^[{q}] but c is not a certified test element",
                          proven=False)


# -- monomial ideals --------------------------------------------------------


def monomial_exponents(I: Ideal) -> List[Tuple[int, ...]]:
    gens = [g for g in I.gens if g]
    if not gens or not all(g.is_monomial() for g in gens):
        raise NotMonomial("ideal must be generated by monomials")
    un = I.ring.unpack
    return [un(next(iter(g.packed_terms()))) for g in minimize_monomials(gens)]


def _nullvector(rows: List[List[Fraction]], n: int) -> Optional[List[Fraction]]:
    """A non-zero vector orthogonal to ``rows`` when their rank is n-1."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    if r != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivots)
    w = [Fraction(0)] * n
    w[free] = Fraction(1)
    for i, col in enumerate(pivots):
        w[col] = -m[i][free]
    return w


def newton_facets(exps: Sequence[Tuple[int, ...]]) -> List[Tuple[Tuple[int, ...], int]]:
    """Facets (w, b) of conv(exps) + R^n_{>=0}, as w . x >= b with w >= 0 primitive."""
    n = len(exps[0])
    pts = sorted(set(exps))
    facets = set()
    for k in range(n):  # k coordinate rays lie in the facet
        for rays in combinations(range(n), k):
            for sub in combinations(pts, n - k):
                v0 = sub[0]
                rows = [[Fraction(a - b) for a, b in zip(v, v0)] for v in sub[1:]]
                rows += [[Fraction(1 if i == j else 0) for i in range(n)] for j in rays]
                w = _nullvector(rows, n)
                if w is None:
                    continue
                if all(x <= 0 for x in w):
                    w = [-x for x in w]
                if any(x < 0 for x in w):
                    continue
                den = 1
                for x in w:
                    den = den * x.denominator // gcd(den, x.denominator)
                wi = [int(x * den) for x in w]
                g = 0
                for x in wi:
                    g = gcd(g, x)
                wi = tuple(x // g for x in wi)
                b = sum(a * c for a, c in zip(wi, v0))
                if all(sum(a * c for a, c in zip(wi, v)) >= b for v in pts):
                    facets.add((wi, b))
    return sorted(facets)


def in_newton_polyhedron(a: Sequence[int], facets, scale: int = 1) -> bool:
    """a in scale * (conv + orthant)."""
    return all(sum(x * y for x, y in zip(w, a)) >= scale * b for w, b in facets)


def monomial_integral_closure(I: Ideal, power: int = 1) -> Ideal:
    """Integral closure of I^power for a monomial ideal I.

    A monomial x^a is integral over I^k iff a lies in k times the Newton
    polyhedron of I; minimal generators have a_i <= k * max_j v_{j,i}.
    """
    S = I.ring
    exps = monomial_exponents(I)
    facets = newton_facets(exps)
    n = S.n
    bounds = [power * max(v[i] for v in exps) for i in range(n)]
    found: List[Tuple[int, ...]] = []
    for a in product(*(range(b + 1) for b in bounds)):
        if in_newton_polyhedron(a, facets, power):
            found.append(a)
    mons = minimize_monomials([S.monomial(a) for a in found])
    return Ideal(S, mons)


def briancon_skoda_check(I: Ideal, m: int) -> bool:
    """closure(I^(m+n)) inside I^m for a monomial I with n generators (tau(S) = S)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    exps = monomial_exponents(I)
    n = len(exps)
    bar = monomial_integral_closure(I, m + n)
    target = ideal_power(I, m)
    return bar.issubset(target)
