"""Test ideals tau(a^t) of an ideal of F_p[x,y] on a grid of t values."""

import argparse
from fractions import Fraction

from fsing import RingCtx
from fsing.ideal import Ideal
from fsing.testideal import PairAt, tau_ideal_regular


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--ideal", default="x^2,y^3", help="comma separated generators")
    ap.add_argument("--tmax", type=Fraction, default=Fraction(2))
    ap.add_argument("--denom", type=int, default=6)
    args = ap.parse_args(argv)

    R = RingCtx(args.p, ("x", "y"))
    a = Ideal(R.S, [R.S.parse(g) for g in args.ideal.split(",")])
    prev = None
    k = 0
    while Fraction(k, args.denom) <= args.tmax:
        t = Fraction(k, args.denom)
        res = tau_ideal_regular(PairAt(R, a, t))
        gens = ", ".join(map(str, res.ideal.groebner()))
        mark = "  <- jump" if prev is not None and res.ideal != prev else ""
        print(f"t={str(t):>5}  tau=({gens}){mark}")
        prev = res.ideal
        k += 1


if __name__ == "__main__":
    main()
