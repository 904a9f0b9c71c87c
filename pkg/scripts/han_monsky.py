"""Hilbert-Kunz lengths of the diagonal quartic w^4+x^4+y^4+z^4 over F_5.

The exact limit is 168/61; this prints l_e and l_e / 5^(3e) per level.
"""

import argparse
import time
from fractions import Fraction

from fsing import PolyRing, RingCtx
from fsing.numinv import hk_sequence


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--emax", type=int, default=2)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    S = PolyRing(5, ("w", "x", "y", "z"))
    R = RingCtx.from_ring(S, [S.parse("w^4+x^4+y^4+z^4")])
    t0 = time.perf_counter()
    est = hk_sequence(R, e_max=args.emax, threads=args.threads)
    elapsed = time.perf_counter() - t0
    target = Fraction(168, 61)
    for lv in est.levels:
        print(f"e={lv.e}  l_e={lv.count}  ratio={float(lv.ratio):.6f}  |ratio-168/61|={float(abs(lv.ratio - target)):.2e}")
    print(f"total {elapsed:.2f}s")


if __name__ == "__main__":
    main()
