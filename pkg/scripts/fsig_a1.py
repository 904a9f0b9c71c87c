"""Free-summand counts a_e for the A_1 singularity xy - z^2 (limit 1/2)."""

import argparse

from fsing import RingCtx
from fsing.numinv import fsig_sequence


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--emax", type=int, default=2)
    args = ap.parse_args(argv)

    S = RingCtx(args.p, ("x", "y", "z")).S
    R = RingCtx(args.p, S.vars, [S.parse("x*y-z^2")])
    est = fsig_sequence(R, e_max=args.emax)
    for lv in est.levels:
        print(f"e={lv.e}  a_e={lv.count}  a_e/p^(2e)={float(lv.ratio):.5f}")


if __name__ == "__main__":
    main()
