"""F-purity of a few classical hypersurfaces across primes, by Fedder's criterion."""

import argparse

from fsing import RingCtx
from fsing.frobenius import fedder_is_fpure

FAMILIES = {
    "fermat cubic": ("x^3+y^3+z^3", ("x", "y", "z")),
    "A1": ("x*y-z^2", ("x", "y", "z")),
    "fermat quartic": ("x^4+y^4+z^4", ("x", "y", "z")),
    "elliptic": ("z^2+x*y*z+x*y^2+x^2*y", ("x", "y", "z")),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7, 11, 13])
    args = ap.parse_args(argv)

    print("family".ljust(16) + "".join(f"p={p}".rjust(7) for p in args.primes))
    for name, (f, vars) in FAMILIES.items():
        row = []
        for p in args.primes:
            S = RingCtx(p, vars).S
            row.append("pure" if fedder_is_fpure(RingCtx(p, vars, [S.parse(f)]).J()) else "-")
        print(name.ljust(16) + "".join(c.rjust(7) for c in row))


if __name__ == "__main__":
    main()
