"""``fsing`` command line: run one subcommand against a session file.

Exit codes: 0 computed, 1 error, 2 computed but not certified
(unstabilised chain, uncertified prime, bounded closure evidence),
3 inconclusive closure verdict.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from decimal import Context, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from . import closures, frobenius, ideal as idealmod, numinv, testideal
from .errors import FSingError, UnknownName
from .fieldpoly import DEGREVLEX, LEX, Poly
from .ideal import Ideal, RingCtx
from .session import SessionFile, format_session, parse_session

COMMANDS = ["gb", "member", "colon", "intersect", "length", "dim", "bracket", "root", "fedder",
            "ie", "tau-map", "tau-ring", "tau-pair", "nu", "fpt", "jumps", "sfr", "hk", "fsig",
            "splitprime", "fclosure", "tc-witness", "intclosure", "bs-check"]

EXIT = {"computed": 0, "error": 1, "uncertified": 2, "inconclusive": 3}

# flags that never change the result and so are not echoed
_QUIET = {"command", "session", "json", "threads", "timing"}


def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def render_rational(x: Fraction) -> Dict[str, str]:
    x = Fraction(x)
    dec = Context(prec=15).divide(Decimal(x.numerator), Decimal(x.denominator))
    return {"exact": str(x), "decimal": str(dec)}


def render_poly(f: Poly) -> str:
    return str(f)


def render_ideal(I: Ideal) -> List[str]:
    gens = I.groebner()
    return [str(g) for g in sorted(gens, key=lambda g: (g.degree(), str(g)))]


class Runner:
    def __init__(self, sess: SessionFile, args: argparse.Namespace):
        self.sess = sess
        self.args = args
        self.R: RingCtx = sess.ring()
        self.S = self.R.S

    # -- name resolution --------------------------------------------------

    def ideal(self, name: Optional[str], default: str = "m") -> Ideal:
        name = name or default
        if name == "quotient":
            return self.R.J()
        if name in self.sess.ideals:
            return Ideal(self.S, self.sess.ideals[name])
        if name == "m":
            return self.R.maximal()
        raise UnknownName(f"no ideal named {name!r}")

    def poly(self, spec: Optional[str], what: str = "--poly") -> Poly:
        if spec is None:
            if len(self.sess.polys) == 1:
                return next(iter(self.sess.polys.values()))
            raise UnknownName(f"{what} is required")
        if spec in self.sess.polys:
            return self.sess.polys[spec]
        try:
            return self.S.parse(spec)
        except FSingError:
            raise UnknownName(f"{spec!r} is neither a named polynomial nor a polynomial") from None

    def map(self, name: Optional[str]) -> frobenius.CartierMapSpec:
        if name is None:
            if len(self.sess.maps) != 1:
                raise UnknownName("--map is required")
            name = next(iter(self.sess.maps))
        if name not in self.sess.maps:
            raise UnknownName(f"no map named {name!r}")
        e, u = self.sess.maps[name]
        return frobenius.CartierMapSpec(self.R, e, u)

    # -- subcommands ------------------------------------------------------
    # each returns (outputs, flags, status)

    def cmd_gb(self):
        order = {"degrevlex": DEGREVLEX, "lex": LEX}[self.args.order or "degrevlex"]
        I = self.R.lift(self.ideal(self.args.ideal))
        gens = I.gb(order).polys()
        return {"groebner": [str(g) for g in gens], "order": order.kind}, {}, "computed"

    def cmd_member(self):
        f = self.poly(self.args.poly)
        I = self.R.lift(self.ideal(self.args.ideal))
        return {"member": idealmod.member(f, I)}, {}, "computed"

    def cmd_colon(self):
        I = self.R.lift(self.ideal(self.args.ideal))
        K = self.ideal(self.args.by, default="m")
        return {"ideal": render_ideal(idealmod.colon(I, K))}, {}, "computed"

    def cmd_intersect(self):
        I = self.R.lift(self.ideal(self.args.ideal))
        K = self.R.lift(self.ideal(self.args.with_, default="m"))
        return {"ideal": render_ideal(idealmod.intersect(I, K))}, {}, "computed"

    def cmd_length(self):
        I = self.R.lift(self.ideal(self.args.ideal))
        return {"length": idealmod.vspace_length(I)}, {}, "computed"

    def cmd_dim(self):
        return {"dim": idealmod.krull_dim(self.R)}, {}, "computed"

    def cmd_bracket(self):
        e = self.args.e if self.args.e is not None else 1
        I = frobenius.bracket_power(self.ideal(self.args.ideal), e)
        return {"e": e, "ideal": render_ideal(self.R.lift(I))}, {}, "computed"

    def cmd_root(self):
        e = self.args.e if self.args.e is not None else 1
        I = frobenius.eth_root(self.ideal(self.args.ideal), e, self.R)
        return {"e": e, "ideal": render_ideal(I)}, {}, "computed"

    def cmd_fedder(self):
        J = self.ideal(self.args.ideal, default="quotient")
        m = self.ideal(self.args.at, default="m")
        return {"fpure": frobenius.fedder_is_fpure(J, m)}, {}, "computed"

    def cmd_ie(self):
        e = self.args.e if self.args.e is not None else 1
        m = self.ideal(self.args.at, default="m")
        Ie = frobenius.splitting_ideal_Ie(self.R, e, m)
        return {"e": e, "ideal": render_ideal(Ie), "a_e": idealmod.vspace_length(Ie)}, {}, "computed"

    def _tau(self, res: testideal.TauResult):
        out = {"tau": render_ideal(res.ideal), "levels_used": res.levels_used,
               "test_element": str(res.test_element) if res.test_element is not None else None}
        if res.notes:
            out["notes"] = list(res.notes)
        flags = {"stabilized": res.stabilized}
        return out, flags, "computed" if res.stabilized else "uncertified"

    def cmd_tau_map(self):
        spec = self.map(self.args.map)
        c = self.poly(self.args.c, "--c") if self.args.c is not None else None
        return self._tau(testideal.tau_map_pair(spec, c))

    def cmd_tau_ring(self):
        c = self.poly(self.args.c, "--c") if self.args.c is not None else None
        return self._tau(testideal.tau_hypersurface(self.R, c))

    def _pair(self, t: Fraction) -> testideal.PairAt:
        return testideal.PairAt(self.R, self.ideal(self.args.ideal), t)

    def cmd_tau_pair(self):
        t = self.args.t if self.args.t is not None else Fraction(1)
        c = self.poly(self.args.c, "--c") if self.args.c is not None else None
        res = testideal.tau_ideal_regular(self._pair(t), c, rounding=self.args.rounding,
                                          threads=self.args.threads)
        out, flags, status = self._tau(res)
        return {"t": render_rational(t), **out}, flags, status

    def cmd_nu(self):
        f = self.poly(self.args.poly)
        m = self.ideal(self.args.at, default="m")
        emax = self.args.emax or 1
        vals = [{"e": e, "q": self.R.p ** e, "nu": testideal.nu_value(f, e, m)}
                for e in range(1, emax + 1)]
        return {"nu": vals}, {}, "computed"

    def cmd_fpt(self):
        f = self.poly(self.args.poly)
        m = self.ideal(self.args.at, default="m")
        emax = self.args.emax or 3
        levels = testideal.fpt_intervals(f, emax, m)
        lo = max(l[2] for l in levels)
        hi = min(l[3] for l in levels)
        out = {
            "lower": render_rational(levels[-1][2]),
            "upper": render_rational(levels[-1][3]),
            "interval": "(lower, upper]",
            "levels": [{"e": e, "nu": nu, "lower": str(a), "upper": str(b)} for e, nu, a, b in levels],
        }
        return out, {"consistent": lo < hi}, "computed"

    def cmd_jumps(self):
        t_max = self.args.t if self.args.t is not None else Fraction(2)
        denom = self.args.denom or 1
        cands, ok = testideal.jumping_numbers_grid(self.R, self.ideal(self.args.ideal), t_max, denom,
                                                   rounding=self.args.rounding,
                                                   threads=self.args.threads)
        out = {"candidates": [render_rational(c) for c in cands],
               "grid": str(Fraction(1, denom)), "t_max": render_rational(t_max)}
        return out, {"stabilized": ok}, "computed" if ok else "uncertified"

    def cmd_sfr(self):
        res = testideal.sfr_result(self.R)
        flags = {"stabilized": res.stabilized}
        return ({"strongly_f_regular": res.is_unit()}, flags,
                "computed" if res.stabilized else "uncertified")

    def _estimate(self, est: numinv.InvariantEstimate):
        out = {"dimension": est.dimension,
               "levels": [lv.e for lv in est.levels],
               "counts": est.counts,
               "ratios": [render_rational(r) for r in est.ratios],
               "limit_estimate": render_rational(est.limit_estimate)}
        return out, {"converged_hint": est.converged_hint}, "computed"

    def _tolerance(self):
        return self.args.tolerance if self.args.tolerance is not None else numinv.DEFAULT_TOLERANCE

    def cmd_hk(self):
        I = self.ideal(self.args.ideal)
        est = numinv.hk_sequence(self.R, I, self.args.emax, threads=self.args.threads,
                                 tolerance=self._tolerance())
        return self._estimate(est)

    def cmd_fsig(self):
        est = numinv.fsig_sequence(self.R, self.args.emax, threads=self.args.threads,
                                   tolerance=self._tolerance())
        return self._estimate(est)

    def cmd_splitprime(self):
        res = numinv.splitting_prime_approx(self.R, self.args.emax or 2)
        out = {"prime": render_ideal(res.ideal), "levels_used": res.levels_used}
        if res.notes:
            out["notes"] = res.notes
        return out, {"certified": res.certified}, "computed" if res.certified else "uncertified"

    def _verdict(self, v: closures.ClosureVerdict):
        out = {"status": v.status, "proven": v.proven, "witness": v.witness, "detail": v.detail}
        if v.status == closures.UNKNOWN:
            status = "inconclusive"
        elif v.proven:
            status = "computed"
        else:
            status = "uncertified"
        return out, {}, status

    def cmd_fclosure(self):
        z = self.poly(self.args.poly)
        I = self.ideal(self.args.ideal)
        return self._verdict(closures.frobenius_closure_test(z, I, self.args.emax or 1, self.R))

    def cmd_tc_witness(self):
        z = self.poly(self.args.poly)
        I = self.ideal(self.args.ideal)
        c = self.poly(self.args.c, "--c") if self.args.c is not None else self.S.one()
        return self._verdict(closures.tight_closure_witness(z, I, c, self.args.emax or 2, self.R))

    def cmd_intclosure(self):
        return {"ideal": render_ideal(closures.monomial_integral_closure(self.ideal(self.args.ideal)))}, {}, "computed"

    def cmd_bs_check(self):
        m = self.args.m if self.args.m is not None else 1
        return {"holds": closures.briancon_skoda_check(self.ideal(self.args.ideal), m)}, {}, "computed"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fsing", description="F-singularity computations over F_p.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("session", type=Path, help="session file")
    ap.add_argument("--json", action="store_true", help="print the full JSON envelope")
    ap.add_argument("--threads", type=int, default=1, help="parallel e-levels (output is identical)")
    ap.add_argument("--timing", action="store_true", help="record wall time in the envelope")
    ap.add_argument("--ideal", help="named ideal ('quotient' and 'm' are built in)")
    ap.add_argument("--by", help="divisor ideal for colon")
    ap.add_argument("--with", dest="with_", help="second ideal for intersect")
    ap.add_argument("--poly", help="named polynomial or inline expression")
    ap.add_argument("--map", help="named map")
    ap.add_argument("--at", help="maximal ideal (default m)")
    ap.add_argument("--c", help="test element / multiplier, name or expression")
    ap.add_argument("--e", type=int, help="Frobenius level")
    ap.add_argument("--emax", type=int, help="largest level")
    ap.add_argument("--t", type=rational, help="exponent t as a/b")
    ap.add_argument("--denom", type=int, help="grid denominator for jumps")
    ap.add_argument("--m", type=int, help="m for bs-check")
    ap.add_argument("--tolerance", type=rational, help="convergence tolerance as a/b")
    ap.add_argument("--order", choices=["degrevlex", "lex"], help="monomial order for gb")
    ap.add_argument("--rounding", choices=["qm1", "q"], default="qm1",
                    help="exponent rounding ceil(t(q-1)) or ceil(tq)")
    return ap


def _echo(args: argparse.Namespace) -> Dict[str, object]:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in _QUIET or v is None:
            continue
        out[k.rstrip("_")] = str(v) if isinstance(v, Fraction) else v
    return out


def run(command: str, sess: SessionFile, args: argparse.Namespace) -> Tuple[dict, int]:
    """Execute one subcommand and build the result envelope."""
    echo = _echo(args)
    digest_src = json.dumps({"command": command, "args": echo, "session": format_session(sess)},
                            sort_keys=True)
    env = {
        "command": command,
        "args": echo,
        "inputs_digest": hashlib.sha256(digest_src.encode()).hexdigest(),
        "ring": {"p": sess.p, "vars": list(sess.vars), "quotient": [str(f) for f in sess.quotient]},
    }
    start = time.perf_counter()
    try:
        handler = getattr(Runner(sess, args), "cmd_" + command.replace("-", "_"))
        outputs, flags, status = handler()
        env.update(status=status, outputs=outputs, flags=flags)
    except FSingError as exc:
        status = "error"
        env.update(status=status, error={"type": exc.code, "message": str(exc)})
    except ValueError as exc:
        status = "error"
        env.update(status=status, error={"type": "InvalidArgument", "message": str(exc)})
    env["timing"] = {"seconds": round(time.perf_counter() - start, 6)} if args.timing else None
    return env, EXIT[status]


def _human(env: dict) -> str:
    lines = [f"{env['command']}: {env['status']}"]
    for key in ("outputs", "flags", "error"):
        for k, v in (env.get(key) or {}).items():
            lines.append(f"  {k}: {json.dumps(v)}")
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sess = parse_session(args.session)
    except (FSingError, OSError) as exc:
        code = getattr(exc, "code", "IOError")
        env = {"command": args.command, "status": "error", "error": {"type": code, "message": str(exc)}}
        print(json.dumps(env) if args.json else _human(env))
        return 1
    env, code = run(args.command, sess, args)
    print(json.dumps(env, indent=1) if args.json else _human(env))
    return code


if __name__ == "__main__":
    sys.exit(main())
