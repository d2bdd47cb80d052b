"""Command-line front end.

Exit codes: 0 success or pass, 1 verification failure, 2 usage or input
error, 3 computation aborted (work bound, non-rational center, too many
blowups).
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import formulas, jets, verify
from .errors import ArcMilnorError, ComputationAbort, WorkBoundExceeded
from .gring import ClassExpr, LaurentL
from .poly import parse_poly
from .resolve import load_resolution, resolve

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ABORT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _germ_args(p, needs_f=False):
    g = p.add_argument_group("germ")
    g.add_argument("--f", help="polynomial, e.g. 'x^2+y^3'")
    g.add_argument("--vars", help="comma-separated variable names (default: letters in --f, sorted)")
    if not needs_f:
        g.add_argument("--res", help="resolution JSON file (as written by `resolve --json`)")
    g.add_argument("--max-blowups", type=int, default=64)


def _out_args(p):
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    p.set_defaults(fmt="text")
    p.add_argument("--out", help="write output to this file instead of stdout")


def _work_args(p):
    p.add_argument("--work-bound", type=int, default=jets.DEFAULT_WORK_BOUND,
                   help="abort after this many DFS nodes (0 = unbounded)")
    p.add_argument("--threads", type=int, default=1)


def build_parser():
    p = _Parser(prog="arcmilnor", description="Monodromy invariants of hypersurface singularities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("resolve", help="embedded resolution data of a plane curve or 1-variable germ")
    _germ_args(s, needs_f=True)
    _out_args(s)

    s = sub.add_parser("lefschetz", help="Lambda(M^n), or Lambda(T_n^d) with --d")
    _germ_args(s)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int)
    _out_args(s)

    s = sub.add_parser("zeta", help="monodromy zeta function (of the t^n-fibration with --n)")
    _germ_args(s)
    s.add_argument("--n", type=int)
    _out_args(s)

    s = sub.add_parser("s-invariants", help="s_i from the Lefschetz numbers")
    _germ_args(s)
    s.add_argument("--n", type=int, help="largest n of the table (default: lcm of the N_i)")
    _out_args(s)

    s = sub.add_parser("class", help="class of the contact locus X_{n,1}")
    _germ_args(s)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mode", choices=("chi", "split", "count"), default="chi")
    s.add_argument("--q", type=int, help="prime for --mode count")
    _out_args(s)

    s = sub.add_parser("series", help="the series P(T) in factored form")
    _germ_args(s)
    s.add_argument("--mode", choices=formulas.MODES, default="chi")
    s.add_argument("--n", type=int, help="also print the T^n coefficient times L^{nm}")
    _out_args(s)

    s = sub.add_parser("volume", help="motivic volume S and chi(S)")
    _germ_args(s)
    s.add_argument("--mode", choices=formulas.MODES, default="chi")
    _out_args(s)

    s = sub.add_parser("count", help="#X_{n,1}(F_q) by jet enumeration")
    _germ_args(s, needs_f=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    _work_args(s)
    _out_args(s)

    s = sub.add_parser("fixed-count", help="points of X_{n,1}(F_q) fixed by T_n^d")
    _germ_args(s, needs_f=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    _work_args(s)
    _out_args(s)

    s = sub.add_parser("verify", help="cross-check resolution formulas against jet counts")
    vsub = s.add_subparsers(dest="theorem", required=True, parser_class=_Parser)
    v = vsub.add_parser("MT", help="chi(X_{n,1}) = Lambda(M^n)")
    _germ_args(v, needs_f=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--primes", type=_int_list)
    _work_args(v)
    _out_args(v)
    v = vsub.add_parser("PT", help="per-prime counts equal the resolution formula at L = q")
    _germ_args(v, needs_f=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--q", type=_int_list, required=True)
    _work_args(v)
    _out_args(v)
    v = vsub.add_parser("sec", help="chi(Fix T_n^d) = Lambda(M^gcd(n,d))")
    _germ_args(v, needs_f=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--d", type=int, required=True)
    v.add_argument("--primes", type=_int_list)
    _work_args(v)
    _out_args(v)
    v = vsub.add_parser("triv", help="normal-crossings closed form against enumeration")
    v.add_argument("--N", type=_int_list, required=True)
    v.add_argument("--k", type=_int_list, required=True)
    v.add_argument("--m", type=int, required=True)
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--q", type=int, required=True)
    _out_args(v)
    return p


# ------------------------------------------------------------------ inputs

def _names(args):
    if args.vars:
        return [v.strip() for v in args.vars.split(",") if v.strip()]
    found = sorted(set(re.findall(r"[A-Za-z_]\w*", args.f)))
    return found or ["x"]


def _load_f(args):
    if not args.f:
        raise UsageError("--f is required")
    names = _names(args)
    return parse_poly(args.f, names), names


def _load_res(args):
    res_file = getattr(args, "res", None)
    if bool(args.f) == bool(res_file):
        raise UsageError("give exactly one of --f and --res")
    if res_file:
        try:
            with open(res_file, "rb") as fh:
                return load_resolution(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {res_file}: {exc}") from None
    f, names = _load_f(args)
    return resolve(f, max_blowups=args.max_blowups, germ=f.to_string(names))


def _need(args, *keys):
    for k in keys:
        if getattr(args, k, None) is None:
            raise UsageError(f"--{k.replace('_', '-')} is required here")


# ----------------------------------------------------------------- outputs

def _render(value):
    if isinstance(value, (LaurentL, ClassExpr)):
        return str(value)
    return value


def _res_text(res):
    lines = ["divisors (id N nu chi_open adjacent contacts):"]
    for d in res.divisors:
        lines.append(f"  E{d.id} {d.N} {d.nu} {d.chi_open} {list(d.adjacent)} {d.strict_contacts}")
    lines.append("strata (ids branch chi_open m):")
    for s in res.strata:
        lines.append(f"  {list(s.ids)} {s.branch} {s.chi_open} {s.m}")
    return "\n".join(lines)


def _text(doc):
    if set(doc) == {"value"}:
        return str(doc["value"])
    return "\n".join(f"{k}: {v}" for k, v in doc.items())


def _command(args):
    """Return (json document, text, exit code)."""
    cmd = args.command
    if cmd == "resolve":
        res = _load_res(args)
        return res.to_dict(), _res_text(res), EXIT_OK
    if cmd == "lefschetz":
        res = _load_res(args)
        if args.d is None:
            value = formulas.lefschetz_acampo(res, args.n)
        else:
            value = formulas.lefschetz_Tn(res, args.n, args.d)
        return {"value": value}, None, EXIT_OK
    if cmd == "zeta":
        res = _load_res(args)
        z = formulas.zeta_monodromy(res) if args.n is None else formulas.zeta_fibration(res, args.n)
        return {"value": str(z), "exponents": [list(t) for t in z.items()]}, str(z), EXIT_OK
    if cmd == "s-invariants":
        res = _load_res(args)
        top = args.n or res.lcm_N()
        s = formulas.s_invariants(formulas.lefschetz_table(res, top))
        text = " ".join(f"s_{i}={v}" for i, v in sorted(s.items())) or "(all zero)"
        return {"value": {str(i): v for i, v in sorted(s.items())}}, text, EXIT_OK
    if cmd == "class":
        res = _load_res(args)
        if args.mode == "count":
            _need(args, "q")
            return {"value": formulas.count_Xn1_formula(res, args.n, args.q)}, None, EXIT_OK
        return {"value": _render(formulas.class_Xn1(res, args.n, args.mode))}, None, EXIT_OK
    if cmd == "series":
        res = _load_res(args)
        doc = {"value": str(formulas.motivic_series_P(res, args.mode))}
        if args.n is not None:
            doc["coefficient"] = _render(formulas.series_coefficient(res, args.n, args.mode))
        return doc, None, EXIT_OK
    if cmd == "volume":
        res = _load_res(args)
        S, chi = formulas.motivic_volume_S(res, args.mode)
        doc = {"chi": chi} if S is None else {"class": str(S), "chi": chi}
        return doc, None, EXIT_OK
    if cmd == "count":
        f, _ = _load_f(args)
        count, nodes = jets.enumerate_count(f, args.n, args.q, work_bound=args.work_bound, threads=args.threads)
        return {"value": count, "nodes": nodes, "backend": jets.BACKEND}, None, EXIT_OK
    if cmd == "fixed-count":
        f, _ = _load_f(args)
        value = jets.count_fixed_locus(f, args.n, args.d, args.q, args.work_bound, args.threads)
        return {"value": value}, None, EXIT_OK
    if cmd == "verify":
        report = _verify(args)
        return report.to_dict(), report.summary(), EXIT_OK if report.passed else EXIT_FAIL
    raise UsageError(f"unknown command {cmd}")


def _verify(args):
    if args.theorem == "triv":
        return verify.verify_triv(args.N, args.k, args.m, args.n, args.q)
    f, names = _load_f(args)
    res = resolve(f, max_blowups=args.max_blowups)
    common = dict(res=res, names=names, work_bound=args.work_bound, threads=args.threads)
    if args.theorem == "MT":
        return verify.verify_MT(f, args.n, args.primes, **common)
    if args.theorem == "PT":
        return verify.verify_PT_counts(f, args.n, args.q, **common)
    return verify.verify_sec(f, args.n, args.d, args.primes, **common)


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        doc, text, code = _command(args)
    except UsageError as exc:
        print(f"arcmilnor: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ComputationAbort, WorkBoundExceeded) as exc:
        print(f"arcmilnor: aborted: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ABORT
    except (ArcMilnorError, ValueError) as exc:
        print(f"arcmilnor: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = json.dumps(doc, indent=2) if args.fmt == "json" else (text if text is not None else _text(doc))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
