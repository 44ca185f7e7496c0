"""Command-line interface.

Exit codes: 0 all checks pass, 1 usage error, 2 counterexample found.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import product as _cartesian

from . import catalog
from .arithfun import convolution
from .catalog import TableBoundError, tau_table
from .checks import verify_cmn, verify_local_series, verify_local_thm2, verify_orthogonality
from .factorint import is_prime
from .identities import (
    psi_kernel,
    sign_flipped,
    theta_dk_kernel,
    theta_kernel,
    verify_classic_br,
    verify_corollary1,
    verify_corollary2,
    verify_thm1_forward,
    verify_thm1_inverse,
    verify_thm2,
)
from .report import VerificationReport, format_value

EXIT_OK, EXIT_USAGE, EXIT_COUNTEREXAMPLE = 0, 1, 2

TARGETS = (
    "classic", "thm1", "thm1-inv", "thm2", "thm2-inv", "cor1", "cor2",
    "cmn", "orthogonality", "local-series",
)

TABLE_HELP = """\
columns:
  --tau             n, tau(n)
  --f NAME          n, f(n)
  --kernel KIND     exponent vector (comma separated), local value at --prime
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--tau-bound", type=int, default=catalog.DEFAULT_TAU_BOUND,
                   help="length of the tau table (default %(default)s)")
    p.add_argument("--k", type=int, help="parameter for sigma_k, id_k, d_k")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="busche", description="Exact checks of divisor-sum identities for multiplicative functions")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate a catalog function or a convolution a*b*...")
    _common(ev)
    ev.add_argument("--f", required=True, help=f"one of {', '.join(catalog.NAMES)}, or names joined by '*'")
    ev.add_argument("--n", type=int, nargs="+", required=True, action="extend")

    ver = sub.add_parser("verify", help="verify an identity over a range")
    _common(ver)
    ver.add_argument("target", choices=TARGETS)
    ver.add_argument("--f", help="function name (classic, thm1, thm1-inv, local-series)")
    ver.add_argument("--r", type=int, help="number of variables")
    ver.add_argument("--max", type=int, help="upper bound for every argument")
    ver.add_argument("--dk", type=int, help="use F = d_k (thm2, thm2-inv, cor2, local-series)")
    ver.add_argument("--factors", help="comma-separated completely multiplicative factors, "
                     "e.g. one,id,one,id (tokens: one, id, id:K, lambda, chi4)")
    ver.add_argument("--prime", type=int, nargs="+", action="extend", help="primes for local-series")
    ver.add_argument("--D", type=int, help="truncation degree for local-series")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--samples", type=int, help="number of random contexts (cmn, orthogonality)")
    ver.add_argument("--kmax", type=int, help="largest context size (cmn, orthogonality)")
    ver.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0 for reproducible output")
    ver.add_argument("--flip-kernel-sign", action="store_true",
                     help="negative control: negate the kernel so the check must fail")

    tab = sub.add_parser("table", help="emit a table", epilog=TABLE_HELP,
                         formatter_class=argparse.RawDescriptionHelpFormatter)
    _common(tab)
    what = tab.add_mutually_exclusive_group()
    what.add_argument("--tau", action="store_true")
    what.add_argument("--kernel", choices=("psi", "psi-inv", "theta", "theta-inv"))
    tab.add_argument("--f", help="function name (value table, or psi kernel source)")
    tab.add_argument("--max", type=int, help="largest n for value tables")
    tab.add_argument("--r", type=int, default=2)
    tab.add_argument("--dk", type=int)
    tab.add_argument("--factors")
    tab.add_argument("--prime", type=int, default=2)
    tab.add_argument("--max-exp", type=int, default=2, help="kernel table exponent bound (default 2)")
    return parser


# -- helpers ---------------------------------------------------------------


def _lookup(name, args):
    try:
        return catalog.lookup(name, k=args.k, tau_bound=args.tau_bound)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None


def _factor_list(args):
    if args.factors and args.dk:
        raise UsageError("give either --factors or --dk")
    if args.dk:
        if args.dk < 1:
            raise UsageError("--dk needs k >= 1")
        return (catalog.make_power(0),) * args.dk
    if not args.factors:
        raise UsageError("need --dk K or --factors LIST")
    out = []
    for tok in args.factors.split(","):
        tok = tok.strip()
        name, _, k = tok.partition(":")
        try:
            out.append(catalog.completely_multiplicative("id_k" if k else name, int(k) if k else None))
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad factor {tok!r}: {exc}") from None
    return tuple(out)


def _need(value, flag, minimum=1):
    if value is None:
        raise UsageError(f"{flag} is required")
    if value < minimum:
        raise UsageError(f"{flag} must be >= {minimum}")
    return value


def _print_rows(header, rows, fmt, out):
    if fmt == "json":
        json.dump([dict(zip(header, r)) for r in rows], out, indent=1)
        out.write("\n")
    else:
        out.write("\t".join(header) + "\n")
        for r in rows:
            out.write("\t".join(str(x) for x in r) + "\n")


# -- commands --------------------------------------------------------------


def cmd_eval(args, out) -> int:
    names = args.f.split("*")
    fs = [_lookup(n.strip(), args).f for n in names]
    if any(n < 1 for n in args.n):
        raise UsageError("arguments must be positive integers")
    rows = []
    for n in args.n:
        if len(fs) == 1:
            try:
                v = fs[0](n)
            except TableBoundError as exc:
                raise UsageError(f"{exc}; raise --tau-bound") from None
        else:
            g = fs[0]
            for h in fs[1:]:
                g = convolution(g, h)
            v = g(n)
        rows.append((n, format_value(v)))
    _print_rows(("n", args.f), rows, args.format, out)
    return EXIT_OK


def _special(args, need_gh=True):
    if not args.f:
        raise UsageError("--f is required")
    sp = _lookup(args.f, args)
    if need_gh and sp.gh is None:
        raise UsageError(f"{args.f} is not a convolution of two completely multiplicative functions")
    return sp


def _run_verify(args) -> VerificationReport:
    t = args.target
    if t == "classic":
        sp = _special(args)
        mx = _need(args.max, "--max")
        psi = sign_flipped(psi_kernel(sp.f, sp.gh, 2)) if args.flip_kernel_sign else None
        return verify_classic_br(sp.f, sp.gh, mx, psi=psi)
    if t in ("thm1", "thm1-inv"):
        sp = _special(args)
        mx = _need(args.max, "--max")
        r = _need(args.r if args.r is not None else 3, "--r")
        kernel = psi_kernel(sp.f, sp.gh, r)
        if args.flip_kernel_sign:
            kernel = sign_flipped(kernel)
        fn = verify_thm1_forward if t == "thm1" else verify_thm1_inverse
        return fn(sp.f, sp.gh, r, mx, kernel=kernel)
    if t in ("thm2", "thm2-inv"):
        factors = _factor_list(args)
        mx = _need(args.max, "--max")
        kernel = theta_kernel(factors)
        if args.flip_kernel_sign:
            kernel = sign_flipped(kernel)
        forms = ("forward",) if t == "thm2" else ("inverse",)
        return verify_thm2(factors, len(factors), mx, forms=forms, kernel=kernel)
    if t == "cor1":
        mx = _need(args.max, "--max")
        r = _need(args.r if args.r is not None else 2, "--r")
        try:
            return verify_corollary1(tau_table(args.tau_bound), r, mx)
        except TableBoundError as exc:
            raise UsageError(f"{exc}; raise --tau-bound") from None
    if t == "cor2":
        k = _need(args.dk if args.dk is not None else args.k, "--dk")
        mx = _need(args.max, "--max")
        kernel = theta_dk_kernel(k)
        if args.flip_kernel_sign:
            kernel = sign_flipped(kernel)
        return verify_corollary2(k, mx, kernel=kernel)
    if t == "cmn":
        return verify_cmn(args.seed, args.samples or 100, args.kmax or 6)
    if t == "orthogonality":
        return verify_orthogonality(args.seed, args.samples or 20, args.kmax or 8, 12)
    if t == "local-series":
        primes = args.prime or [2, 3, 5]
        if not all(is_prime(p) for p in primes):
            raise UsageError("--prime values must be primes")
        if args.dk is not None or args.factors:
            factors = _factor_list(args)
            D = _need(args.D if args.D is not None else 5, "--D")
            return verify_local_thm2(factors, primes, D)
        sp = _special(args)
        D = _need(args.D if args.D is not None else 6, "--D")
        rs = [args.r] if args.r else [2, 3]
        return verify_local_series(sp.f, sp.gh, primes, rs, D)
    raise UsageError(f"unknown target {t}")


def _render_report(rep: VerificationReport, args, out) -> None:
    if args.format == "json":
        json.dump(rep.to_dict(timing=not args.no_timing), out, indent=1)
        out.write("\n")
        return
    status = "ok" if rep.verified else "FAIL"
    out.write("identity\trange\tchecked\tcounterexamples\tstatus\n")
    out.write(f"{rep.identity}\t{rep.range}\t{rep.checked}\t{len(rep.counterexamples)}\t{status}\n")
    for c in rep.counterexamples:
        inp = ",".join(str(x) for x in c.input)
        out.write(f"counterexample\t{c.form}\t{inp}\tlhs={format_value(c.lhs)}\trhs={format_value(c.rhs)}\n")
        for a, w, term in c.expansion:
            out.write(f"\tterm\t{','.join(str(x) for x in a)}\tweight={format_value(w)}\tterm={format_value(term)}\n")


def cmd_verify(args, out) -> int:
    rep = _run_verify(args)
    _render_report(rep, args, out)
    if not args.no_timing and args.format == "tsv":
        print(f"elapsed_ms\t{rep.elapsed_ms:.1f}", file=sys.stderr)
    return EXIT_OK if rep.verified else EXIT_COUNTEREXAMPLE


def cmd_table(args, out) -> int:
    if args.tau:
        mx = _need(args.max, "--max")
        table = tau_table(mx)
        _print_rows(("n", "tau"), [(n, table[n]) for n in range(1, mx + 1)], args.format, out)
        return EXIT_OK
    if args.kernel is None:
        if args.f:
            return _cmd_function_table(args, out)
        raise UsageError("table needs --tau, --kernel or --f")
    p = args.prime
    if not is_prime(p):
        raise UsageError("--prime must be a prime")
    E = _need(args.max_exp, "--max-exp", 0)
    if args.kernel.startswith("psi"):
        sp = _special(args)
        r = _need(args.r, "--r")
        kernel = psi_kernel(sp.f, sp.gh, r)
    else:
        if args.dk and not args.factors:
            kernel = theta_dk_kernel(args.dk)
        else:
            kernel = theta_kernel(_factor_list(args))
    if args.kernel.endswith("-inv"):
        kernel = kernel.inverse()
    rows = []
    for e in _cartesian(range(E + 1), repeat=kernel.arity):
        try:
            v = kernel.local_value(p, e)
        except TableBoundError as exc:
            raise UsageError(f"{exc}; raise --tau-bound") from None
        rows.append((",".join(map(str, e)), format_value(v)))
    _print_rows(("exponents", f"{kernel.name}@p={p}"), rows, args.format, out)
    return EXIT_OK


def _cmd_function_table(args, out) -> int:
    sp = _lookup(args.f, args)
    mx = _need(args.max, "--max")
    rows = []
    for n in range(1, mx + 1):
        try:
            rows.append((n, format_value(sp.f(n))))
        except TableBoundError as exc:
            raise UsageError(f"{exc}; raise --tau-bound") from None
    _print_rows(("n", sp.f.name), rows, args.format, out)
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        argv = list(sys.argv[1:] if argv is None else argv)
        args = parser.parse_args(argv)
        if args.command == "eval":
            return cmd_eval(args, out)
        if args.command == "verify":
            return cmd_verify(args, out)
        return cmd_table(args, out)
    except UsageError as exc:
        print(f"busche: error: {exc}", file=sys.stderr)
        print(parser.format_usage(), file=sys.stderr, end="")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
