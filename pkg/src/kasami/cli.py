"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 invalid parameters,
3 enumeration budget exceeded.  Field elements are given either as an integer
code (coefficients as base-p digits, constant term lowest) or as a
comma-separated coefficient list ``c0,c1,...``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import codes, curves, quadform as qf, sequences as sq, sums
from .cyclo import classify_value
from .distribution import params_json
from .errors import BudgetExceeded, KasamiError, MassMismatch, ParameterError, UnrecognizedValue
from .field import build_tower
from .verify import SUITES, verify_suite

EXIT_OK, EXIT_MISMATCH, EXIT_PARAMS, EXIT_BUDGET = 0, 1, 2, 3


class Mismatch(Exception):
    pass


def _element(ctx, text):
    if text is None:
        return 0
    text = str(text).strip()
    if "," in text:
        return ctx.from_coeffs([int(c) for c in text.split(",")])
    x = int(text)
    if not 0 <= x < ctx.q:
        raise ParameterError(f"element code {x} out of range [0, {ctx.q})")
    return x


def _label(v, P):
    try:
        return classify_value(v, P).rendered
    except UnrecognizedValue:
        return None


def _value_json(v, P) -> dict:
    return {"value": v.key(), "label": _label(v, P)}


def _emit(args, payload):
    """Write a dict (JSON) or a preformatted string to stdout or --output."""
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, sort_keys=True, indent=2)
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_dist(args, dist, extra=None):
    if extra:
        dist.extra.update(extra)
    if args.format == "csv":
        _emit(args, dist.to_csv())
    elif args.format == "table":
        _emit(args, dist.to_table())
    else:
        _emit(args, dist.to_json_obj())


def _flat(args, obj: dict):
    """Non-distribution results: JSON, or key/value lines for csv/table."""
    if args.format == "json":
        _emit(args, obj)
    else:
        sep = "," if args.format == "csv" else ": "
        _emit(args, "\n".join(f"{k}{sep}{json.dumps(v)}" for k, v in sorted(obj.items())))


# -- subcommands -------------------------------------------------------------

def cmd_field(args, P, ctx):
    obj = ctx.to_json()
    obj["params"] = params_json(P)
    _flat(args, obj)


def cmd_tsum(args, P, ctx):
    a, b = _element(ctx, args.alpha), _element(ctx, args.beta)
    _flat(args, _value_json(sums.eval_T(ctx, P, a, b), P))


def cmd_ssum(args, P, ctx):
    a, b, g = (_element(ctx, x) for x in (args.alpha, args.beta, args.gamma))
    _flat(args, _value_json(sums.eval_S(ctx, P, a, b, g), P))


def cmd_rank(args, P, ctx):
    rep = qf.rank_and_invariant(ctx, P, _element(ctx, args.alpha), _element(ctx, args.beta))
    _flat(args, rep.to_json())


def _both(args, P, ctx, fn, modes):
    dists = [fn(ctx, P, mode, args.workers, args.budget) for mode in modes]
    agree = all(d == dists[0] for d in dists[1:])
    _emit_dist(args, dists[0], {"modes_agree": agree, "modes": list(modes)})
    if not agree:
        raise Mismatch(f"modes {modes} disagree")


def cmd_tdist(args, P, ctx):
    if args.mode == "both":
        return _both(args, P, ctx, sums.t_distribution, ("brute", "theorem"))
    _emit_dist(args, sums.t_distribution(ctx, P, args.mode, args.workers, args.budget))


def cmd_sdist(args, P, ctx):
    if args.mode == "both":
        return _both(args, P, ctx, sums.s_distribution, (sums.auto_s_mode(P), "theorem"))
    if args.mode == "all":
        return _both(args, P, ctx, sums.s_distribution, ("brute", "hybrid", "theorem"))
    _emit_dist(args, sums.s_distribution(ctx, P, args.mode, args.workers, args.budget))


def cmd_moments(args, P, ctx):
    modes = ("brute", "closed") if args.mode == "both" else (args.mode,)
    vals = {m: sums.moments_T(ctx, P, args.order, m, args.workers, args.budget) for m in modes}
    obj = {"params": params_json(P), "order": args.order}
    obj.update({m: (v.to_int() if v.is_rational() else v.key()) for m, v in vals.items()})
    if len(vals) > 1:
        obj["modes_agree"] = vals["brute"] == vals["closed"]
    _flat(args, obj)
    if obj.get("modes_agree") is False:
        raise Mismatch("moment modes disagree")


def cmd_curve(args, P, ctx):
    res = curves.artin_schreier_count(ctx, P, _element(ctx, args.alpha), _element(ctx, args.beta))
    _flat(args, res.to_json())
    if res.identity_holds is False:
        raise Mismatch("point-count identity fails")


def cmd_code_weights(args, P, ctx):
    spec = codes.CodeSpec(P, args.code)
    modes = ("auto", "theorem") if args.mode == "both" else (args.mode,)
    dists = [codes.weight_distribution(ctx, spec, m, args.workers, args.budget) for m in modes]
    obj = dists[0].to_json_obj()
    if len(dists) > 1:
        obj["modes_agree"] = dists[0] == dists[1]
    if args.format == "json":
        _emit(args, obj)
    else:
        _emit(args, dists[0].to_csv() if args.format == "csv" else dists[0].to_table())
    if obj.get("modes_agree") is False:
        raise Mismatch("weight distributions disagree")


def cmd_minpoly(args, P, ctx):
    f = codes.min_poly(ctx, P, args.exponent, P.t)
    _flat(args, {"exponent": args.exponent, "t": P.t, "degree": len(f) - 1,
                 "coefficients": [ctx.coeffs(c) for c in f]})


def cmd_seq(args, P, ctx):
    if args.emit_sequence:
        if args.alpha is None and args.beta is None:
            members = [(int(a), b) for a in sums.alpha_domain(ctx, P) for b in range(ctx.q)]
        else:
            members = [(_element(ctx, args.alpha), _element(ctx, args.beta))]
        lines = [",".join(map(str, sq.sequence(ctx, P, a, b))) for a, b in members]
        _emit(args, "\n".join(lines))
        return
    a, b = _element(ctx, args.alpha), _element(ctx, args.beta)
    s = sq.sequence(ctx, P, a, b)
    _flat(args, {"alpha": a, "beta": b, "period": len(s), "sequence": s})


def cmd_seq_corr(args, P, ctx):
    p1 = (_element(ctx, args.alpha1), _element(ctx, args.beta1))
    p2 = (_element(ctx, args.alpha2), _element(ctx, args.beta2))
    modes = ("direct", "via_S") if args.mode == "both" else (args.mode,)
    vals = {m: sq.correlation(ctx, P, p1, p2, args.tau, m) for m in modes}
    obj = {m: v.key() for m, v in vals.items()}
    obj["tau"] = args.tau
    if len(vals) > 1:
        obj["modes_agree"] = vals["direct"] == vals["via_S"]
    _flat(args, obj)
    if obj.get("modes_agree") is False:
        raise Mismatch("correlation modes disagree")


def cmd_corr_dist(args, P, ctx):
    if args.mode == "both":
        b = sq.correlation_distribution(ctx, P, "brute", workers=args.workers, budget=args.budget)
        th = sq.correlation_distribution(ctx, P, "theorem", args.reading)
        rep = sq.reading_report(ctx, P, b)
        agree = b == th
        _emit_dist(args, b, {"modes_agree": agree, "readings": rep})
        if not agree:
            raise Mismatch("correlation distribution disagrees with the chosen reading")
        return
    _emit_dist(args, sq.correlation_distribution(ctx, P, args.mode, args.reading,
                                                 args.workers, args.budget))


def cmd_verify(args, P, ctx):
    rep = verify_suite(P.p, P.m, P.k, P.t, args.suite, args.seed, args.workers, args.budget)
    if args.format == "json":
        _emit(args, rep.to_json())
    else:
        _emit(args, rep.to_table())
    if rep.status != "pass":
        raise Mismatch("verification failed")


COMMANDS = {
    "field": cmd_field, "tsum": cmd_tsum, "ssum": cmd_ssum, "rank": cmd_rank,
    "tdist": cmd_tdist, "sdist": cmd_sdist, "moments": cmd_moments, "curve": cmd_curve,
    "code-weights": cmd_code_weights, "minpoly": cmd_minpoly, "seq": cmd_seq,
    "seq-corr": cmd_seq_corr, "corr-dist": cmd_corr_dist, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True)
    common.add_argument("--m", type=int, required=True)
    common.add_argument("--k", type=int, required=True)
    common.add_argument("--t", type=int, default=1)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--output", default=None, help="write to this file instead of stdout")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks only")
    common.add_argument("--budget", type=int, default=sums.DEFAULT_BUDGET,
                        help="maximum number of summand evaluations for enumerations")

    parser = argparse.ArgumentParser(prog="kasami", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    add("field", "describe the field F_(p^n)")
    for name, extra in (("tsum", ()), ("ssum", ("--gamma",))):
        sp = add(name, f"evaluate {name[0].upper()}(alpha, beta{', gamma' if extra else ''})")
        sp.add_argument("--alpha", default="0")
        sp.add_argument("--beta", default="0")
        for flag in extra:
            sp.add_argument(flag, default="0")
    sp = add("rank", "rank and eta0(Delta) of the quadratic form of (alpha, beta)")
    sp.add_argument("--alpha", default="0")
    sp.add_argument("--beta", default="0")
    sp = add("tdist", "value distribution of T")
    sp.add_argument("--mode", choices=("brute", "theorem", "both"), default="brute")
    sp = add("sdist", "value distribution of S")
    sp.add_argument("--mode", choices=("auto", "brute", "theorem", "hybrid", "both", "all"),
                    default="auto", help="auto: brute up to 10^6 triples, hybrid above")
    sp = add("moments", "power moments of T")
    sp.add_argument("--order", type=int, choices=(1, 2, 3), required=True)
    sp.add_argument("--mode", choices=("brute", "closed", "both"), default="both")
    sp = add("curve", "affine points of the Artin-Schreier curve of (alpha, beta)")
    sp.add_argument("--alpha", default="0")
    sp.add_argument("--beta", default="0")
    sp = add("code-weights", "weight distribution of C1 or C2")
    sp.add_argument("--code", choices=codes.CODES, default="C1")
    sp.add_argument("--mode", choices=("auto", "brute", "direct", "pushforward", "theorem", "both"),
                    default="auto")
    sp = add("minpoly", "minimal polynomial of pi^(-e) over F_(p^t)")
    sp.add_argument("--exponent", type=int, required=True)
    sp = add("seq", "one member of the sequence family")
    sp.add_argument("--alpha", default=None)
    sp.add_argument("--beta", default=None)
    sp.add_argument("--emit-sequence", action="store_true",
                    help="write digits, one sequence per line (all members if no alpha/beta)")
    sp = add("seq-corr", "correlation of two members at shift tau")
    for flag in ("--alpha1", "--beta1", "--alpha2", "--beta2"):
        sp.add_argument(flag, default="0")
    sp.add_argument("--tau", type=int, default=0)
    sp.add_argument("--mode", choices=("direct", "via_S", "both"), default="both")
    sp = add("corr-dist", "correlation distribution of the family")
    sp.add_argument("--mode", choices=("brute", "theorem", "both"), default="brute")
    sp.add_argument("--reading", choices=("corrected", "printed"), default="corrected")
    sp = add("verify", "run the cross-check suite")
    sp.add_argument("--suite", choices=("all",) + SUITES, default="all")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARAMS if exc.code else EXIT_OK
    try:
        if args.budget <= 0 or args.workers < 0:
            raise ParameterError("budget must be positive and workers non-negative")
        if args.command == "seq" and not args.emit_sequence:
            args.alpha = "0" if args.alpha is None else args.alpha
            args.beta = "0" if args.beta is None else args.beta
        P, ctx = build_tower(args.p, args.m, args.k, args.t)
        COMMANDS[args.command](args, P, ctx)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (Mismatch, MassMismatch) as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except KasamiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def main():
    sys.exit(run())


__all__ = ["run", "main", "build_parser"]
