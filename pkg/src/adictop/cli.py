"""Command-line front end.

Every subcommand prints one JSON report (schema ``adictop/1``) or a short
text summary.  Exit status: 0 on success (negative verdicts included), 2 on
parse and precondition errors or a failed ``verify``, 1 on internal errors.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from fractions import Fraction

from . import breadth, curves, hensel, independence, rings
from .arith import LocalContext, parse_element, parse_valuation, format_element
from .certificate import SCHEMA, Certificate, run_check
from .errors import AdictopError, DomainError, ParseError

DEFAULT_PRECISION = 4


# -- helpers ----------------------------------------------------------------

def _elements(text: str):
    return [parse_element(s) for s in text.split(",") if s.strip()]


def _ints(text: str):
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise ParseError("expected comma-separated integers", text, 0) from None


def _context(args) -> LocalContext:
    if args.prime is not None and args.valuation is not None:
        raise DomainError("give either --prime or --valuation")
    if args.prime is not None:
        v = parse_valuation(str(args.prime))
    elif args.valuation is not None:
        v = parse_valuation(args.valuation)
    else:
        raise DomainError("a valuation is required (--prime P or --valuation t)")
    return LocalContext(v, args.precision)


def _stringify(x):
    if isinstance(x, Certificate):
        return x.to_dict()
    if isinstance(x, dict):
        return {str(k): _stringify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_stringify(v) for v in x]
    if isinstance(x, Fraction) or type(x).__name__ == "RationalFunction":
        return format_element(x)
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("ADICTOP_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParseError("ADICTOP_SEED must be an integer", env, 0) from None
    return 0


# -- subcommands ---------------------------------------------------------------
# each returns (paper_ref, inputs, outcome, certificate, extra)

def cmd_hensel(args):
    ctx = _context(args)
    r = hensel.hensel_lift(args.poly, parse_element(args.a0), ctx, var=args.var)
    return ("root lifting in henselian local rings",
            {"poly": args.poly, "a0": args.a0, "valuation": str(ctx.valuation)},
            "root", r.certificate, r.to_dict())


def cmd_probe(args):
    ctx = _context(args)
    coeffs = _elements(args.coeffs)
    r = hensel.gt_hensel_probe(args.n, coeffs, ctx, args.gamma)
    return ("gt-henselianity probe polynomial X^n + X^(n-1) + lower terms",
            {"n": args.n, "coeffs": args.coeffs, "gamma": args.gamma,
             "valuation": str(ctx.valuation)},
            "root", r.certificate, r.to_dict())


def _system(args, variables):
    if args.system_json:
        with open(args.system_json) as fh:
            return hensel.PolySystem.from_json(json.load(fh))
    if not args.system:
        raise DomainError("give --system or --system-json")
    return hensel.PolySystem.from_text(args.system, variables)


def cmd_implicit(args):
    ctx = _context(args)
    xv, yv = args.x_vars.split(","), args.y_vars.split(",")
    system = _system(args, xv + yv)
    r = hensel.implicit_solve(system, xv, yv, (_elements(args.base_x), _elements(args.base_y)),
                              _elements(args.x), ctx)
    return ("polynomial implicit function theorem",
            {"system": system.to_json(), "x_vars": xv, "y_vars": yv, "base_x": args.base_x,
             "base_y": args.base_y, "x": args.x, "valuation": str(ctx.valuation)},
            "solution", r.certificate, r.to_dict())


def cmd_inverse(args):
    ctx = _context(args)
    vs = args.vars.split(",")
    system = _system(args, vs)
    r = hensel.newton_inverse(system, _elements(args.a), _elements(args.target), ctx)
    return ("polynomial inverse function theorem",
            {"system": system.to_json(), "a": args.a, "target": args.target,
             "valuation": str(ctx.valuation)},
            "solution", r.certificate, r.to_dict())


def cmd_breadth(args):
    ring = rings.parse_ring(args.ring)
    res = breadth.breadth_multiadic(ring, samples=args.samples, seed=args.seed_value)
    v = res.validation
    return ("breadth of a semilocal ring; the W_1 case is the valuation-ring case",
            {"ring": str(ring), "samples": args.samples},
            f"breadth {res.breadth}", {"non_w": res.non_w_certificate},
            {"breadth": res.breadth, "non_w_tuple": [str(x) for x in res.non_w_tuple],
             "validation": {"verdicts": v["verdicts"], "samples": v["samples"]}})


def cmd_wn_test(args):
    ring = rings.parse_ring(args.ring)
    planted = [_elements(t) for t in args.planted.split(";")] if args.planted else []
    suite = breadth.curated_differential_suite(ring, args.samples, args.seed_value) \
        if args.curated else None
    rep = breadth.wn_random_test(ring, args.n, args.samples, args.seed_value, planted, suite)
    certs = {f"counterexample_{i}": Certificate.from_dict(c["certificate"])
             for i, c in enumerate(rep["counterexamples"][:args.max_counterexamples])}
    outcome = "fails found" if rep["verdicts"]["fails"] else "no failures"
    extra = {"verdicts": rep["verdicts"], "samples": rep["samples"],
             "counterexamples": [c["tuple"] for c in rep["counterexamples"]]}
    return ("W_n-domain condition", {"ring": str(ring), "n": args.n, "samples": args.samples,
                                     "planted": args.planted, "curated": args.curated},
            outcome, certs, extra)


def cmd_member(args):
    ring = rings.parse_ring(args.ring)
    m = breadth.sum_ideal_membership(ring, parse_element(args.a), _elements(args.gens))
    return ("membership in a finite sum of principal submodules",
            {"ring": str(ring), "a": args.a, "gens": args.gens},
            m.outcome, m.certificate(), {"witnesses": m.witnesses})


def _nbhd(prime, exp, center="0"):
    return rings.Neighborhood(rings.MultiAdicInt((prime,)), Fraction(prime) ** exp,
                              parse_element(center))


def cmd_independence(args):
    U, V = _nbhd(args.p, args.mp, args.center_p), _nbhd(args.q, args.mq, args.center_q)
    inputs = {"p": args.p, "q": args.q, "mp": args.mp, "mq": args.mq,
              "center_p": args.center_p, "center_q": args.center_q}
    if U.center == 0 and V.center == 0:
        dec = independence.one_in_sum(U, V)
        return ("independent topologies: 1 in U + V", inputs, "independent",
                dec.certificate, {"u": dec.u, "v": dec.v})
    x, cert = independence.independence_witness(U, V)
    return ("independent topologies: basic opens meet", inputs, "independent", cert,
            {"point": x})


def cmd_split(args):
    s = independence.split_fraction((args.p, args.q), parse_element(args.x))
    return ("Bezout splitting of a fraction across two localizations",
            {"p": args.p, "q": args.q, "x": args.x}, "split", s.certificate,
            {"parts": [s.p_part, s.rest], "members": s.member_of()})


def cmd_nonhensel(args):
    c = independence.non_gt_hensel_certificate(args.p, args.q, args.m, args.n)
    return ("a sum of independent V-topologies is not gt-henselian",
            {"p": args.p, "q": args.q, "m": args.m, "n": args.n},
            "not gt-henselian", c.certificate, {"a": c.a, "f(a)": c.fa})


def cmd_problematic(args):
    rep = independence.problematic_instance(args.p, args.q, (args.mp, args.mq),
                                            args.samples, args.seed_value)
    certs = {"saturation": rep.pop("saturation_certificate"),
             "independence": rep.pop("independence_certificate")}
    return ("integral domain with two maximal ideals and independent localizations",
            {"p": args.p, "q": args.q, "mp": args.mp, "mq": args.mq, "samples": args.samples},
            "two maximal ideals", certs, rep)


def _divisor(text: str) -> curves.Divisor:
    terms = []
    for part in text.split(","):
        if not part.strip():
            continue
        if ":" not in part:
            raise ParseError("divisor terms look like point:multiplicity", text, text.find(part))
        pt, m = part.rsplit(":", 1)
        terms.append((curves.as_point(pt.strip()), int(m)))
    return curves.Divisor(tuple(terms))


def cmd_rr_space(args):
    d = _divisor(args.divisor)
    basis, cert = curves.rr_space_p1(d)
    return ("Riemann-Roch space on the projective line",
            {"divisor": str(d)}, f"dimension {len(basis)}", cert,
            {"basis": basis, "degree": d.degree})


def cmd_prescribe(args):
    poles = [curves.as_point(s) for s in args.poles.split(",") if s.strip()]
    f, cert = curves.prescribed_function(poles, curves.as_point(args.zero))
    return ("function with prescribed simple poles and a simple zero",
            {"poles": args.poles, "zero": args.zero}, "constructed", cert,
            {"f": f, "divisor": curves.divisor_of(f)})


def cmd_weak_approx(args):
    cons = []
    for c in args.constraint or []:
        try:
            p, tgt, k = c.split(":")
            cons.append((int(p), parse_element(tgt), int(k)))
        except ValueError:
            raise ParseError("constraints look like prime:target:precision", c, 0) from None
    x, cert = curves.weak_approx_line(cons)
    return ("weak approximation on the line", {"constraints": args.constraint or []},
            "approximant", cert, {"x": x})


def _signs(text: str):
    out = []
    for s in text.split(","):
        s = s.strip()
        if s in ("+", "+1", "1"):
            out.append(1)
        elif s in ("-", "-1"):
            out.append(-1)
        else:
            raise ParseError("signs are + or -", text, text.find(s))
    return tuple(out)


def cmd_conic(args):
    c = parse_element(args.c)
    signs = _signs(args.signs)
    a, b, cert = curves.conic_sign_witness(c, args.p, args.q, signs, (args.m, args.n))
    return ("sign patterns on the conic b^2 = 1 + c*a",
            {"c": args.c, "p": args.p, "q": args.q, "signs": list(signs), "m": args.m,
             "n": args.n}, "point", cert, {"a": a, "b": b})


def cmd_verify_ip(args):
    subset = frozenset(_ints(args.subset)) if args.subset else frozenset()
    spec = curves.PatternSpec(tuple(_elements(args.c)), subset, (args.p, args.q), (args.m, args.n))
    cand = _elements(args.candidate)
    ok = curves.ip_pattern_verify(spec, cand)
    cert = curves.ip_pattern_certificate(spec, cand) if ok else None
    return ("independence-property pattern on b_i^2 = 1 + a*c_i",
            {"c": args.c, "subset": sorted(subset), "p": args.p, "q": args.q, "m": args.m,
             "n": args.n, "candidate": args.candidate},
            "pattern realized" if ok else "pattern not realized", cert, {"valid": ok})


def cmd_compare(args):
    t0, t1 = rings.parse_topology(args.tau0), rings.parse_topology(args.tau1)
    c = rings.compare(t0, t1)
    return ("comparison of a V-topology with a locally bounded ring topology",
            {"tau0": str(t0), "tau1": str(t1)}, c.outcome, c.certificate, {})


def cmd_semilocal(args):
    ring = rings.parse_ring(args.ring)
    k, cert = rings.semilocal_degree(ring, seed=args.seed_value)
    return ("number of maximal ideals of the bounded ring",
            {"ring": str(ring)}, f"degree {k}", cert, {"degree": k})


def _certificates(obj):
    """Every embedded certificate dict in a report."""
    if isinstance(obj, dict):
        if "claim" in obj and "checks" in obj:
            yield obj
            return
        for v in obj.values():
            yield from _certificates(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _certificates(v)


def verify_report(report: dict):
    """Re-run every check; returns ``(ok, failures, total)``."""
    if report.get("schema") != SCHEMA:
        raise ParseError(f"unsupported schema {report.get('schema')!r}")
    failures, total = [], 0
    for cert in _certificates(report.get("certificate")):
        for check in cert["checks"]:
            total += 1
            try:
                ok = run_check(check)
            except AdictopError as exc:
                ok = False
                check = dict(check, error=str(exc))
            if not ok:
                failures.append(check)
    return not failures, failures, total


def cmd_verify(args):
    try:
        if args.file == "-":
            report = json.load(sys.stdin)
        else:
            with open(args.file) as fh:
                report = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read report: {exc}") from None
    ok, failures, total = verify_report(report)
    return ("certificate re-verification", {"file": args.file, "command": report.get("command")},
            "valid" if ok else "invalid", None,
            {"checks": total, "failures": failures, "_status": 0 if ok else 2})


COMMANDS = {
    "hensel": cmd_hensel, "probe": cmd_probe, "implicit": cmd_implicit, "inverse": cmd_inverse,
    "breadth": cmd_breadth, "wn-test": cmd_wn_test, "member": cmd_member,
    "independence": cmd_independence, "split": cmd_split, "nonhensel-demo": cmd_nonhensel,
    "problematic": cmd_problematic, "rr-space": cmd_rr_space, "prescribe": cmd_prescribe,
    "weak-approx": cmd_weak_approx, "conic": cmd_conic, "verify-ip": cmd_verify_ip,
    "compare": cmd_compare, "semilocal": cmd_semilocal, "verify": cmd_verify,
}


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (default: $ADICTOP_SEED or 0)")
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--out", help="also write the JSON report to this file")

    local = argparse.ArgumentParser(add_help=False)
    local.add_argument("--prime", type=int, help="p-adic completion")
    local.add_argument("--valuation", help="t, pi(t^2+1), p5, ...")
    local.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                       help="work modulo uniformizer^N")

    parser = argparse.ArgumentParser(prog="adictop",
                                     description="Exact arithmetic on ring topologies of Q and Q(t)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, *parents):
        return sub.add_parser(name, help=help_, parents=[common, *parents])

    p = add("hensel", "lift a root of a univariate polynomial", local)
    p.add_argument("--poly", required=True)
    p.add_argument("--a0", required=True)
    p.add_argument("--var", default="X")

    p = add("probe", "root of X^n + X^(n-1) + c_(n-2) X^(n-2) + ... + c_0 near -1", local)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coeffs", required=True, help="c_0,...,c_(n-2)")
    p.add_argument("--gamma", type=int, default=1)

    for name, help_ in (("implicit", "implicit function solver"),
                        ("inverse", "inverse function solver")):
        p = add(name, help_, local)
        p.add_argument("--system", help="polynomials separated by ';'")
        p.add_argument("--system-json", help="JSON file {variables, polys: [[{coeff, exponents}]]}")
        if name == "implicit":
            p.add_argument("--x-vars", required=True)
            p.add_argument("--y-vars", required=True)
            p.add_argument("--base-x", required=True)
            p.add_argument("--base-y", required=True)
            p.add_argument("--x", required=True)
        else:
            p.add_argument("--vars", required=True)
            p.add_argument("--a", required=True)
            p.add_argument("--target", required=True)

    p = add("breadth", "breadth of a multi-adic ring")
    p.add_argument("--ring", required=True)
    p.add_argument("--samples", type=int, default=10000)

    p = add("wn-test", "W_n condition on random or curated tuples")
    p.add_argument("--ring", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--planted", help="tuples 'a,b;c,d'")
    p.add_argument("--curated", action="store_true")
    p.add_argument("--max-counterexamples", type=int, default=5)

    p = add("member", "is a in b_1 R + ... + b_k R?")
    p.add_argument("--ring", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--gens", required=True)

    p = add("independence", "1 in U + V, or a common point of two basic opens")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--mp", type=int, default=1)
    p.add_argument("--mq", type=int, default=1)
    p.add_argument("--center-p", default="0")
    p.add_argument("--center-q", default="0")

    p = add("split", "split a fraction across two localizations")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--x", required=True)

    p = add("nonhensel-demo", "x^2 - x is not open in a sum of two adic topologies")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=1)

    p = add("problematic", "the two-prime localization and its independent localizations")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--mp", type=int, default=2)
    p.add_argument("--mq", type=int, default=1)
    p.add_argument("--samples", type=int, default=200)

    p = add("rr-space", "basis of H^0(D) on the projective line")
    p.add_argument("--divisor", required=True, help="point:mult,... e.g. 0:2,inf:-1")

    p = add("prescribe", "function with given simple poles and simple zero")
    p.add_argument("--poles", required=True)
    p.add_argument("--zero", required=True)

    p = add("weak-approx", "simultaneous p-adic approximation")
    p.add_argument("--constraint", action="append", help="prime:target:precision")

    p = add("conic", "point of b^2 = 1 + c*a with prescribed signs")
    p.add_argument("--c", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--signs", default="+,+")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=1)

    p = add("verify-ip", "check a candidate for the sign-pattern system")
    p.add_argument("--c", required=True, help="c_1,...,c_n")
    p.add_argument("--subset", default="", help="indices in S, e.g. 1,3")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--candidate", required=True, help="a,b_1,...,b_n")

    p = add("compare", "finer-or-independent against a V-topology")
    p.add_argument("--tau0", required=True)
    p.add_argument("--tau1", required=True)

    p = add("semilocal", "number of maximal ideals")
    p.add_argument("--ring", required=True)

    p = add("verify", "re-check every certificate in a JSON report")
    p.add_argument("file")
    return parser


def _text(report: dict) -> str:
    lines = [f"{report['command']}: {report['outcome']}", f"  ({report['paper_ref']})"]
    for k, v in report.get("result", {}).items():
        if k.startswith("_"):
            continue
        lines.append(f"  {k}: {json.dumps(v, sort_keys=True) if not isinstance(v, str) else v}")
    n = sum(len(c["checks"]) for c in _certificates(report.get("certificate")))
    if n:
        lines.append(f"  certificate: {n} checks passed")
    return "\n".join(lines)


def run(argv=None):
    """Parse, dispatch and build the report; returns ``(status, report)``."""
    args = build_parser().parse_args(argv)
    args.seed_value = _seed(args)
    paper_ref, inputs, outcome, cert, extra = COMMANDS[args.command](args)
    extra = dict(extra)
    status = extra.pop("_status", 0)
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "paper_ref": paper_ref,
        "inputs": _stringify(inputs),
        "outcome": outcome,
        "result": _stringify(extra),
        "certificate": _stringify(cert),
        "seed": args.seed_value,
        "precision": getattr(args, "precision", None),
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
    }
    return status, report, args


def main(argv=None) -> int:
    try:
        status, report, args = run(argv)
        text = json.dumps(report, sort_keys=True, indent=2)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        print(text if args.output == "json" else _text(report))
        return status
    except AdictopError as exc:
        print(f"adictop: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except Exception as exc:  # pragma: no cover - reported as an internal error
        print(f"adictop: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
