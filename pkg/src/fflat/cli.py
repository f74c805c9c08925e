"""Command-line front end over JSON instance documents.

Subcommands: covol, dnorm, orthonormalize, check-submod, suite. Exit
status 0 on success, 1 on domain errors (the originating error name is
printed), 2 on malformed input (JSON or element-grammar parse errors,
with location where available). `suite` exits 0 only when every property
passes.
"""

import argparse
import json
import sys

from .algebra import QExp, format_element
from .errors import ElementParseError, FFLatError, ShapeError
from .exterior import max_norm, wedge_vectors
from .harness import GenParams, property_names, run_property_suite
from .lattice import CovolConfig, check_submodularity, covolume, d_delta
from .ortho import orthonormalize
from .serialize import dumps_canonical, parse_instance

_PROG = "fflat"


def _load_doc(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _CliParseFailure(f"cannot read {path}: {exc}") from exc
    try:
        return parse_instance(text)
    except json.JSONDecodeError as exc:
        raise _CliParseFailure(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}") from exc
    except ElementParseError as exc:
        raise _CliParseFailure(f"{path}: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise _CliParseFailure(f"{path}: malformed instance document: {exc}") from exc


class _CliParseFailure(Exception):
    pass


def _emit(obj, as_json, text_lines):
    if as_json:
        sys.stdout.write(dumps_canonical(obj))
    else:
        for line in text_lines:
            print(line)


def cmd_covol(args):
    doc = _load_doc(args.input)
    if doc.lattice is None:
        raise ShapeError("instance document has no lattice")
    e = covolume(doc.lattice, CovolConfig(genus=doc.genus))
    payload = {"exponent": e.e, "q_power": f"q^{e.e}",
               "rank": doc.lattice.rank, "n": doc.n, "q": doc.field.q}
    _emit(payload, args.json, [f"covolume exponent: {e.e}",
                               f"covolume: q^{e.e}"])
    return 0


def cmd_dnorm(args):
    doc = _load_doc(args.input)
    if doc.lattice is None:
        raise ShapeError("instance document has no lattice")
    results = {}
    lines = []
    for name in sorted(doc.subspaces):
        e = d_delta(doc.subspaces[name], doc.lattice)
        results[name] = {"exponent": e.e, "q_power": f"q^{e.e}",
                         "dim": doc.subspaces[name].dim}
        lines.append(f"{name}: e = {e.e}, d = q^{e.e}")
    if not results:
        raise ShapeError("instance document names no subspaces")
    _emit({"subspaces": results}, args.json, lines)
    return 0


def cmd_orthonormalize(args):
    doc = _load_doc(args.input)
    if not doc.subspaces:
        raise ShapeError("instance document names no subspaces")
    payload = {}
    lines = []
    for name in sorted(doc.subspaces):
        sub = doc.subspaces[name]
        if sub.is_zero:
            payload[name] = {"basis": [], "wedge_exponent": 0}
            lines.append(f"{name}: zero subspace")
            continue
        basis = orthonormalize(sub.basis)
        wedge_exp = max_norm(wedge_vectors(doc.field, doc.n, basis))
        if wedge_exp != QExp(0):
            raise FFLatError(
                f"internal: wedge norm q^{wedge_exp.e} after orthonormalization")
        payload[name] = {
            "basis": [[format_element(e) for e in v] for v in basis],
            "wedge_exponent": 0,
        }
        lines.append(f"{name}: orthonormal basis (wedge norm q^0, certified)")
        for v in basis:
            lines.append("  (" + ", ".join(format_element(e) for e in v) + ")")
    _emit({"subspaces": payload}, args.json, lines)
    return 0


def cmd_check_submod(args):
    doc = _load_doc(args.input)
    if doc.lattice is None:
        raise ShapeError("instance document has no lattice")
    missing = [k for k in ("L", "M") if k not in doc.subspaces]
    if missing:
        raise ShapeError(f"check-submod needs subspaces named L and M "
                         f"(missing {', '.join(missing)})")
    rep = check_submodularity(doc.lattice, doc.subspaces["L"],
                              doc.subspaces["M"], CovolConfig(genus=doc.genus))
    lhs = rep.e_l + rep.e_m
    rhs = rep.e_cap + rep.e_sum
    if not rep.holds:
        verdict = "VIOLATED"
    elif rep.strict:
        verdict = "HOLDS (strict)"
    else:
        verdict = "HOLDS (equality)"
    lines = [
        f"e_L = {rep.e_l}, e_M = {rep.e_m}, "
        f"e_cap = {rep.e_cap}, e_sum = {rep.e_sum}",
        f"{lhs} >= {rhs}: {verdict}",
    ]
    cl, cm, cc, cs = rep.covol_exponents()
    lines.append(f"covolume form: {cl} + {cm} >= {cc} + {cs} "
                 f"({'HOLDS' if rep.covol_holds else 'VIOLATED'})")
    payload = rep.to_dict()
    payload["verdict"] = verdict
    _emit(payload, args.json, lines)
    return 0


def cmd_suite(args):
    q_list = tuple(int(tok) for tok in args.qlist.split(",") if tok.strip())
    params = GenParams(q_list=q_list, n_max=args.nmax, count=args.count,
                       seed=args.seed)
    names = None
    if args.property:
        unknown = set(args.property) - set(property_names())
        if unknown:
            raise _CliParseFailure(
                f"unknown properties: {', '.join(sorted(unknown))}")
        names = args.property
    report = run_property_suite(params, names=names)
    if args.json:
        sys.stdout.write(dumps_canonical(report.to_dict()))
    else:
        for r in report.results:
            status = "pass" if r.failed == 0 else "FAIL"
            print(f"{r.name:28s} {r.passed:5d} passed {r.failed:5d} failed "
                  f"[{status}] ({r.seconds:.2f}s)")
            if r.first_counterexample is not None:
                print("  first counterexample:")
                print("  " + json.dumps(r.first_counterexample))
        total_failed = sum(r.failed for r in report.results)
        print(f"{'ALL PROPERTIES PASS' if report.all_passed else f'{total_failed} FAILURES'}")
    return 0 if report.all_passed else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog=_PROG,
        description="Exact lattices over F_q[T]: covolume exponents, "
                    "ultrametric orthonormalization, submodularity checks, "
                    "and the randomized property suite.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_doc_command(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, help="instance JSON file")
        p.add_argument("--json", action="store_true",
                       help="emit machine-readable JSON")
        p.set_defaults(fn=fn)
        return p

    add_doc_command("covol", cmd_covol,
                    "covolume exponent of the instance lattice")
    add_doc_command("dnorm", cmd_dnorm,
                    "d exponent of every named subspace")
    add_doc_command("orthonormalize", cmd_orthonormalize,
                    "orthonormal bases for the named subspaces")
    add_doc_command("check-submod", cmd_check_submod,
                    "submodularity verdict for subspaces L and M")

    p = sub.add_parser("suite", help="run the randomized property suite")
    p.add_argument("--seed", type=lambda s: int(s, 0),
                   default=GenParams().seed, help="master seed (u64)")
    p.add_argument("--count", type=int, default=100,
                   help="instances per property")
    p.add_argument("--qlist", default="2,3,5",
                   help="comma-separated field sizes")
    p.add_argument("--nmax", type=int, default=4, help="max ambient dimension")
    p.add_argument("--property", action="append", metavar="NAME",
                   help="run only this property (repeatable)")
    p.add_argument("--json", action="store_true",
                   help="emit the report as JSON")
    p.set_defaults(fn=cmd_suite)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _CliParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ElementParseError as exc:
        print(f"parse error: ElementParseError: {exc}", file=sys.stderr)
        return 2
    except FFLatError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
