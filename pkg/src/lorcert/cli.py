"""``lorcert`` command-line interface.

Exit codes: 0 pass/success, 1 certified fail, 2 usage or input error,
3 inconclusive (realizer only).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import factors, geometry, golden, hull, inequalities, lorentzian, poly, realizer
from .report import CertReport, jsonable

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    p = Path(path)
    if not p.exists():
        raise InputError(f"input: no such file {path!r}")
    return p.read_text()


def _load_json(path: str) -> dict:
    text = _read_source(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input: invalid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise InputError("input: expected a JSON object at top level")
    return doc


def _load_poly(args) -> poly.HomoPoly:
    if getattr(args, "expr", None):
        return poly.parse(args.expr)
    if not args.input:
        raise InputError("input: give a polynomial file, '-' for stdin, or --expr")
    return poly.parse(_read_source(args.input))


def _load_bodies(path: str) -> geometry.BodySystem:
    return geometry.bodies_from_json(_load_json(path))


def _emit(args, payload: dict, human: str) -> None:
    if args.format == "json":
        print(json.dumps(jsonable(payload), indent=2))
    else:
        print(human)


def _report_human(title: str, report: CertReport) -> str:
    lines = [f"{title}: {report.verdict.upper()}"]
    if report.detail:
        lines.append(f"  {report.detail}")
    if report.witness is not None:
        lines.append(f"  witness: {json.dumps(jsonable(report.witness))}")
    if report.instances:
        lines.append("  instances: " + ", ".join(f"{k}={v}" for k, v in report.instances.items()))
    for note in report.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


def _cert_exit(report: CertReport) -> int:
    return EXIT_PASS if report.passed or report.verdict == "zero" else EXIT_FAIL


def _run_cert(args, title: str, report: CertReport) -> int:
    _emit(args, report.to_json(), _report_human(title, report))
    return _cert_exit(report)


# verbs

def cmd_check_mconvex(args) -> int:
    f = _load_poly(args)
    return _run_cert(args, "M-convex support", lorentzian.is_mconvex(f.support()))


def cmd_check_lorentzian(args) -> int:
    return _run_cert(args, "Lorentzian", lorentzian.is_lorentzian(_load_poly(args)))


def _inequality_verb(check, title):
    def run(args) -> int:
        V = poly.normalized_coeffs(_load_poly(args))
        return _run_cert(args, title, check(V))

    return run


def cmd_volpoly(args) -> int:
    S = _load_bodies(args.input)
    f = geometry.volume_polynomial(S, method=args.method)
    _emit(args, poly.to_json(f), poly.to_text(f))
    return EXIT_PASS


def cmd_mixed_volume(args) -> int:
    S = _load_bodies(args.input)
    alpha = _int_list(args.alpha, "--alpha")
    value = geometry.mixed_volume(S, alpha, method=args.method)
    _emit(args, {"alpha": alpha, "mixed_volume": value}, f"V{tuple(alpha)} = {poly.format_fraction(value)}")
    return EXIT_PASS


def cmd_zonotope_volpoly(args) -> int:
    F = geometry.segments_from_json(_load_json(args.input))
    f = geometry.zonotope_volume_polynomial(F)
    _emit(args, poly.to_json(f), poly.to_text(f))
    return EXIT_PASS


def cmd_slices(args) -> int:
    i = _var_index(args.var)
    check = None
    text = _read_source(args.input) if args.input and not args.expr else None
    if text is not None and text.lstrip().startswith("{") and "bodies" in json.loads(text):
        S = geometry.bodies_from_json(json.loads(text))
        f = geometry.volume_polynomial(S)
        _check_var_range(i, S.n)
        check = geometry.volume_slices_check(S, i)
    else:
        f = poly.parse(text) if text is not None else _load_poly(args)
    _check_var_range(i, f.n)
    parts = poly.slices(f, i)
    payload = {"var": i + 1, "slices": [poly.to_json(p) for p in parts]}
    lines = [f"f = sum_j x{i + 1}^({f.d}-j) f_j"] + [f"  f_{j} = {poly.to_text(p)}" for j, p in enumerate(parts)]
    if check is not None:
        payload["volume_slices_check"] = check.to_json()
        lines.append(_report_human("volume slices check", check))
    _emit(args, payload, "\n".join(lines))
    return EXIT_PASS if check is None else _cert_exit(check)


def cmd_split(args) -> int:
    f = _load_poly(args)
    left = [_var_index(v) for v in _int_list(args.partition, "--partition")]
    for i in left:
        _check_var_range(i, f.n)
    right = [i for i in range(f.n) if i not in left]
    result = factors.split_disjoint(f, (left, right))
    if result is None:
        _emit(args, {"status": "NotSplittable", "partition": [[i + 1 for i in left], [i + 1 for i in right]]},
              "not splittable along this partition")
        return EXIT_FAIL
    payload = {"status": "Split", **result.to_json()}
    _emit(args, payload, f"f = {payload['scale']} * ({payload['g']}) * ({payload['h']})")
    return EXIT_PASS


def cmd_extract(args) -> int:
    f = _load_poly(args)
    i = _var_index(args.var)
    _check_var_range(i, f.n)
    pf = factors.extract_power_factor(f, i)
    _emit(args, pf.to_json(), f"f = x{i + 1}^{pf.k} * ({poly.to_text(pf.g)}), gate {'true' if pf.gate else 'false'}")
    return EXIT_PASS


def cmd_infer(args) -> int:
    f = _load_poly(args)
    witness = _load_bodies(args.witness) if args.witness else None
    report = factors.infer(f, volume_witness=witness)
    lines = [f"f = {poly.to_text(f)}",
             f"Lorentzian: {'yes' if report.lorentzian else 'no'}",
             f"volume polynomial: {report.volume_label}"]
    for step in report.derivation:
        lines.append(f"  [{step.rule}] {step.premise} => {step.conclusion}")
    _emit(args, report.to_json(), "\n".join(lines))
    return EXIT_FAIL if report.volume is False else EXIT_PASS


def cmd_realize(args) -> int:
    f = _load_poly(args)
    outcome = realizer.realize(f, args.dim, restarts=args.restarts, tol=args.tol, seed=args.seed,
                               max_iter=args.max_iter)
    lines = [f"status: {outcome.status}", f"best residual: {outcome.residual:.6g}",
             f"restarts: {outcome.restarts_used}, seed: {outcome.seed}"]
    if outcome.rational_witness is not None:
        lines.append("exact witness: " + json.dumps(geometry.segments_to_json(outcome.rational_witness)["vectors"]))
    elif outcome.realized:
        lines.append("numeric witness only (exact verification failed)")
    _emit(args, outcome.to_json(), "\n".join(lines))
    return EXIT_PASS if outcome.realized else EXIT_INCONCLUSIVE


def cmd_verify_paper(args) -> int:
    results = golden.verify_all()
    green = sum(r.passed for r in results)
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}")
        for check, ok in r.checks:
            if not ok:
                lines.append(f"    failed: {check}")
        if r.error:
            lines.append(f"    error: {r.error}")
    lines.append(f"{green}/{len(results)} examples pass")
    _emit(args, {"passed": green, "total": len(results), "examples": [r.to_json() for r in results]},
          "\n".join(lines))
    return EXIT_PASS if green == len(results) else EXIT_FAIL


# argument helpers

def _int_list(text: str, name: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"{name}: expected comma-separated integers, got {text!r}") from None


def _var_index(v) -> int:
    i = int(v)
    if i < 1:
        raise InputError(f"--var: variables are numbered from 1, got {v}")
    return i - 1


def _check_var_range(i: int, n: int) -> None:
    if i >= n:
        raise InputError(f"--var: variable x{i + 1} does not exist (n = {n})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lorcert", description="Exact certificates for Lorentzian and volume polynomials.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, func, help_text, poly_input=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("human", "json"), default="human")
        if poly_input:
            p.add_argument("input", nargs="?", help="polynomial file (JSON or text), or '-' for stdin")
            p.add_argument("-e", "--expr", help="polynomial given inline, e.g. 'x1*x2 + x2*x3'")
        p.set_defaults(func=func)
        return p

    verb("check-mconvex", cmd_check_mconvex, "is the support M-convex")
    verb("check-lorentzian", cmd_check_lorentzian, "exact Lorentzian test")
    verb("check-af", _inequality_verb(inequalities.check_af, "AF"), "AF inequalities")
    verb("check-rkt", _inequality_verb(inequalities.check_rkt, "reverse Khovanskii-Teissier"),
         "reverse Khovanskii-Teissier inequalities")
    verb("check-af-class", _inequality_verb(inequalities.check_af_class, "AF class"),
         "AF, ShephardPower and ShephardDet families together")

    for name, func, help_text in (("volpoly", cmd_volpoly, "volume polynomial of bodies"),
                                  ("mixed-volume", cmd_mixed_volume, "one mixed volume")):
        p = verb(name, func, help_text, poly_input=False)
        p.add_argument("input", help="bodies JSON file or '-'")
        p.add_argument("--method", choices=("auto", "inclusion-exclusion"), default="auto")
        if name == "mixed-volume":
            p.add_argument("--alpha", required=True, help="exponent vector, e.g. 1,1,1,0,0")

    p = verb("zonotope-volpoly", cmd_zonotope_volpoly, "volume polynomial of a segment family", poly_input=False)
    p.add_argument("input", help="segments JSON file or '-'")

    p = verb("slices", cmd_slices, "slices f_j in one variable (bodies input also checks them)")
    p.add_argument("--var", type=int, required=True)

    p = verb("split", cmd_split, "disjoint-variable split")
    p.add_argument("--partition", required=True, help="variables of the first block, e.g. 1,2")

    p = verb("extract", cmd_extract, "extract a power of one variable")
    p.add_argument("--var", type=int, required=True)

    p = verb("infer", cmd_infer, "apply factor inheritance rules")
    p.add_argument("--witness", help="bodies JSON whose volume polynomial is f")

    p = verb("realize-segments", cmd_realize, "search for segments realizing a multiaffine target")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--restarts", type=int, default=realizer.DEFAULT_RESTARTS)
    p.add_argument("--tol", type=float, default=realizer.DEFAULT_TOL)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int, default=realizer.DEFAULT_MAX_ITER)

    verb("verify-paper", cmd_verify_paper, "run the built-in golden examples", poly_input=False)
    return parser


INPUT_ERRORS = (InputError, poly.PolyError, geometry.GeometryError, hull.HullError,
                factors.FactorError, realizer.RealizerError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"lorcert {args.verb}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KeyError, TypeError, ValueError) as exc:
        print(f"lorcert {args.verb}: malformed input ({type(exc).__name__}: {exc})", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
