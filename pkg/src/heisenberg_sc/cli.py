"""Command-line front end.

Exit codes: 0 accepted / all identities hold, 1 rejected, 2 the matrix test and
the mode-calculus test disagree, 64 malformed input, 65 unsupported input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from typing import Sequence

from heisenberg_sc import commutant as cm
from heisenberg_sc import variety as vr
from heisenberg_sc.corpus import random_point
from heisenberg_sc.linalg import MalformedInputError, Matrix
from heisenberg_sc.scalars import gq
from heisenberg_sc.semiconformal import QuadraticVector, ScPoint, check_direct, check_matrix, emit_polynomial_system

EXIT_OK, EXIT_REJECT, EXIT_DISAGREE, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 64, 65


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def parse_lambda(text: str | None, d: int | None = None):
    if text is None:
        return None if d is None else tuple(gq(0) for _ in range(d))
    try:
        vals = tuple(gq(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise CliError(EXIT_USAGE, f"bad --lambda: {exc}") from exc
    if d is not None and len(vals) != d:
        raise CliError(EXIT_USAGE, f"--lambda needs {d} entries, got {len(vals)}")
    return vals


def _read_json(args):
    try:
        raw = open(args.input, encoding="utf-8").read() if args.input and args.input != "-" else sys.stdin.read()
    except OSError as exc:
        raise CliError(EXIT_USAGE, f"cannot read input: {exc}") from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_USAGE, f"malformed JSON: {exc}") from exc


def _quadratic(data) -> QuadraticVector:
    try:
        return QuadraticVector.from_json(data)
    except (MalformedInputError, ValueError, TypeError) as exc:
        raise CliError(EXIT_USAGE, f"malformed QuadraticVector: {exc}") from exc


def _point(data) -> ScPoint:
    q = _quadratic(data)
    if not check_matrix(q):
        raise CliError(EXIT_REJECT, "input is not a semi-conformal point")
    return ScPoint.from_quadratic(q)


def _emit(args, payload) -> None:
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _require_json(args, command):
    if args.format != "json":
        raise CliError(EXIT_USAGE, f"--format {args.format} is not available for {command}")


# -- commands ---------------------------------------------------------------


def cmd_check(args) -> int:
    _require_json(args, "check")
    q = _quadratic(_read_json(args))
    by_matrix = check_matrix(q)
    rep = check_direct(q.to_element(), q.Lambda, degree_bound=args.degree_bound or 4)
    out = rep.to_json()
    out["matrix_verdict"] = by_matrix
    out["direct_verdict"] = rep.verdict
    out["routes_agree"] = by_matrix == rep.verdict
    _emit(args, out)
    if by_matrix != rep.verdict:
        return EXIT_DISAGREE
    return EXIT_OK if by_matrix else EXIT_REJECT


def cmd_poly(args) -> int:
    _require_json(args, "poly")
    if not args.d or args.d < 1:
        raise CliError(EXIT_USAGE, "poly needs --d >= 1")
    _emit(args, emit_polynomial_system(args.d, parse_lambda(args.Lambda, args.d)))
    return EXIT_OK


def cmd_commutant(args) -> int:
    p = _point(_read_json(args))
    if any(p.Lambda):
        raise CliError(EXIT_UNSUPPORTED, "commutant computations are supported for Lambda = 0 only")
    N = 6 if args.degree_bound is None else args.degree_bound
    prof = cm.commutant_dims(p, N)
    ok = prof.matches_expected and prof.tensor_identity_holds and cm.weight1_identification(p)
    if args.format == "csv":
        rows = [
            {
                "n": r["n"],
                "dim_V": r["dim_V"],
                "commutant": r["commutant"]["actual"],
                "commutant_expected": r["commutant"]["expected"],
                "double_commutant": r["double_commutant"]["actual"],
                "double_commutant_expected": r["double_commutant"]["expected"],
                "convolution": r["convolution"],
            }
            for r in prof.to_json()["table"]
        ]
        _emit(args, _csv(rows))
    else:
        out = prof.to_json()
        out["weight1_identification"] = cm.weight1_identification(p)
        _emit(args, out)
    return EXIT_OK if ok else EXIT_REJECT


def cmd_order(args) -> int:
    _require_json(args, "order")
    data = _read_json(args)
    if not isinstance(data, dict) or "lo" not in data or "hi" not in data:
        raise CliError(EXIT_USAGE, 'order expects {"lo": ..., "hi": ...}')
    lo, hi = _point(data["lo"]), _point(data["hi"])
    try:
        m = vr.leq_matrix(lo, hi)
    except MalformedInputError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc
    dr = vr.leq_direct(lo, hi, args.degree_bound or 4)
    _emit(args, {"leq_matrix": m, "leq_direct": dr, "routes_agree": m == dr})
    if m != dr:
        return EXIT_DISAGREE
    return EXIT_OK if m else EXIT_REJECT


def cmd_involution(args) -> int:
    _require_json(args, "involution")
    p = _point(_read_json(args))
    q = vr.involution(p)
    _emit(args, {"input": p.to_json(), "involution": q.to_json(), "class": vr.classify_extremal(q)})
    return EXIT_OK


def cmd_chain(args) -> int:
    _require_json(args, "chain")
    if not args.d or args.d < 1:
        raise CliError(EXIT_USAGE, "chain needs --d >= 1")
    _emit(args, vr.build_chain(args.d).to_json())
    return EXIT_OK


def cmd_orbit(args) -> int:
    if args.input:
        _require_json(args, "orbit")
        data = _read_json(args)
        if not isinstance(data, dict) or "point" not in data or "o" not in data:
            raise CliError(EXIT_USAGE, 'orbit expects {"point": ..., "o": [[...]]}')
        p = _point(data["point"])
        try:
            o = vr.OrthogonalElement(Matrix.from_json(data["o"]))
            q = vr.conjugate(p, o)
        except (MalformedInputError, ValueError) as exc:
            raise CliError(EXIT_USAGE, str(exc)) from exc
        _emit(args, {"point": p.to_json(), "image": q.to_json(), "class": vr.classify_extremal(q),
                     "rank_preserved": p.rank_of_A == q.rank_of_A})
        return EXIT_OK
    if not args.d or args.d < 1:
        raise CliError(EXIT_USAGE, "orbit needs --d >= 1 or --in")
    rng = random.Random(f"cli-orbit:{args.seed}")
    pts = [random_point(rng, args.d, k=k) for k in range(args.d + 1) for _ in range(2)]
    report = vr.classification_report(pts)
    report["classes"] = len(report["ranks_realized"])
    if args.format == "csv":
        _emit(args, _csv([{"rank": r["rank"], "class": r["class"], "A": json.dumps(r["A"])} for r in report["points"]]))
    else:
        _emit(args, report)
    return EXIT_OK


def cmd_verify_suite(args) -> int:
    from heisenberg_sc.suite import SuiteConfig, run_suite, summary

    cfg = SuiteConfig(d_max=args.d_max, degree_bound=6 if args.degree_bound is None else args.degree_bound, seed=args.seed)
    results = run_suite(cfg, fault=args.inject_fault, progress=lambda r: print(r.line(), file=sys.stderr, flush=True))
    summ = summary(results, cfg, timings=args.timings, fault=args.inject_fault)
    if args.format == "csv":
        rows = [{"id": r.cid, "name": r.name, "passed": r.passed} for r in results]
        if args.timings:
            for row, r in zip(rows, results):
                row["seconds"] = f"{r.seconds:.3f}"
        _emit(args, _csv(rows))
    else:
        _emit(args, summ)
    return EXIT_OK if summ["passed"] else EXIT_REJECT


COMMANDS = {
    "check": cmd_check,
    "poly": cmd_poly,
    "commutant": cmd_commutant,
    "order": cmd_order,
    "involution": cmd_involution,
    "chain": cmd_chain,
    "orbit": cmd_orbit,
    "verify-suite": cmd_verify_suite,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(EXIT_USAGE, message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, help="rank of the Heisenberg algebra")
    common.add_argument("--lambda", dest="Lambda", help="comma-separated Lambda entries, e.g. 1,1/2,0+1i")
    common.add_argument("--degree-bound", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--in", dest="input", help="input JSON file ('-' for stdin)")
    common.add_argument("--out", dest="output", help="output file (default stdout)")
    common.add_argument("--format", choices=["json", "csv"], default="json")

    parser = _Parser(prog="heisenberg-sc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "verify-suite":
            sp.add_argument("--d-max", type=int, default=3)
            sp.add_argument("--inject-fault", action="store_true", help="rescale one Heisenberg structure constant")
            sp.add_argument("--timings", action="store_true", help="include wall times in the summary")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"heisenberg-sc: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
