"""Command-line front end.

Every invocation prints one JSON document on stdout (or writes it to
``--output``) and a short human summary on stderr.  Exit codes: 0 success,
1 a negative answer, 2 a numerical failure, 3 invalid input.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from typing import Sequence

import numpy as np

from sphpoly import combinatorics as comb
from sphpoly import io
from sphpoly.errors import (
    IncompleteFiberWarning,
    NumericalError,
    ValidationError,
)
from sphpoly.feasibility import check_angles, exponents_at_infinity, signature
from sphpoly.ode import (
    Loop,
    certify_monodromy,
    corner_loops,
    default_base_point,
    integrate_monodromy,
    unitarizability_check,
)
from sphpoly.wronski import SolverConfig, critical_polynomial, solve_wronski, verify_solution

EXIT_OK, EXIT_NEGATIVE, EXIT_NUMERIC, EXIT_INVALID = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _header(command: str) -> dict:
    return {"schemaVersion": io.SCHEMA_VERSION, "command": command}


# --------------------------------------------------------------------------
# Subcommands.  Each returns (exit code, document, summary line).
# --------------------------------------------------------------------------


def cmd_feasible(args) -> tuple[int, dict, str]:
    sig = signature(args.alpha0, args.interior, args.alphainf)
    report = check_angles(sig)
    hi, lo, lo_negative = exponents_at_infinity(sig)
    doc = _header("feasible") | {
        "signature": {
            "alpha0": str(sig.alpha0),
            "interior": list(sig.interior),
            "alphaInf": str(sig.alpha_inf),
        },
        "feasible": report.feasible,
        "branch": report.branch,
        "reason": report.reason,
        "solutions": [io.encode_degree_solution(s) for s in report.solutions],
        "exponentsAtInfinity": [str(hi), str(lo)],
        "secondExponentNegative": lo_negative,
    }
    verdict = "feasible" if report.feasible else f"infeasible ({report.reason})"
    return (EXIT_OK if report.feasible else EXIT_NEGATIVE), doc, f"branch {report.branch}: {verdict}"


def cmd_count(args) -> tuple[int, dict, str]:
    doc = _header("count")
    if args.odd is not None:
        values = args.odd
        if len(values) < 2:
            raise ValidationError("--odd needs m0, the interior multiplicities and mInf")
        m0, interior, m_inf = values[0], values[1:-1], values[-1]
        if args.method == "enumerate":
            value = len(comb.enumerate_odd_diagrams(m0, interior, m_inf))
        else:
            value = comb.odd_count_formula(m0, interior, m_inf)
        doc |= {"kind": "odd", "input": values, "method": args.method}
    elif args.kostka is not None:
        if args.method == "enumerate":
            value = len(comb.enumerate_diagrams(args.kostka))
        else:
            value = comb.kostka(args.kostka)
        doc |= {"kind": "kostka", "input": args.kostka, "method": args.method}
    elif args.catalan is not None:
        value = comb.catalan(args.catalan)
        doc |= {"kind": "catalan", "input": args.catalan}
    else:
        value = comb.binomial_count(args.binomial)
        doc |= {"kind": "binomial", "input": args.binomial}
    doc["count"] = value
    return EXIT_OK, doc, f"count = {value}"


def cmd_enumerate(args) -> tuple[int, dict, str]:
    doc = _header("enumerate")
    if args.odd is not None:
        values = args.odd
        if len(values) < 2:
            raise ValidationError("--odd needs m0, the interior multiplicities and mInf")
        items = comb.enumerate_odd_diagrams(values[0], values[1:-1], values[-1])
        records = [
            {
                "word": d.diagram.word,
                "arcs": [list(a) for a in d.diagram.arcs],
                "crossingCount": d.crossing_count,
            }
            for d in items
        ]
        doc |= {"kind": "odd", "input": values}
    elif args.ssyt is not None:
        items = comb.enumerate_ssyt(args.ssyt)
        records = [{"top": list(t.top), "bottom": list(t.bottom)} for t in items]
        doc |= {"kind": "ssyt", "input": args.ssyt}
    else:
        items = comb.enumerate_diagrams(args.diagrams)
        records = [
            {"word": d.word, "arcs": [list(a) for a in d.arcs], "vertexArcs": [list(a) for a in d.vertex_arcs()]}
            for d in items
        ]
        doc |= {"kind": "diagrams", "input": args.diagrams}
    doc |= {"count": len(records), "items": records}
    return EXIT_OK, doc, f"{len(records)} objects"


def _config(args) -> SolverConfig:
    return SolverConfig.from_env(
        residual_tol=args.residual_tol,
        realness_tol=args.realness_tol,
        dedup_tol=args.dedup_tol,
        num_starts=args.num_starts,
        rng_seed=args.seed,
    )


def cmd_solve(args) -> tuple[int, dict, str]:
    if len(args.corners) != len(args.mult):
        raise ValidationError("--corners and --mult must have the same length")
    sig = signature(args.alpha0, args.mult, args.alphainf)
    report = check_angles(sig)
    if not report.feasible:
        doc = _header("solve") | {"feasible": False, "reason": report.reason, "solutions": []}
        return EXIT_NEGATIVE, doc, f"no metric exists ({report.reason})"
    if args.case is None:
        degree_sol = report.canonical
    else:
        matches = [s for s in report.solutions if s.case_id == args.case]
        if not matches:
            raise ValidationError(f"case {args.case} does not occur for these angles")
        degree_sol = matches[0]
    config = _config(args)
    R = critical_polynomial(args.corners, [a - 1 for a in sig.interior], degree_sol)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        solutions = solve_wronski(R, degree_sol, config)
    incomplete = any(issubclass(w.category, IncompleteFiberWarning) for w in caught)
    problem = io.Problem(sig.alpha0, sig.interior, sig.alpha_inf, tuple(args.corners), degree_sol, R)
    document = io.SolutionDocument(
        problem, tuple(solutions), config.rng_seed, config.tolerances(), not incomplete
    )
    doc = document.to_dict() | {"command": "solve"}
    real = sum(s.is_real for s in solutions)
    summary = f"{len(solutions)} solutions ({real} real) for (p,q,p0,q0)={degree_sol.as_tuple()[:4]}"
    if incomplete or not solutions:
        return EXIT_NUMERIC, doc, summary + "; fiber incomplete"
    return EXIT_OK, doc, summary


def _read_input(path: str) -> dict:
    if path == "-":
        return io.loads(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return io.loads(fh.read())
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def cmd_verify(args) -> tuple[int, dict, str]:
    document = io.SolutionDocument.from_dict(_read_input(args.input))
    tol = args.tol if args.tol is not None else float(
        document.tolerances.get("residualTol", SolverConfig().residual_tol)
    )
    records, all_ok = [], True
    for sol in document.solutions:
        rep = verify_solution(sol.pair, document.problem.target, tol=tol)
        all_ok &= rep.ok
        records.append(
            {
                "residual": rep.residual,
                "residualOk": rep.residual_ok,
                "ok": rep.ok,
                "orders": [
                    {"corner": io.encode_complex(a), "expected": m, "measured": k}
                    for a, m, k in rep.orders
                ],
            }
        )
    doc = _header("verify") | {"tol": tol, "ok": all_ok, "results": records}
    passed = sum(r["ok"] for r in records)
    return (EXIT_OK if all_ok else EXIT_NEGATIVE), doc, f"{passed}/{len(records)} solutions verified"


def _parse_loops(data: list, eq, base: complex) -> list[Loop]:
    loops = []
    for item in data:
        center = io.decode_complex(item["center"])
        loops.append(Loop.around(center, eq.singularities, base, item.get("radius")))
    return loops


def cmd_monodromy(args) -> tuple[int, dict, str]:
    data = _read_input(args.input)
    kind = io.document_kind(data)
    if kind == "equation":
        eq = io.decode_equation(data)
        base = default_base_point(eq.singularities)
        if "basePoint" in data:
            base = io.decode_complex(data["basePoint"])
        loops = _parse_loops(data["loops"], eq, base) if "loops" in data else corner_loops(eq, base)
        mats = [integrate_monodromy(eq, loop) for loop in loops]
        unit = unitarizability_check(mats, args.tol)
        doc = _header("monodromy") | {
            "equation": io.encode_equation(eq),
            "monodromy": [io.encode_monodromy(m) for m in mats],
            "unitarizability": unit.verdict,
        }
        ok = unit.verdict in ("certified true", "screen passed")
        return (EXIT_OK if ok else EXIT_NEGATIVE), doc, f"{len(mats)} loops: {unit.verdict}"
    if kind != "solutions":
        raise ValidationError(f"cannot compute monodromy for a {kind!r} document")
    document = io.SolutionDocument.from_dict(data)
    problem = document.problem
    records, all_ok = [], True
    for sol in document.solutions:
        realized = sol.realized
        # the equation is built from the angles the pair actually realizes
        sig = signature(realized.alpha0, problem.interior, realized.alpha_inf)
        cert = certify_monodromy(sig, problem.corners, sol.pair, tol=args.tol)
        all_ok &= cert.ok
        records.append(
            {
                "equation": io.encode_equation(cert.equation),
                "monodromy": [io.encode_monodromy(m) for m in cert.matrices],
                "zeroRatioOk": cert.zero_ratio_ok,
                "cornersTrivial": list(cert.corners_trivial),
                "unitarizability": cert.unitarizability.verdict,
                "ok": cert.ok,
            }
        )
    doc = _header("monodromy") | {"tol": args.tol, "ok": all_ok, "results": records}
    passed = sum(r["ok"] for r in records)
    return (EXIT_OK if all_ok else EXIT_NEGATIVE), doc, f"{passed}/{len(records)} solutions certified"


# --------------------------------------------------------------------------
# Parser and entry point
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sphpoly", description="Spherical polygons with two non-integer corners.")
    parser.add_argument("-o", "--output", help="write the JSON document here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def angles(p: argparse.ArgumentParser, interior_flag: str) -> None:
        p.add_argument("--alpha0", required=True, help="angle at 0 in units of 2*pi, e.g. 1/2")
        p.add_argument(interior_flag, required=True, type=_int_list, help="interior angles, comma separated")
        p.add_argument("--alphainf", required=True, help="angle at infinity in units of 2*pi")

    p = sub.add_parser("feasible", help="existence test and degree data")
    angles(p, "--interior")
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("count", help="Kostka, odd-diagram, Catalan or binomial counts")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--odd", type=_int_list, metavar="M0,A1,..,MINF")
    group.add_argument("--kostka", type=_int_list, metavar="M1,..,MN")
    group.add_argument("--catalan", type=int, metavar="D")
    group.add_argument("--binomial", type=int, metavar="M")
    p.add_argument("--method", choices=("formula", "enumerate"), default="formula")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list tableaux or diagrams")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--ssyt", type=_int_list, metavar="M1,..,MN")
    group.add_argument("--diagrams", type=_int_list, metavar="M1,..,MN")
    group.add_argument("--odd", type=_int_list, metavar="M0,A1,..,MINF")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("solve", help="solve the polynomial fiber for given corners")
    p.add_argument("--corners", required=True, type=_float_list, help="positive, increasing")
    angles(p, "--mult")
    p.add_argument("--case", type=int, choices=(1, 2, 3, 4), help="degree case (default canonical)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--num-starts", type=int)
    p.add_argument("--residual-tol", type=float)
    p.add_argument("--realness-tol", type=float)
    p.add_argument("--dedup-tol", type=float)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution document")
    p.add_argument("--input", required=True, help="solution document, '-' for stdin")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("monodromy", help="monodromy of solutions or of an equation")
    p.add_argument("--input", required=True, help="solution or equation document, '-' for stdin")
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_monodromy)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with np.errstate(all="ignore"):
            code, doc, summary = args.func(args)
    except ValidationError as exc:
        code, doc, summary = EXIT_INVALID, _header(args.command) | {"error": str(exc)}, f"error: {exc}"
    except NumericalError as exc:
        code, doc, summary = EXIT_NUMERIC, _header(args.command) | {"error": str(exc)}, f"error: {exc}"
    text = io.dumps(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"sphpoly {args.command}: {summary}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())
