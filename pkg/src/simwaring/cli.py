"""Command-line front end.

Collection files are plain text::

    # comment
    vars 4
    M1: x0*x1^3*x2^4*x3^7
    x0*x1^4*x2^2*x3^5

A file whose name ends in ``.json`` (or whose content starts with ``{``) is
read as ``{"nvars": 4, "monomials": [...], "labels": [...]}`` instead.

Exit status: 0 success, 1 usage or parse error, 2 hypothesis failure,
3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import decomposition as dec
from .errors import CapacityError, HypothesisError, ParseError, SimWaringError
from .monomial import Monomial, parse_monomial, waring_rank, min_positions
from .simrank import (
    Collection,
    RankVerdict,
    check_11_free,
    check_free,
    find_base_variable,
    generic_ternary_pair_rank,
    high_rank_pair,
    high_rank_pair_formula,
    lower_bound,
    pair_rank_same_support,
    simultaneous_rank,
    subset_terms,
    upper_bound_lcm,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HYPOTHESIS = 2
EXIT_VERIFICATION = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_collection_text(text: str, as_json: bool = False) -> Collection:
    if as_json or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON collection: {exc}") from None
        if not isinstance(data, dict) or "monomials" not in data:
            raise ParseError("JSON collection needs a 'monomials' list")
        nvars = data.get("nvars")
        labels = data.get("labels")
        monos = [parse_monomial(str(s), nvars) for s in data["monomials"]]
        return _build(monos, labels)

    nvars = None
    monos: list[Monomial] = []
    labels: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vars"):
            if nvars is not None or monos:
                raise ParseError(f"line {lineno}: 'vars' must come first and only once")
            try:
                nvars = int(line.split()[1])
            except (IndexError, ValueError):
                raise ParseError(f"line {lineno}: expected 'vars <n>'") from None
            continue
        if nvars is None:
            raise ParseError(f"line {lineno}: missing 'vars <n>' header")
        label = None
        if ":" in line:
            label, line = (part.strip() for part in line.split(":", 1))
        try:
            monos.append(parse_monomial(line, nvars))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        labels.append(label or f"M{len(monos)}")
    return _build(monos, labels)


def _build(monos, labels) -> Collection:
    if not monos:
        raise ParseError("empty collection")
    try:
        return Collection(tuple(monos), tuple(labels) if labels else None)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_collection(path: str, as_json: bool = False) -> Collection:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_collection_text(text, as_json or path.endswith(".json"))


def _verdict_json(v: RankVerdict) -> dict:
    return {
        "kind": v.kind,
        "value": None if v.value is None else str(v.value),
        "lower": str(v.lower),
        "upper": str(v.upper),
        "justification": v.justification.value,
    }


def _flags(coll: Collection) -> dict:
    try:
        base = find_base_variable(coll)
    except HypothesisError:
        base = None
    return {
        "one_one_free": check_11_free(coll),
        "free": check_free(coll),
        "base_variable": None if base is None else {"index": base.index, "c": base.c},
    }


def _terms_json(coll: Collection) -> list[dict]:
    return [
        {"subset": list(s), "gcd": str(g), "sign": sign, "rank": str(rank)}
        for s, g, sign, rank in subset_terms(coll)
    ]


def cmd_rank(args) -> tuple[dict, int]:
    m = parse_monomial(args.monomial, args.vars)
    report = {
        "command": "rank",
        "monomial": str(m),
        "nvars": m.nvars,
        "rank": str(waring_rank(m)),
        "min_positions": sorted(min_positions(m)),
    }
    return report, EXIT_OK


def cmd_simrank(args) -> tuple[dict, int]:
    coll = load_collection(args.file)
    verdict = simultaneous_rank(coll)
    report = {
        "command": "simrank",
        "nvars": coll.nvars,
        "monomials": [str(m) for m in coll],
        "verdict": _verdict_json(verdict),
        "flags": _flags(coll),
    }
    if args.explain:
        try:
            report["terms"] = _terms_json(coll)
        except HypothesisError as exc:
            report["terms_error"] = str(exc)
    return report, EXIT_OK


def cmd_checkfree(args) -> tuple[dict, int]:
    coll = load_collection(args.file)
    flags = _flags(coll)
    report = {"command": "checkfree", "monomials": [str(m) for m in coll], **flags}
    return report, EXIT_OK if flags["free"] else EXIT_HYPOTHESIS


def cmd_bounds(args) -> tuple[dict, int]:
    coll = load_collection(args.file)
    report: dict = {"command": "bounds", "monomials": [str(m) for m in coll]}
    status = EXIT_OK
    for key, fn in (("lower", lower_bound), ("upper", upper_bound_lcm)):
        try:
            report[key] = str(fn(coll))
        except HypothesisError as exc:
            report[key] = None
            report[f"{key}_error"] = str(exc)
            status = EXIT_HYPOTHESIS
    return report, status


def _max_points(args) -> int:
    if args.max_points is not None:
        return args.max_points
    env = os.environ.get("SIMWARING_MAX_POINTS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"SIMWARING_MAX_POINTS={env!r} is not an integer") from None
    return dec.DEFAULT_MAX_POINTS


def cmd_decompose(args) -> tuple[dict, int]:
    coll = load_collection(args.file)
    verdict = simultaneous_rank(coll)
    result = dec.decompose(coll, tol=args.tol, max_points=_max_points(args), threads=args.threads)
    scheme, certificate = result.scheme, result.claimed_rank
    ok = result.verified and dec.verify_decomposition(result, coll, args.tol)
    payload = dec.decomposition_to_json(result, verdict.justification.value)
    payload["verified"] = ok
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    report = {
        "command": "decompose",
        "monomials": [str(m) for m in coll],
        "points": len(scheme),
        "lower_bound": str(certificate),
        "minimal": len(scheme) == certificate,
        "max_residual": result.max_residual,
        "tol": args.tol,
        "verified": ok,
        "out": args.out,
    }
    return report, EXIT_OK if ok else EXIT_VERIFICATION


def cmd_highrank(args) -> tuple[dict, int]:
    if args.t < 1:
        raise UsageError("--t must be at least 1")
    m1, m2 = high_rank_pair(args.t, args.family)
    rank = pair_rank_same_support(m1, m2)
    formula = high_rank_pair_formula(args.t, args.family)
    degree = m1.degree
    generic = generic_ternary_pair_rank(degree)
    report = {
        "command": "highrank",
        "t": args.t,
        "family": args.family,
        "pair": [str(m1), str(m2)],
        "degree": degree,
        "rank": None if rank.value is None else str(rank.value),
        "formula": str(formula),
        "generic": str(generic),
        "excess": str(formula - generic),
    }
    return report, EXIT_OK


def _human(report: dict) -> str:
    cmd = report["command"]
    lines: list[str] = []
    if cmd == "rank":
        return report["rank"]
    if cmd in ("simrank", "checkfree", "bounds", "decompose"):
        lines.append("collection: " + ", ".join(report["monomials"]))
    if cmd == "simrank":
        v = report["verdict"]
        if v["kind"] == "exact":
            lines.append(f"rank: {v['value']}  [{v['justification']}]")
        else:
            lines.append(f"rank: between {v['lower']} and {v['upper']}  [{v['justification']}]")
        if "terms" in report:
            lines.append(f"{'subset':<16}{'gcd':<28}{'sign':>5}{'rank':>12}")
            for t in report["terms"]:
                subset = "{" + ",".join(str(j + 1) for j in t["subset"]) + "}"
                lines.append(f"{subset:<16}{t['gcd']:<28}{t['sign']:>+5d}{t['rank']:>12}")
        elif "terms_error" in report:
            lines.append(f"no inclusion-exclusion table: {report['terms_error']}")
    elif cmd == "checkfree":
        base = report["base_variable"]
        lines.append(f"(1,1)-free: {report['one_one_free']}")
        lines.append(f"free: {report['free']}")
        lines.append("base variable: " + ("none" if base is None else f"x{base['index']} (c = {base['c']})"))
    elif cmd == "bounds":
        for key in ("lower", "upper"):
            val = report[key] if report[key] is not None else f"unavailable ({report[key + '_error']})"
            lines.append(f"{key}: {val}")
    elif cmd == "decompose":
        lines.append(f"points: {report['points']} (lower bound {report['lower_bound']})")
        lines.append(f"max residual: {report['max_residual']:.3e} (tol {report['tol']:g})")
        lines.append("verified" if report["verified"] else "NOT verified")
        if report["out"]:
            lines.append(f"written to {report['out']}")
    elif cmd == "highrank":
        lines.append("pair: " + ", ".join(report["pair"]))
        lines.append(f"rank: {report['rank']}")
        lines.append(f"generic rank in degree {report['degree']}: {report['generic']}")
        lines.append(f"excess: {report['excess']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--threads", type=int, default=1, help="worker threads for independent solves")

    parser = _Parser(prog="simwaring", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("rank", parents=[common], help="Waring rank of one monomial")
    p.add_argument("monomial")
    p.add_argument("--vars", type=int, default=None, help="number of variables (inferred if omitted)")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("simrank", parents=[common], help="simultaneous rank of a collection")
    p.add_argument("file")
    p.add_argument("--explain", action="store_true", help="show the inclusion-exclusion terms")
    p.set_defaults(func=cmd_simrank)

    p = sub.add_parser("checkfree", parents=[common], help="freeness flags of a collection")
    p.add_argument("file")
    p.set_defaults(func=cmd_checkfree)

    p = sub.add_parser("bounds", parents=[common], help="lower and upper bounds")
    p.add_argument("file")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("decompose", parents=[common], help="explicit decomposition of a free collection")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=dec.DEFAULT_TOL)
    p.add_argument("--out", default=None, help="write the decomposition JSON here")
    p.add_argument("--max-points", type=int, default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("highrank", parents=[common], help="high-rank ternary pairs")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--family", type=int, choices=(1, 2), default=1)
    p.set_defaults(func=cmd_highrank)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        report, status = args.func(args)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HypothesisError, CapacityError) as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except SimWaringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(_human(report))
        print(f"({time.perf_counter() - started:.3f} s)", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
