"""Command-line entry point: ``mvseq <subcommand> ...``.

Exit codes: 0 success or entailed, 1 refuted or invalid (a witness is
printed), 2 vacuous or nothing found, 3 usage error, 4 input format error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__
from .acceptance import data_path, default_context, format_discrepancy_report, run_all
from .calculus import check_proof, format_axiom_listing, load_proof, proof_to_json, prove_bounded
from .calculus.proof import render
from .core import LogicSignature, Valuation, eval_mv, load_logic, validate_signature
from .errors import MvseqError
from .kripke import build_model, check_two_valued, extension
from .pools import random_signature
from .reduction import canonical, reduction_trace
from .semantics import entails_m, eval_modal, matrix_entails, truth_invariant
from .syntax import format_any, parse_gamma, parse_modal, parse_mv, parse_sequent
from .terms import Atom, Box, is_modal

OK, REFUTED, VACUOUS, USAGE, BAD_INPUT = 0, 1, 2, 3, 4
BUNDLED = ("godel3", "classical2", "belnap4")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Report:
    """What a subcommand prints: text lines plus the JSON fields."""

    code: int
    verdict: str
    lines: list = field(default_factory=list)
    witness: object = None
    counts: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------- inputs


def _logic(arg: Optional[str]) -> LogicSignature:
    if arg is None:
        raise UsageError("--logic is required (a JSON file or one of: " + ", ".join(BUNDLED) + ")")
    path = Path(arg)
    if not path.exists() and arg.removesuffix(".json") in BUNDLED:
        return load_logic(data_path(arg.removesuffix(".json") + ".json"))
    if not path.exists():
        raise MvseqError(f"{arg}: no such logic file")
    return load_logic(path)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MvseqError(f"{path}: {exc.strerror}") from None


def _gamma(path: Optional[str], sig: LogicSignature) -> list:
    return [] if path is None else parse_gamma(_read(path), sig)


def _valuation_file(path: str, sig: LogicSignature) -> Valuation:
    try:
        raw = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise MvseqError(f"{path}: not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise MvseqError(f"{path}: expected an object mapping atoms to value symbols")
    out = {}
    for name, sym in raw.items():
        if not isinstance(sym, str) or not sig.has_value(sym) or not sig.in_x(sig.value_id(sym)):
            raise MvseqError(f"{path}: {name!r} maps to {sym!r}, which is not a value of {sig.name}")
        out[Atom(name)] = sig.value_id(sym)
    return Valuation(out)


def _value(sig: LogicSignature, sym: str) -> int:
    if not sig.has_value(sym):
        raise MvseqError(f"unknown value symbol {sym!r}")
    return sig.value_id(sym)


# ----------------------------------------------------------- subcommands


def cmd_validate(args) -> Report:
    sig = _logic(args.logic)
    diags = validate_signature(sig)
    if diags:
        return Report(REFUTED, "invalid", diags, witness=diags, counts={"diagnostics": len(diags)})
    return Report(OK, "valid", [f"{sig.name}: valid ({sig.n_x} values, {len(sig.connectives)} connectives)"])


def cmd_axioms(args) -> Report:
    sig = _logic(args.logic)
    if args.connective is not None and not sig.has_connective(args.connective):
        raise MvseqError(f"unknown connective {args.connective!r}")
    value = None if args.value is None else _value(sig, args.value)
    text = format_axiom_listing(sig, args.connective, value)
    lines = text.splitlines()
    return Report(OK if lines else VACUOUS, "listed" if lines else "none", lines, counts={"axioms": len(lines)})


def cmd_reduce(args) -> Report:
    sig = _logic(args.logic)
    if args.value is not None:
        phi = Box(_value(sig, args.value), parse_mv(args.formula, sig))
    else:
        phi = parse_modal(args.formula, sig)
    lines = []
    if args.trace:
        steps, dnf = reduction_trace(phi, sig)
        lines += [f"{i}: {format_any(f, sig)}" for i, f in enumerate(steps)]
    else:
        dnf = canonical(phi, sig)
    lines.append(dnf.format(sig))
    counts = {"disjuncts": len(dnf.disjuncts)}
    if args.trace:
        counts["steps"] = len(lines) - 2
    return Report(OK, "reduced", lines, counts=counts, extra={"dnf": dnf.format(sig)})


def _entail_report(sig, res) -> Report:
    counts = {"models": res.models_checked}
    if res.vacuous:
        return Report(VACUOUS, "vacuous", ["vacuous: the theory has no models"], counts=counts)
    if res.entailed:
        return Report(OK, "entailed", ["entailed"], counts=counts)
    w = res.countermodel.format(sig)
    return Report(REFUTED, "refuted", [f"refuted; countermodel: {w}"], witness=w, counts=counts)


def cmd_entail(args) -> Report:
    sig = _logic(args.logic)
    return _entail_report(sig, entails_m(sig, _gamma(args.gamma, sig), parse_sequent(args.sequent, sig)))


def cmd_invariance(args) -> Report:
    sig = _logic(args.logic)
    phi = parse_mv(args.phi, sig)
    res = truth_invariant(sig, _gamma(args.gamma, sig), phi)
    counts = {"models": res.models_checked}
    if res.vacuous:
        return Report(VACUOUS, "vacuous", ["vacuous: the theory has no models"], counts=counts)
    if res.value is not None:
        sym = sig.symbol(res.value)
        return Report(OK, "invariant", [f"invariant: value {sym}"], counts=counts, extra={"value": sym})
    w = [f"{v.format(sig)} gives {sig.symbol(eval_mv(sig, v, phi))}" for v in res.witnesses]
    return Report(REFUTED, "not-invariant", ["not invariant; models disagree:"] + ["  " + x for x in w],
                  witness=w, counts=counts)


def cmd_matrix(args) -> Report:
    sig = _logic(args.logic)
    designated = [_value(sig, d.strip()) for d in args.designated.split(",") if d.strip()]
    premises = [parse_mv(p, sig) for p in args.premise]
    res = matrix_entails(sig, premises, parse_mv(args.phi, sig), designated)
    counts = {"models": res.models_checked}
    if res.entailed:
        return Report(OK, "entailed", ["entailed"], counts=counts)
    w = res.countermodel.format(sig)
    return Report(REFUTED, "refuted", [f"refuted; countermodel: {w}"], witness=w, counts=counts)


def cmd_check_proof(args) -> Report:
    sig = _logic(args.logic)
    gamma = _gamma(args.gamma, sig)
    p = load_proof(args.proof, sig)
    verdict = check_proof(p, gamma, sig)
    counts = {"height": p.height, "size": p.size()}
    if verdict.ok:
        return Report(OK, "accepted", ["OK"], counts=counts)
    path = list(verdict.path or ())
    return Report(REFUTED, "rejected", [verdict.describe()], witness={"path": path, "reason": verdict.reason},
                  counts=counts)


def cmd_prove(args) -> Report:
    sig = _logic(args.logic)
    gamma = _gamma(args.gamma, sig)
    p = prove_bounded(sig, gamma, parse_sequent(args.sequent, sig), args.depth)
    if p is None:
        return Report(VACUOUS, "none", [f"no proof of height <= {args.depth} found"])
    lines = render(p, sig).splitlines()
    if args.emit is not None:
        Path(args.emit).write_text(json.dumps(proof_to_json(p, sig), indent=2) + "\n", encoding="utf-8")
    return Report(OK, "proved", lines, counts={"height": p.height, "size": p.size()},
                  extra={"proof": proof_to_json(p, sig)})


def cmd_kripke(args) -> Report:
    sig = _logic(args.logic)
    v = _valuation_file(args.valuation, sig)
    f = parse_modal(args.formula, sig) if args.modal else _parse_either(args.formula, sig)
    m = build_model(sig, v)
    ext = sorted(extension(m, f), key=lambda w: w)
    worlds = [sig.symbol(w) for w in ext]
    lines = ["extension: {" + ", ".join(worlds) + "}"]
    extra = {"extension": worlds}
    if is_modal(f):
        two = check_two_valued(m, f)
        lines.append(f"two-valued: {'yes' if two else 'no'}")
        lines.append(f"modal value: {eval_modal(sig, v, f)}")
        extra["two_valued"] = two
        code, verdict = (OK, "two-valued") if two else (REFUTED, "not-two-valued")
    else:
        lines.append("two-valued: n/a (many-valued formula)")
        code, verdict = OK, "evaluated"
    return Report(code, verdict, lines, counts={"worlds": len(sig.y_ids)}, extra=extra)


def _parse_either(text: str, sig: LogicSignature):
    stripped = text.strip()
    if stripped in ("T", "F") or stripped.startswith(("[", "(")):
        return parse_modal(text, sig)
    return parse_mv(text, sig)


def cmd_selftest(args) -> Report:
    four = None
    if args.random_four is not None:
        four = random_signature(args.random_four)
    elif args.logic is not None:
        four = _logic(args.logic)
    ctx = default_context(seed=args.seed, four=four)
    results, report = run_all(ctx)
    lines = [r.line(timing=not args.no_timing) for r in results]
    lines.append(f"extra signature: {ctx.four.name}")
    lines.append(format_discrepancy_report(report).rstrip("\n"))
    failed = [r.number for r in results if not r.passed]
    counts = {f"suite_{r.number}": {"passed": r.passed, **r.counts} for r in results}
    if failed:
        return Report(REFUTED, "failed", lines, witness={"failed_suites": failed}, counts=counts)
    return Report(OK, "passed", lines, counts=counts)


COMMANDS = {
    "validate": cmd_validate,
    "axioms": cmd_axioms,
    "reduce": cmd_reduce,
    "entail": cmd_entail,
    "invariance": cmd_invariance,
    "matrix": cmd_matrix,
    "check-proof": cmd_check_proof,
    "prove": cmd_prove,
    "kripke": cmd_kripke,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--logic", help="logic JSON file, or a bundled name: " + ", ".join(BUNDLED))
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--no-timing", action="store_true", help="omit wall-clock times for byte-stable output")

    parser = _Parser(prog="mvseq", description="Many-valued logics as a two-valued modal sequent calculus.")
    parser.add_argument("--version", action="version", version=f"mvseq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("validate", parents=[common], help="check a logic definition")

    p = sub.add_parser("axioms", parents=[common], help="list introduction/elimination axioms")
    p.add_argument("--connective")
    p.add_argument("--value")

    p = sub.add_parser("reduce", parents=[common], help="canonical disjunctive normal form")
    p.add_argument("--value", help="wrap the many-valued --formula in [value](...)")
    p.add_argument("--formula", required=True)
    p.add_argument("--trace", action="store_true", help="print every rewrite step")

    p = sub.add_parser("entail", parents=[common], help="does every model of the theory satisfy the sequent")
    p.add_argument("--gamma")
    p.add_argument("--sequent", required=True)

    p = sub.add_parser("invariance", parents=[common], help="does a formula take one value in all models")
    p.add_argument("--gamma")
    p.add_argument("--phi", required=True)

    p = sub.add_parser("matrix", parents=[common], help="designated-value consequence")
    p.add_argument("--designated", required=True, help="comma-separated value symbols")
    p.add_argument("--premise", action="append", default=[], help="repeatable")
    p.add_argument("--phi", required=True)

    p = sub.add_parser("check-proof", parents=[common], help="validate a proof file")
    p.add_argument("--gamma")
    p.add_argument("proof")

    p = sub.add_parser("prove", parents=[common], help="bounded proof search")
    p.add_argument("--gamma")
    p.add_argument("--sequent", required=True)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--emit", help="also write the proof as JSON to this file")

    p = sub.add_parser("kripke", parents=[common], help="extension of a formula in the value-world model")
    p.add_argument("--valuation", required=True, help="JSON object mapping atoms to value symbols")
    p.add_argument("--formula", required=True)
    p.add_argument("--modal", action="store_true", help="force parsing the formula as modal")

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random-four", type=int, metavar="SEED",
                   help="use a seeded random 4-valued signature as the extra signature")
    return parser


def _emit(report: Report, args, elapsed_ms: float) -> None:
    if args.format == "json":
        payload = {
            "command": args.command,
            "verdict": report.verdict,
            "exit_code": report.code,
            "witness": report.witness,
            "counts": report.counts,
            "elapsed_ms": 0 if args.no_timing else round(elapsed_ms, 3),
            "output": report.lines,
            **report.extra,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in report.lines:
            print(line)


def main(argv: Optional[list] = None) -> int:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    t0 = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    except MvseqError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        for diag in getattr(exc, "diagnostics", ()):
            print(f"  {diag}", file=sys.stderr)
        return BAD_INPUT
    _emit(report, args, (time.perf_counter() - t0) * 1000)
    return report.code


if __name__ == "__main__":
    sys.exit(main())
