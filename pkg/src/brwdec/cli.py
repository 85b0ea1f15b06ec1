"""``ord``: evaluate, compare and probe ordinal expressions from the shell.

Exit status: 0 Proven or successful evaluation, 1 Refuted, 2 Unknown,
64 usage error (bad flags, unparsable expression, unknown family).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import List, Optional

from .characteristic import exists_forall_witness, exists_witness, forall_witness
from .cnf import ParseError, W, cnf_parse
from .core import Lim, Ordinal, Succ
from .engine import ProbeReport, Verdict, leq, probe_ge
from .semidec import double_jump, jump, parse_bitseq
from .sierpinski import eval_top, s_n_of
from .subject import RegistryError, family_names, parse_family, parse_family_2d, parse_subject

EXIT_USAGE = 64
DEFAULT_FUEL = 100_000
DEFAULT_K_MAX = 6

_EXIT = {"Proven": 0, "ok": 0, "Refuted": 1, "Unknown": 2}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "subject", "target", "levels", "summary", "exit"],
    "properties": {
        "command": {"type": "string"},
        "subject": {"type": ["string", "null"]},
        "target": {"type": ["string", "null"]},
        "levels": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["level", "verdict", "fuel_spent"],
                "properties": {
                    "level": {"type": "string"},
                    "verdict": {"enum": ["Proven", "Refuted", "Unknown"]},
                    "fuel_spent": {"type": "integer", "minimum": 0},
                },
            },
        },
        "summary": {"enum": ["Proven", "Refuted", "Unknown", "ok"]},
        "exit": {"enum": [0, 1, 2]},
    },
}


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    subject: Optional[str]
    target: Optional[str]
    summary: str
    levels: list = field(default_factory=list)
    lines: List[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def exit(self) -> int:
        return exit_code(self.summary)

    def as_json(self) -> dict:
        out = {"command": self.command, "subject": self.subject, "target": self.target,
               "levels": [{"level": str(lv), "verdict": v.outcome.value, "fuel_spent": v.spent}
                          for lv, v in self.levels],
               "summary": self.summary, "exit": self.exit}
        out.update(self.extra)
        return out


def exit_code(summary: str) -> int:
    return _EXIT[summary]


def _summary(v: Verdict) -> str:
    return v.outcome.value


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def _natural(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return n


def default_fuel() -> int:
    env = os.environ.get("BRWDEC_FUEL")
    if env is None:
        return DEFAULT_FUEL
    try:
        return _positive(env)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"BRWDEC_FUEL: {exc}")


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fuel", type=_positive, default=None,
                        help=f"expansion budget (default {DEFAULT_FUEL} or $BRWDEC_FUEL)")
    common.add_argument("--k-max", type=_positive, default=DEFAULT_K_MAX,
                        help="highest w*k level in probe ladders")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = _ArgParser(prog="ord", description="Brouwer-tree ordinals: compare, probe, inspect.")
    sub = p.add_subparsers(dest="command", parser_class=_ArgParser)
    sub.required = True

    e = sub.add_parser("eval", parents=[common], help="normalize and describe an expression")
    e.add_argument("expr")

    c = sub.add_parser("cmp", parents=[common], help="decide A <= B and name the relation")
    c.add_argument("a")
    c.add_argument("b")

    pr = sub.add_parser("probe", parents=[common], help="probe SUBJECT >= TARGET (TARGET is CNF)")
    pr.add_argument("subject")
    pr.add_argument("target")

    j = sub.add_parser("jump", parents=[common], help="print a prefix of the jump sequence")
    j.add_argument("bits")
    j.add_argument("--count", type=_positive, default=6)
    j.add_argument("--double", action="store_true", help="jump to w*2 instead of w")

    ps = sub.add_parser("psi", parents=[common], help="witness for a named family")
    ps.add_argument("family")
    ps.add_argument("--mode", choices=("forall", "exists", "exists-forall"), default="forall")

    s = sub.add_parser("sierp", parents=[common], help="evaluate s_n(EXPR) = Top, i.e. EXPR >= w*n")
    s.add_argument("n", type=_natural)
    s.add_argument("expr")

    sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    sub.add_parser("families", parents=[common], help="list named families")
    return p


# -- commands ---------------------------------------------------------------------

def _describe(o: Ordinal) -> str:
    if o.cnf is not None:
        return str(o.cnf)
    tail = 0
    while isinstance(o, Succ) and o.cnf is None:
        o = o.pred
        tail += 1
    if o.cnf is not None:
        return str(o.cnf + tail)
    suffix = f" + {tail}" if tail else ""
    return f"<limit, no normal form known>{suffix}"


def _prefix_text(o: Ordinal, n: int) -> str:
    while isinstance(o, Succ):
        o = o.pred
    if not isinstance(o, Lim):
        return ""
    return ", ".join(_describe(x) for x in o.seq.prefix(n)) + ", ..."


def cmd_eval(args, fuel) -> Report:
    o = parse_subject(args.expr)
    text = _describe(o)
    r = Report("eval", args.expr, None, "ok", lines=[text], extra={"value": text})
    seq = _prefix_text(o, 5)
    if seq and o.cnf is None:
        r.lines.append(f"sequence: {seq}")
    return r


def _relation(a: Ordinal, b: Ordinal, v: Verdict, fuel: int) -> Verdict:
    if v.note or v.unknown:
        return v
    if v.refuted:
        return Verdict(v.outcome, v.spent, "GT via search")
    back = leq(b, a, fuel)
    rel = "EQ" if back.proven else "LT" if back.refuted else "LE"
    return Verdict(v.outcome, v.spent, f"{rel} via search")


def cmd_cmp(args, fuel) -> Report:
    a, b = parse_subject(args.a), parse_subject(args.b)
    v = _relation(a, b, leq(a, b, fuel), fuel)
    return Report("cmp", args.a, args.b, _summary(v), lines=[str(v)],
                  extra={"note": v.note, "fuel_spent": v.spent})


def _ladder_lines(report: ProbeReport) -> List[str]:
    lines = []
    width = max([len(str(r.level)) for r in report.per_level] + [len(str(report.target))])
    for r in report.per_level:
        lines.append(f"  {str(r.level):<{width}}  {r.verdict.outcome.value:<8} fuel {r.verdict.spent}")
    lines.append(f"summary: {report.target} -> {report.summary}")
    return lines


def _levels(report: ProbeReport):
    return [(r.level, r.verdict) for r in report.per_level]


def cmd_probe(args, fuel) -> Report:
    o = parse_subject(args.subject)
    target = cnf_parse(args.target)
    report = probe_ge(o, target, fuel, args.k_max)
    return Report("probe", args.subject, str(target), _summary(report.summary),
                  _levels(report), _ladder_lines(report))


def cmd_jump(args, fuel) -> Report:
    bits = parse_bitseq(args.bits)
    seq = double_jump(bits) if args.double else jump(bits)
    text = ", ".join(_describe(x) for x in seq.prefix(args.count)) + ", ..."
    return Report("jump", args.bits, None, "ok", lines=[text], extra={"prefix": text})


def cmd_psi(args, fuel) -> Report:
    if args.mode == "exists-forall":
        witness = exists_forall_witness(parse_family_2d(args.family))
    else:
        fam = parse_family(args.family)
        witness = forall_witness(fam) if args.mode == "forall" else exists_witness(fam)
    report = witness.probe(fuel, args.k_max)
    lines = [f"{args.mode} {args.family}: level {witness.level}"] + _ladder_lines(report)
    return Report("psi", args.family, str(witness.level), _summary(report.summary),
                  _levels(report), lines, extra={"mode": args.mode})


def cmd_sierp(args, fuel) -> Report:
    o = parse_subject(args.expr)
    v = eval_top(s_n_of(args.n, o), fuel)
    target = str(W * args.n)
    return Report("sierp", args.expr, target, _summary(v),
                  lines=[f"s_{args.n}({args.expr}) = Top: {v}"], extra={"fuel_spent": v.spent})


def cmd_families(args, fuel) -> Report:
    one, two = family_names()
    lines = ["one-parameter: " + ", ".join(one), "two-parameter: " + ", ".join(two)]
    return Report("families", None, None, "ok", lines=lines)


def cmd_selftest(args, fuel) -> Report:
    from .selftest import run_all
    results = run_all()
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    summary = "Proven" if passed == len(results) else "Refuted"
    return Report("selftest", None, None, summary, lines=lines,
                  extra={"criteria": [{"number": r.number, "name": r.name, "passed": r.passed,
                                       "detail": r.detail} for r in results]})


COMMANDS = {"eval": cmd_eval, "cmp": cmd_cmp, "probe": cmd_probe, "jump": cmd_jump,
            "psi": cmd_psi, "sierp": cmd_sierp, "selftest": cmd_selftest,
            "families": cmd_families}


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        fuel = args.fuel if args.fuel is not None else default_fuel()
        report = COMMANDS[args.command](args, fuel)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"ord: parse error: {exc}", file=err)
        return EXIT_USAGE
    except RegistryError as exc:
        print(f"ord: {exc.args[0]}", file=err)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"ord: {exc}", file=err)
        return EXIT_USAGE
    if args.format == "json":
        print(json.dumps(report.as_json(), indent=2), file=out)
    else:
        for line in report.lines:
            print(line, file=out)
    return report.exit


def main(argv: Optional[List[str]] = None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else 0


if __name__ == "__main__":
    sys.exit(main())
