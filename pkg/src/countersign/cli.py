"""Command-line entry point.

Exit codes: 0 success / true / accept / all pass, 1 check failed / false /
reject, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import Limits
from .corpus import UnknownScenario, list_scenarios, run_scenario
from .hilbert import check_proof
from .kripke import UngroundedSelfReference, UnknownWorld, extend_fixpoint, validate_model
from .sat import EvalDepthError, Evaluator, OpenTermError
from .saturate import meeting_of_minds, saturate
from .surface import (
    ParseError, parse_formula, parse_ledger, parse_model, parse_proof, parse_queries, print_any,
    print_term,
)

OK, FAILED, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    except UnicodeDecodeError:
        raise UsageError(f"{path}: not UTF-8 text") from None


class SourcedParseError(Exception):
    def __init__(self, source: str, err: ParseError):
        self.source, self.err = source, err


def _parse(fn, text: str, source: str, *args, **kwargs):
    try:
        return fn(text, *args, **kwargs)
    except ParseError as e:
        raise SourcedParseError(source, e) from None


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- commands ----------------------------------------------------------------

def cmd_fmt(args, limits):
    _emit(_parse(print_any, _read(args.file), args.file))
    return OK


def cmd_check_model(args, limits):
    m = _parse(parse_model, _read(args.file), args.file, max_worlds=limits.max_worlds)
    report = validate_model(m, Evaluator(m, recursion_limit=limits.recursion_limit))
    _emit(report.sexpr() if args.sexpr else report.text())
    return OK if report.ok else FAILED


def cmd_eval(args, limits):
    m = _parse(parse_model, _read(args.file), args.file, max_worlds=limits.max_worlds)
    f = _parse(parse_formula, args.formula, "--formula", m.signature())
    ev = Evaluator(m, recursion_limit=limits.recursion_limit)
    value = ev.check(args.world, f)
    word = "true" if value else "false"
    if args.trace:
        tr = ev.trace(args.world, f)
        if args.sexpr:
            _emit(f"(eval {args.world} {print_term(f)} {word} (height {tr.height})\n"
                  f"{tr.sexpr(1)})")
        else:
            _emit(f"{word}\nheight {tr.height}\n{tr.sexpr()}")
    elif args.sexpr:
        _emit(f"(eval {args.world} {print_term(f)} {word})")
    else:
        _emit(word)
    return OK if value else FAILED


def cmd_extend_entails(args, limits):
    m = _parse(parse_model, _read(args.file), args.file, max_worlds=limits.max_worlds)
    queries = _parse(parse_queries, _read(args.queries), args.queries, m.signature())
    pairs = sorted(((print_term(f), w) for f, w in extend_fixpoint(m, queries)),
                   key=lambda p: (p[0], m.worlds.index(p[1])))
    if args.sexpr:
        _emit("(entails-relation" + "".join(f"\n  (entails {f} {w})" for f, w in pairs) + ")")
    else:
        _emit("\n".join(f"{f} entails-consistent with {w}" for f, w in pairs)
              if pairs else "no formula entailment pairs")
    return OK


def cmd_check_proof(args, limits):
    v = check_proof(_parse(parse_proof, _read(args.file), args.file),
                    max_letters=limits.max_letters)
    _emit(v.sexpr() if args.sexpr else v.text())
    return OK if v.accepted else FAILED


def cmd_saturate(args, limits):
    ledger = _parse(parse_ledger, _read(args.file), args.file)
    if args.goal is not None:
        if not args.parties:
            raise UsageError("--goal needs --parties")
        parties = [a.strip() for a in args.parties.split(",") if a.strip()]
        goal = _parse(parse_formula, args.goal, "--goal")
        rep = meeting_of_minds(ledger, parties, goal, limits.bound, limits.chain_cap)
        _emit(rep.sexpr() if args.sexpr else rep.text())
        if rep.bound_exceeded:
            print(f"warning: round {limits.bound} still added facts", file=sys.stderr)
        return OK if rep.ok else FAILED
    if args.parties:
        raise UsageError("--parties needs --goal")
    sat = saturate(ledger, limits.bound, limits.chain_cap)
    if args.sexpr:
        _emit(sat.sexpr())
    else:
        lines = [f"{a.agent} says {print_term(a.formula)}" for a in sat.assents]
        lines.append(f"{len(sat.assents)} assent facts after {sat.rounds} rounds")
        _emit("\n".join(lines))
    if sat.bound_exceeded:
        print(f"warning: round {limits.bound} still added facts", file=sys.stderr)
    return OK


def cmd_scenario(args, limits):
    if args.all == (args.name is not None):
        raise UsageError("give a scenario name or --all")
    names = [s.name for s in list_scenarios()] if args.all else [args.name]
    reports = [run_scenario(n) for n in names]
    if args.sexpr:
        _emit("(scenarios" + "".join("\n" + r.sexpr() for r in reports) + ")")
    else:
        _emit("\n".join(r.text() for r in reports))
    return OK if all(r.ok for r in reports) else FAILED


def cmd_list_scenarios(args, limits):
    scs = list_scenarios()
    if args.sexpr:
        _emit("(scenarios" + "".join(f"\n  ({s.name} (topics {' '.join(s.topics)}))"
                                     for s in scs) + ")")
    else:
        width = max(len(s.name) for s in scs)
        _emit("\n".join(f"{s.name:<{width}}  {s.summary}" for s in scs))
    return OK


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sexpr", action="store_true", help="machine-readable output")
    common.add_argument("--max-worlds", type=int, help="largest model accepted")
    common.add_argument("--bound", type=int, help="saturation rounds")
    common.add_argument("--recursion-limit", type=int, help="evaluation depth limit")
    common.add_argument("--max-letters", type=int, help="truth-table letter cap")
    common.add_argument("--chain-cap", type=int, help="longest derivation chain kept")

    ap = argparse.ArgumentParser(prog="countersign",
                                 description="Check models, proofs and ledgers of signed "
                                             "contracts and assent.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        p.set_defaults(run=fn)
        return p

    add("fmt", cmd_fmt, "print a file in canonical form").add_argument("file")
    add("check-model", cmd_check_model, "check SC1-SC3 on a model").add_argument("file")
    p = add("eval", cmd_eval, "evaluate a formula at a world")
    p.add_argument("file")
    p.add_argument("--world", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--trace", action="store_true", help="print the semantic tree and its height")
    p = add("extend-entails", cmd_extend_entails, "compute fixed-point entailments for queries")
    p.add_argument("file")
    p.add_argument("--queries", required=True)
    add("check-proof", cmd_check_proof, "check a proof script").add_argument("file")
    p = add("saturate", cmd_saturate, "derive assent facts from a ledger")
    p.add_argument("file")
    p.add_argument("--goal", help="formula every party should assent to")
    p.add_argument("--parties", help="comma-separated agents")
    p = add("scenario", cmd_scenario, "run built-in scenarios")
    p.add_argument("name", nargs="?")
    p.add_argument("--all", action="store_true")
    add("list-scenarios", cmd_list_scenarios, "list built-in scenarios")
    return ap


def _limits(args) -> Limits:
    limits = Limits.from_env()
    for name in ("max_worlds", "bound", "recursion_limit", "max_letters", "chain_cap"):
        v = getattr(args, name)
        if v is not None:
            if v < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
            limits = replace(limits, **{name: v})
    return limits


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, _limits(args))
    except SourcedParseError as e:
        loc = f"{e.err.span}:" if e.err.span else ""
        print(f"{e.source}:{loc} error: {e.err.message}", file=sys.stderr)
    except UnknownScenario as e:
        print(f"error: unknown scenario {e.args[0]}; see list-scenarios", file=sys.stderr)
    except UnknownWorld as e:
        print(f"error: unknown world {e.args[0]}", file=sys.stderr)
    except (UsageError, OpenTermError, UngroundedSelfReference, EvalDepthError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
    return ERROR


if __name__ == "__main__":
    sys.exit(main())
