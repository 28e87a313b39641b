"""
Command-line front end, ``walt <subcommand>``.

Reports go to stdout, logs to stderr. Exit status 1 is a parse error (or any
other input the workbench refuses), 2 a rejected derivation, 3 an exhausted
reduction budget and 4 a result that disagrees with its reference evaluator.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from walt_workbench import __version__
from walt_workbench.combinators.catalog import build_piece, names as catalog_names
from walt_workbench.core.config import settings
from walt_workbench.core.errors import (
    BudgetExhausted, DerivationError, NotNormalAfterFinalRound, OracleMismatch, ParseError, TMSpecError,
    WorkbenchError,
)
from walt_workbench.core.logging_config import get_logger, set_log_level
from walt_workbench.formulas.parser import parse_formula
from walt_workbench.formulas.printer import print_formula
from walt_workbench.judgments.checker import Relaxation, check_derivation, violations
from walt_workbench.judgments.fileformat import read_derivation, write_derivation
from walt_workbench.judgments.measures import lemma_violations, measure_report
from walt_workbench.qlsrn.corpus import generate_corpus
from walt_workbench.qlsrn.embedding import (
    WeightReport, embed_fn, embedded_type, interpret_piece, run_compiled, schemes, soundness_mismatches,
)
from walt_workbench.qlsrn.evaluate import eval_q, srn_eval
from walt_workbench.qlsrn.parser import parse_qfunction, parse_qterm
from walt_workbench.qlsrn.printer import print_function, print_term as print_qterm
from walt_workbench.qlsrn.weight import weight
from walt_workbench.reduction.bounds import check_round_bounds, poly_bound_report
from walt_workbench.reduction.engine import RELATIONS, canonical_normalize, reduce_to_nf
from walt_workbench.reduction.tracefile import write_trace
from walt_workbench.syntax.parser import parse_term
from walt_workbench.syntax.printer import print_term
from walt_workbench.tm.machine import encode_machine, machine_piece, tm_run
from walt_workbench.tm.simulate import output_portion, tm_simulate
from walt_workbench.tm.spec import TMSpec, load_tmspec, parse_tmspec, print_tmspec, shipped_machines, format_tape

logger = get_logger("cli", "cli")

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_CHECK = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4

# every --json report carries these keys, null when they do not apply
REPORT_KEYS = ("depth", "psz", "wdth", "steps", "rounds", "result")


def _emit(args: argparse.Namespace, lines: Sequence[str], **fields: Any) -> None:
    if args.json:
        print(json.dumps({k: fields.get(k) for k in REPORT_KEYS}))
        return
    for line in lines:
        print(line)


def _steps(n: int) -> str:
    return f"{n} step" if n == 1 else f"{n} steps"


def _list(xs: Sequence[int]) -> str:
    return "[" + ",".join(map(str, xs)) + "]"


def _read(text: str) -> str:
    """The argument itself, or stdin for ``-``"""
    return sys.stdin.read() if text == "-" else text


def _budget(args: argparse.Namespace) -> int:
    return args.budget if args.budget is not None else settings.reduction.budget


def _expect(got: Any, expected: Any, what: str) -> None:
    if got != expected:
        raise OracleMismatch(f"{what}: got {got}, expected {expected}")
    logger.info(f"{what}: agrees with the reference")


def _write_trace(args: argparse.Namespace, trace) -> None:
    if args.trace:
        write_trace(trace, args.trace)


def _machine(name: str) -> TMSpec:
    """A machine file, or the stem of a shipped one"""
    if Path(name).exists():
        return load_tmspec(name)
    shipped = shipped_machines()
    if name in shipped:
        return load_tmspec(shipped[name])
    raise TMSpecError(f"no machine file {name}; shipped machines are {', '.join(shipped)}")


def _desk_scale(spec: TMSpec, n: int) -> None:
    limits = settings.tm
    over = []
    if len(spec.states) > limits.max_states:
        over.append(f"{len(spec.states)} states")
    if len(spec.alphabet) > limits.max_symbols:
        over.append(f"{len(spec.alphabet)} symbols")
    if spec.degree > limits.max_degree:
        over.append(f"degree {spec.degree}")
    if n > limits.max_input:
        over.append(f"input length {n}")
    if over:
        logger.warning(f"{spec.name} is beyond desk scale ({', '.join(over)}); "
                       f"the encoding runs {spec.clock(n)} steps of the machine")


# ---------- subcommands ----------

def cmd_parse(args: argparse.Namespace) -> int:
    text = _read(args.text)
    if args.kind == "term":
        out = print_term(parse_term(text))
    elif args.kind == "formula":
        out = print_formula(parse_formula(text))
    elif args.kind == "qterm":
        out = print_qterm(parse_qterm(text))
    elif args.kind == "qfunction":
        out = print_function(parse_qfunction(text))
    else:
        out = print_tmspec(parse_tmspec(text)).rstrip("\n")
    _emit(args, [out], result=out)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    d = read_derivation(args.file)
    relax = [Relaxation(r) for r in args.relax]
    try:
        j = check_derivation(d, relax)
    except DerivationError:
        found = violations(d, relax)
        lines = [f"{'.'.join(map(str, path)) or 'root'}: {v}" for path, v in found]
        _emit(args, lines, result=[str(v) for _, v in found])
        return EXIT_CHECK
    _emit(args, [f"OK {j}"], result="OK")
    return EXIT_OK


def cmd_measure(args: argparse.Namespace) -> int:
    d = read_derivation(args.file)
    report = measure_report(d)
    for problem in lemma_violations(d):
        logger.warning(problem)
    _emit(args, [f"depth={report.depth} psz={_list(report.psz)} wdth={_list(report.wdth)}"],
          **report.as_dict())
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    t = parse_term(_read(args.term))
    result, trace = reduce_to_nf(t, budget=_budget(args), strategy=args.strategy, seed=args.seed,
                                 relation=args.relation)
    _write_trace(args, trace)
    if args.verify:
        # any other order of the same relation reaches the same term
        other, _ = reduce_to_nf(t, budget=_budget(args), strategy="random", seed=args.seed,
                                relation=args.relation)
        _expect(other, result, f"{args.term} under a random order")
    out = print_term(result)
    _emit(args, [out, _steps(trace.step_count)], steps=trace.step_count, result=out)
    return EXIT_OK


def cmd_normalize(args: argparse.Namespace) -> int:
    d = read_derivation(args.derivation)
    check_derivation(d)
    trace = canonical_normalize(d, budget=_budget(args), strategy=args.strategy, seed=args.seed)
    _write_trace(args, trace)
    if args.verify:
        broken = check_round_bounds(trace, poly_bound_report(d))
        if broken:
            raise OracleMismatch("; ".join(broken))
    out = print_term(trace.result)
    rounds = [{"level": r.level, "steps": r.steps, "size": r.size} for r in trace.rounds]
    lines = [out] + [f"round d={r.level} steps={r.steps} size={r.size}" for r in trace.rounds]
    _emit(args, lines + [_steps(trace.step_count)], steps=trace.step_count, rounds=rounds, result=out)
    return EXIT_OK


def cmd_combinator(args: argparse.Namespace) -> int:
    if args.list or not args.name:
        _emit(args, catalog_names(), result=catalog_names())
        return EXIT_OK
    piece = build_piece(args.name)
    d = piece.derivation
    if args.out:
        write_derivation(d, args.out)
    report = measure_report(d)
    out = print_term(piece.term)
    _emit(args, [f"{piece.name} : {print_formula(piece.ty)}", out,
                 f"depth={report.depth} psz={_list(report.psz)} wdth={_list(report.wdth)}"],
          result=out, **report.as_dict())
    return EXIT_OK


def cmd_qlsrn_eval(args: argparse.Namespace) -> int:
    t = parse_qterm(_read(args.term))
    value = eval_q(t)
    if args.verify:
        _expect(srn_eval(t), value, f"{print_qterm(t)} on bit strings")
    _emit(args, [str(value)], result=value)
    return EXIT_OK


def cmd_qlsrn_compile(args: argparse.Namespace) -> int:
    text = _read(args.term)
    if args.function:
        f = parse_qfunction(text)
        term, d, m = embed_fn(f)
        ty, _ = embedded_type(f, m)
        report = WeightReport(m, weight(f), schemes(f), closed=False)
        name = print_function(f)
    else:
        t = parse_qterm(text)
        piece, m = interpret_piece(t)
        term, d, ty = piece.term, piece.derivation, piece.ty
        report = WeightReport(m, weight(t), schemes(t))
        name = print_qterm(t)
    head = f"{name} : {print_formula(ty)}"
    if args.verify and d.conclusion.ty != ty:
        raise OracleMismatch(f"the derivation concludes {d.conclusion.ty}, expected {ty}")
    notes = []
    if args.verify and report.violated:
        raise OracleMismatch(f"exponent {report.m} above the weight {report.weight}")
    if args.verify and report.closed and report.scheme_excess:
        # compositions and recursions compile above their weight
        logger.warning(f"exponent {report.m} above the weight {report.weight} of {name}")
        notes.append(f"note: exponent {report.m} above the weight {report.weight}, from its schemes")
    out = print_term(term)
    _emit(args, [head, f"m={m} weight={report.weight}"] + notes + [out], depth=m, result=out)
    return EXIT_OK


def cmd_qlsrn_run(args: argparse.Namespace) -> int:
    relation = args.relation or "beta"
    if args.verify_all:
        terms = generate_corpus(count=args.count, seed=args.corpus_seed)
        mismatches = soundness_mismatches(terms, budget=_budget(args))
        lines = [f"{print_qterm(t)}: evaluates to {want}, compiles to {got}" for t, want, got in mismatches]
        _emit(args, lines + [f"{len(terms)} terms, {len(mismatches)} mismatches"],
              result=len(terms) - len(mismatches))
        return EXIT_MISMATCH if mismatches else EXIT_OK
    if args.term is None:
        raise ParseError("qlsrn-run needs a term unless --verify-all is given")
    t = parse_qterm(_read(args.term))
    value, trace = run_compiled(t, budget=_budget(args), relation=relation)
    _write_trace(args, trace)
    if args.verify:
        _expect(value, eval_q(t), print_qterm(t))
    _emit(args, [str(value), _steps(trace.step_count)], steps=trace.step_count, result=value)
    return EXIT_OK


def cmd_tm_encode(args: argparse.Namespace) -> int:
    spec = _machine(args.machine)
    _desk_scale(spec, 0)
    if args.out:
        term, d = encode_machine(spec)
        write_derivation(d, args.out)
        piece_ty = d.conclusion.ty
    else:
        piece = machine_piece(spec)
        term, piece_ty = piece.term, piece.ty
    out = print_term(term)
    e = spec.exponent
    _emit(args, [f"M[{spec.name}] : {print_formula(piece_ty)}",
                 f"clock {spec.coefficient_bound} n^{2 ** e}, answer under {4 * e + 1} boxes", out],
          depth=4 * e + 1, result=out)
    return EXIT_OK


def cmd_tm_run(args: argparse.Namespace) -> int:
    spec = _machine(args.machine)
    symbols = list(args.symbols)
    _desk_scale(spec, len(symbols))
    config, trace = tm_run(spec, symbols, budget=_budget(args), relation=args.relation or "beta")
    _write_trace(args, trace)
    if args.verify:
        expected = tm_simulate(spec, symbols).config
        _expect(config, expected, f"{spec.name} on {format_tape(symbols)}")
    out = output_portion(spec, config)
    lines = [
        f"state {config.state}",
        f"left {format_tape(config.left)}",
        f"right {format_tape(config.right)}",
        f"output {format_tape(out)}",
        _steps(trace.step_count),
    ]
    result = {"state": config.state, "left": list(config.left), "right": list(config.right),
              "output": list(out)}
    _emit(args, lines, steps=trace.step_count, result=result)
    return EXIT_OK


# ---------- argument parsing ----------

def _reduction_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--budget", type=int, help="maximum number of reduction steps")
    p.add_argument("--relation", choices=RELATIONS, help="restricted rule, or plain beta once it is stuck")
    p.add_argument("--strategy", choices=["leftmost-outermost", "random"], help="redex order")
    p.add_argument("--seed", type=int, help="seed of the random order")
    p.add_argument("--trace", metavar="FILE", help="write the reduction trace to FILE")
    p.add_argument("--verify", action="store_true", help="cross-check against the reference evaluator")
    return p


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "parse": cmd_parse,
    "check": cmd_check,
    "measure": cmd_measure,
    "reduce": cmd_reduce,
    "normalize": cmd_normalize,
    "combinator": cmd_combinator,
    "qlsrn-eval": cmd_qlsrn_eval,
    "qlsrn-compile": cmd_qlsrn_compile,
    "qlsrn-run": cmd_qlsrn_run,
    "tm-encode": cmd_tm_encode,
    "tm-run": cmd_tm_run,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON report")
    reduction = _reduction_options()

    parser = argparse.ArgumentParser(prog="walt", description="Weak affine light typing workbench")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse and print back")
    p.add_argument("text", help="the text to parse, - for stdin")
    p.add_argument("--kind", choices=["term", "formula", "qterm", "qfunction", "tm"], default="term")

    p = sub.add_parser("check", parents=[common], help="check a derivation file")
    p.add_argument("file")
    p.add_argument("--relax", action="append", default=[], choices=[r.value for r in Relaxation],
                   help="accept a relaxed rule variant")

    p = sub.add_parser("measure", parents=[common], help="depth, partial sizes and widths of a derivation")
    p.add_argument("file")

    p = sub.add_parser("reduce", parents=[common, reduction], help="normalize a term")
    p.add_argument("term", help="the term, - for stdin")

    p = sub.add_parser("normalize", parents=[common, reduction], help="complete rounds level by level")
    p.add_argument("--derivation", metavar="FILE", required=True)

    p = sub.add_parser("combinator", parents=[common], help="build a catalog combinator")
    p.add_argument("name", nargs="?", help="e.g. Ss, Coerce^2, DiagMN 1 2")
    p.add_argument("--list", action="store_true", help="list the catalog")
    p.add_argument("--out", metavar="FILE", help="write the derivation to FILE")

    p = sub.add_parser("qlsrn-eval", parents=[common], help="evaluate a QlSRN term")
    p.add_argument("term")
    p.add_argument("--verify", action="store_true", help="cross-check with the bit string evaluator")

    p = sub.add_parser("qlsrn-compile", parents=[common], help="compile QlSRN into a typed term")
    p.add_argument("term")
    p.add_argument("--function", action="store_true", help="the input is a function, not a closed term")
    p.add_argument("--verify", action="store_true", help="check the type and the exponent bound")

    p = sub.add_parser("qlsrn-run", parents=[common, reduction], help="compile, reduce and decode")
    p.add_argument("term", nargs="?")
    p.add_argument("--verify-all", action="store_true", help="run the random corpus against the evaluator")
    p.add_argument("--count", type=int, help="corpus size")
    p.add_argument("--corpus-seed", type=int, help="corpus seed")

    p = sub.add_parser("tm-encode", parents=[common], help="encode a Turing machine")
    p.add_argument("machine", help="a machine file or a shipped machine name")
    p.add_argument("--out", metavar="FILE", help="write the derivation to FILE")

    p = sub.add_parser("tm-run", parents=[common, reduction], help="run an encoded Turing machine")
    p.add_argument("machine", help="a machine file or a shipped machine name")
    p.add_argument("symbols", nargs="*", help="the input, one symbol per argument")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level:
        set_log_level(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except DerivationError as e:
        print(f"derivation rejected: {e}", file=sys.stderr)
        return EXIT_CHECK
    except BudgetExhausted as e:
        used = e.trace.step_count if e.trace is not None else "?"
        print(f"budget exhausted after {used} steps: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (OracleMismatch, NotNormalAfterFinalRound) as e:
        print(f"mismatch: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except WorkbenchError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
