"""
Line-oriented trace files.

    #<i> d=<depth> pos=<path> | <term-before> --> <term-after>
    ROUND d=<lvl> steps=<n> size=<m>

Depth is ``-`` for steps fired outside a depth-annotated run.
"""

import re
from pathlib import Path
from typing import List, Union

from walt_workbench.core.errors import ParseError
from walt_workbench.core.logging_config import get_logger
from walt_workbench.core.models import RoundSummary, StepRecord, Trace
from walt_workbench.syntax.parser import parse_term
from walt_workbench.syntax.terms import format_position, parse_position

logger = get_logger("tracefile", "reduction")

_STEP = re.compile(r"^#(\d+) d=(\d+|-) pos=(\S+) \| (.*) --> (.*)$")
_ROUND = re.compile(r"^ROUND d=(\d+) steps=(\d+) size=(\d+)$")


def format_step(s: StepRecord) -> str:
    d = "-" if s.depth is None else str(s.depth)
    return f"#{s.index} d={d} pos={format_position(s.pos)} | {s.before} --> {s.after}"


def format_round(r: RoundSummary) -> str:
    return f"ROUND d={r.level} steps={r.steps} size={r.size}"


def dump_trace(trace: Trace) -> str:
    """Steps first, then the round summaries"""
    lines = [format_step(s) for s in trace.steps]
    lines += [format_round(r) for r in trace.rounds]
    return "".join(line + "\n" for line in lines)


def load_trace(text: str) -> Trace:
    trace = Trace()
    for n, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        m = _STEP.match(line)
        if m:
            try:
                pos = parse_position(m.group(3))
            except ValueError as e:
                raise ParseError(f"line {n}: {e}", line) from e
            trace.steps.append(StepRecord(
                index=int(m.group(1)),
                depth=None if m.group(2) == "-" else int(m.group(2)),
                pos=pos,
                before=parse_term(m.group(4)),
                after=parse_term(m.group(5)),
            ))
            continue
        m = _ROUND.match(line)
        if m:
            trace.rounds.append(RoundSummary(*(int(g) for g in m.groups())))
            continue
        raise ParseError(f"line {n}: not a trace line", line)
    if trace.steps:
        trace.result = trace.steps[-1].after
    return trace


def write_trace(trace: Trace, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_trace(trace))
    logger.info(f"wrote {trace.step_count} steps and {len(trace.rounds)} rounds to {path}")


def read_trace(path: Union[str, Path]) -> Trace:
    return load_trace(Path(path).read_text())


def chain_breaks(trace: Trace) -> List[int]:
    """Indices whose term-before differs from the previous term-after"""
    return [i for i in range(1, len(trace.steps))
            if trace.steps[i].before != trace.steps[i - 1].after]
