"""
Reference simulator, stepping a machine the way the encoding does.

The tape only grows where it is written: the head may sit one cell past the
end, where it reads a blank, and moving left from the first cell inserts a
blank in front. A step writes, then moves; the accepting state is never left.
"""

from itertools import takewhile
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

from walt_workbench.core.logging_config import get_logger
from walt_workbench.tm.spec import Move, TMSpec

logger = get_logger("simulate", "tm")


class TMConfig(NamedTuple):
    """Left of the head nearest-first, the state, and the tape from the head rightwards"""
    left: Tuple[str, ...]
    state: str
    right: Tuple[str, ...]


class SimulationResult(NamedTuple):
    state: str
    tape: List[str]
    head: int

    @property
    def config(self) -> TMConfig:
        return TMConfig(tuple(reversed(self.tape[:self.head])), self.state, tuple(self.tape[self.head:]))


def _advance(spec: TMSpec, tape: List[str], head: int, state: str) -> Tuple[int, str]:
    read = tape[head] if head < len(tape) else spec.blank
    move, written, state = spec.action(state, read)
    if head == len(tape):
        tape.append(written)
    else:
        tape[head] = written
    if move is Move.RIGHT:
        head += 1
    elif move is Move.LEFT:
        if head == 0:
            tape.insert(0, spec.blank)
        else:
            head -= 1
    return head, state


def _run(spec: TMSpec, tape: List[str], head: int, state: str, steps: int) -> SimulationResult:
    for i in range(steps):
        if state == spec.accept:
            logger.debug(f"{spec.name} accepts after {i} steps")
            break
        head, state = _advance(spec, tape, head, state)
    return SimulationResult(state, tape, head)


def tm_simulate(spec: TMSpec, symbols: Sequence[str], steps: Optional[int] = None) -> SimulationResult:
    """Run for ``steps`` steps, by default as many as the clock gives on this input"""
    for a in symbols:
        spec.symbol_index(a)
    steps = spec.clock(len(symbols)) if steps is None else steps
    return _run(spec, list(symbols), 0, spec.initial, steps)


def simulate_config(spec: TMSpec, config: TMConfig, steps: int = 1) -> TMConfig:
    """``steps`` steps from an arbitrary configuration"""
    tape = list(reversed(config.left)) + list(config.right)
    return _run(spec, tape, len(config.left), config.state, steps).config


def output_portion(spec: TMSpec, where: Union[SimulationResult, TMConfig]) -> Tuple[str, ...]:
    """The symbols from the head up to the first blank"""
    right = where.config.right if isinstance(where, SimulationResult) else where.right
    return tuple(takewhile(lambda a: a != spec.blank, right))


def accepts(spec: TMSpec, symbols: Sequence[str], steps: Optional[int] = None) -> bool:
    return tm_simulate(spec, symbols, steps).state == spec.accept
