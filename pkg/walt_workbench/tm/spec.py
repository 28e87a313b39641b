"""
Turing machine descriptions and their key-value file format.

A machine has states, a tape alphabet whose first three symbols are false,
true and blank, an initial and an accepting state, a transition table and
the coefficients k_0 .. k_d of the polynomial bounding its running time::

    # flips every bit, then accepts on the first blank
    name: bitflip
    states: scan done
    alphabet: 0 1 _
    initial: scan
    accept: done
    poly: 0 1
    delta:
      scan 0 -> > 1 scan
      scan 1 -> > 0 scan
      scan _ -> = _ done

A row ``state symbol -> move symbol state`` moves left (``<``), right (``>``)
or stays (``=``) after writing. The accepting state has no rows: once
entered it is never left.
"""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, Tuple, Union

import lark as L

from walt_workbench.core.errors import ParseError, TMSpecError, WorkbenchError
from walt_workbench.core.logging_config import get_logger

logger = get_logger("spec", "tm")


class Move(str, Enum):
    LEFT = "<"
    RIGHT = ">"
    STAY = "="


Action = Tuple[Move, str, str]


@dataclass(frozen=True, eq=True)
class TMSpec:
    states: Tuple[str, ...]
    alphabet: Tuple[str, ...]
    initial: str
    accept: str
    delta: Dict[Tuple[str, str], Action] = field(default_factory=dict)
    poly: Tuple[int, ...] = (0, 1)
    name: str = "machine"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "poly", tuple(self.poly))
        object.__setattr__(self, "delta", {k: (Move(m), w, s) for k, (m, w, s) in self.delta.items()})
        self.validate()

    def validate(self) -> None:
        if not self.states or len(set(self.states)) != len(self.states):
            raise TMSpecError(f"states must be distinct and non-empty, got {self.states}")
        if len(self.alphabet) < 3 or len(set(self.alphabet)) != len(self.alphabet):
            raise TMSpecError(f"the alphabet needs at least false, true and blank, got {self.alphabet}")
        for s in (self.initial, self.accept):
            if s not in self.states:
                raise TMSpecError(f"unknown state {s}")
        for (s, a), (move, w, t) in self.delta.items():
            if s not in self.states or t not in self.states:
                raise TMSpecError(f"row {s} {a}: unknown state")
            if a not in self.alphabet or w not in self.alphabet:
                raise TMSpecError(f"row {s} {a}: unknown symbol")
            if s == self.accept and (move, w, t) != (Move.STAY, a, s):
                raise TMSpecError(f"row {s} {a} leaves the accepting state")
        missing = [(s, a) for s in self.states if s != self.accept for a in self.alphabet
                   if (s, a) not in self.delta]
        if missing:
            raise TMSpecError(f"no transition for {missing}")
        if not self.poly or any(k < 0 for k in self.poly) or sum(self.poly) < 1:
            raise TMSpecError(f"poly needs non-negative coefficients with a positive sum, got {self.poly}")

    # ---------- derived numbers ----------

    @property
    def blank(self) -> str:
        return self.alphabet[2]

    @property
    def degree(self) -> int:
        nonzero = [i for i, k in enumerate(self.poly) if k]
        return max(nonzero) if nonzero else 0

    @property
    def coefficient_bound(self) -> int:
        """K, the sum of the coefficients: sum k_i n^i <= K n^degree for n >= 1"""
        return sum(self.poly)

    @property
    def exponent(self) -> int:
        """The least e >= 1 with degree <= 2^e"""
        e = 1
        while 2 ** e < self.degree:
            e += 1
        return e

    def clock(self, n: int) -> int:
        """K n^(2^e), the number of steps the encoding runs on an input of length n"""
        return self.coefficient_bound * n ** (2 ** self.exponent)

    def symbol_index(self, symbol: str) -> int:
        """Position of a symbol among the projections; 0 and |alphabet|+1 are the borders"""
        try:
            return self.alphabet.index(symbol) + 1
        except ValueError:
            raise TMSpecError(f"unknown symbol {symbol}") from None

    def state_index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise TMSpecError(f"unknown state {state}") from None

    def action(self, state: str, symbol: str) -> Action:
        if state == self.accept:
            return Move.STAY, symbol, state
        return self.delta[(state, symbol)]


# ---------- file format ----------

TM_GRAMMAR = r"""
start: entry*

?entry: "name" ":" ID              -> name
      | "states" ":" ID+           -> states
      | "alphabet" ":" ID+         -> alphabet
      | "initial" ":" ID           -> initial
      | "accept" ":" ID            -> accept
      | "poly" ":" INT+            -> poly
      | "delta" ":" row*           -> delta

row: ID ID "->" MOVE ID ID

MOVE: "<" | ">" | "="
ID: /[A-Za-z0-9_'.+*]+/
COMMENT: /#[^\n]*/

%import common.INT
%import common.WS
%ignore WS
%ignore COMMENT
"""


class ToSpec(L.Transformer):
    def name(self, items):
        return "name", str(items[0])

    def states(self, items):
        return "states", tuple(map(str, items))

    def alphabet(self, items):
        return "alphabet", tuple(map(str, items))

    def initial(self, items):
        return "initial", str(items[0])

    def accept(self, items):
        return "accept", str(items[0])

    def poly(self, items):
        return "poly", tuple(int(k) for k in items)

    def row(self, items):
        s, a, move, w, t = map(str, items)
        return (s, a), (Move(move), w, t)

    def delta(self, items):
        rows = {}
        for key, action in items:
            if key in rows:
                raise TMSpecError(f"two rows for {key[0]} {key[1]}")
            rows[key] = action
        return "delta", rows

    def start(self, items):
        fields = {}
        for key, value in items:
            if key in fields:
                raise TMSpecError(f"{key} is given twice")
            fields[key] = value
        for key in ("states", "alphabet", "initial", "accept"):
            if key not in fields:
                raise TMSpecError(f"missing {key}")
        return TMSpec(**fields)


_parser = L.Lark(TM_GRAMMAR, parser="lalr", transformer=ToSpec())


def parse_tmspec(text: str) -> TMSpec:
    try:
        return _parser.parse(text)
    except L.exceptions.VisitError as e:
        if isinstance(e.orig_exc, WorkbenchError):
            raise e.orig_exc from None
        raise ParseError(f"cannot parse machine: {e}", text) from e
    except L.exceptions.LarkError as e:
        raise ParseError(f"cannot parse machine: {e}", text) from e


def load_tmspec(path: Union[str, Path]) -> TMSpec:
    spec = parse_tmspec(Path(path).read_text())
    logger.info(f"loaded {spec.name} from {path}: {len(spec.states)} states, "
                f"{len(spec.alphabet)} symbols, clock {spec.coefficient_bound} n^{2 ** spec.exponent}")
    return spec


def print_tmspec(spec: TMSpec) -> str:
    lines = [
        f"name: {spec.name}",
        f"states: {' '.join(spec.states)}",
        f"alphabet: {' '.join(spec.alphabet)}",
        f"initial: {spec.initial}",
        f"accept: {spec.accept}",
        f"poly: {' '.join(map(str, spec.poly))}",
        "delta:",
    ]
    for (s, a), (move, w, t) in sorted(spec.delta.items(), key=lambda kv: (
            spec.states.index(kv[0][0]), spec.alphabet.index(kv[0][1]))):
        lines.append(f"  {s} {a} -> {move.value} {w} {t}")
    return "\n".join(lines) + "\n"


def shipped_machines() -> Dict[str, Path]:
    """The machines under ``walt_workbench/data``, by file stem"""
    root = Path(__file__).resolve().parent.parent / "data"
    return {p.stem: p for p in sorted(root.glob("*.tm"))}


def format_tape(symbols: Iterable[str]) -> str:
    return " ".join(symbols) if symbols else "(empty)"
