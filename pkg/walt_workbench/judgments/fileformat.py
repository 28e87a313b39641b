"""
Line-oriented derivation files.

One node per line, premises indented two spaces below their conclusion::

    RULE -oE :: G{} ; D{} ; E{} |- (\\x. x) y : a
      RULE -oI :: G{} ; D{} ; E{} |- \\x. x : a -o a
        RULE A :: G{x:a} ; D{} ; E{} |- x : a
      ...

Rule data follows the rule name as ``key="value"`` pairs; name lists are
comma separated and ``with`` holds a formula. Lines starting with ``#`` are
comments. ``dump_derivation`` output loads back to a derivation that dumps
to the same text.
"""

from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

import lark as L

from walt_workbench.core.errors import ParseError
from walt_workbench.core.logging_config import get_logger
from walt_workbench.formulas.parser import FORMULA_RULES, ToFormula, parse_formula
from walt_workbench.formulas.printer import print_formula
from walt_workbench.judgments.contexts import Context, PDContext, TypeAssignment
from walt_workbench.judgments.derivation import (
    FORMULA_KEYS, NAME_KEYS, NAMES_KEYS, Derivation, Judgment, Rule,
)
from walt_workbench.syntax.parser import parse_term

logger = get_logger("fileformat", "judgments")

INDENT = "  "
_KEY_ORDER = NAME_KEYS + NAMES_KEYS + FORMULA_KEYS

CONTEXT_GRAMMAR = FORMULA_RULES + r"""
start: "G" ctx ";" "D" ctx ";" "E" pdctx

ctx: "{" [assign ("," assign)*] "}"
assign: NAME ":" formula

pdctx: "{" [pair ("," pair)*] "}"
pair: "(" "Th" ctx ";" "Ph" ctx ")"

NAME: /(?!forall\b)[a-zA-Z][a-zA-Z0-9_']*/

%import common.INT
%import common.WS
%ignore WS
"""


class ToContexts(ToFormula):
    def assign(self, items):
        return TypeAssignment(str(items[0]), items[1])

    def ctx(self, items):
        return Context([a for a in items if a is not None])

    def pair(self, items):
        theta, phi = items
        if len(phi) > 1:
            raise ParseError(f"a polynomial context holds at most one assignment, found {phi}")
        only = next(iter(phi.assignments()), None)
        return theta, only

    def pdctx(self, items):
        return PDContext([p for p in items if p is not None])

    def start(self, items):
        return tuple(items)


_contexts = L.Lark(CONTEXT_GRAMMAR, parser="lalr")


# ---------- printing ----------

def _format_value(key: str, value: Any) -> str:
    if key in NAMES_KEYS:
        return ",".join(value)
    if key in FORMULA_KEYS:
        return print_formula(value)
    return str(value)


def format_rule_data(data) -> str:
    parts = []
    for key in _KEY_ORDER:
        if key in data:
            parts.append(f'{key}="{_format_value(key, data[key])}"')
    return " ".join(parts)


def format_node(d: Derivation) -> str:
    data = format_rule_data(d.rule_data)
    head = f"RULE {d.rule.value}" + (f" {data}" if data else "")
    return f"{head} :: {d.conclusion}"


def dump_derivation(d: Derivation) -> str:
    lines = []
    for path, node in d.walk():
        lines.append(INDENT * len(path) + format_node(node))
    return "\n".join(lines) + "\n"


def write_derivation(d: Derivation, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_derivation(d), encoding="utf-8")
    logger.info(f"wrote derivation with {d.node_count} nodes to {path}")


# ---------- loading ----------

def _parse_value(key: str, raw: str) -> Any:
    if key in NAMES_KEYS:
        return tuple(x for x in raw.split(",") if x)
    if key in FORMULA_KEYS:
        return parse_formula(raw)
    return raw


def _parse_rule_data(text: str, line_no: int) -> Dict[str, Any]:
    data: Dict[str, Any] = {}
    rest = text.strip()
    while rest:
        key, sep, tail = rest.partition('="')
        value, close, rest = tail.partition('"')
        key = key.strip()
        if not sep or not close or key not in _KEY_ORDER:
            raise ParseError(f"line {line_no}: malformed rule data near {key!r}", text)
        data[key] = _parse_value(key, value)
        rest = rest.strip()
    return data


def parse_judgment(text: str) -> Judgment:
    contexts, turnstile, typed = text.partition(" |- ")
    subject, colon, ty = typed.partition(" : ")
    if not turnstile or not colon:
        raise ParseError("a judgment reads 'G{..} ; D{..} ; E{..} |- term : type'", text)
    try:
        gamma, delta, e = ToContexts().transform(_contexts.parse(contexts))
    except L.exceptions.VisitError as err:
        raise ParseError(f"bad contexts: {err.orig_exc}", text) from err
    except L.exceptions.LarkError as err:
        raise ParseError(f"cannot parse contexts: {err}", text) from err
    return Judgment(gamma, delta, e, parse_term(subject), parse_formula(ty))


def _parse_line(line: str, line_no: int) -> Tuple[int, Rule, Dict[str, Any], Judgment]:
    stripped = line.lstrip(" ")
    indent = len(line) - len(stripped)
    if indent % len(INDENT):
        raise ParseError(f"line {line_no}: indentation is not a multiple of two", line)
    head, sep, judgment = stripped.partition(" :: ")
    words = head.split(" ", 2)
    if not sep or len(words) < 2 or words[0] != "RULE":
        raise ParseError(f"line {line_no}: expected 'RULE <name> [data] :: <judgment>'", line)
    try:
        rule = Rule(words[1])
    except ValueError:
        raise ParseError(f"line {line_no}: unknown rule {words[1]!r}", line)
    data = _parse_rule_data(words[2] if len(words) > 2 else "", line_no)
    return indent // len(INDENT), rule, data, parse_judgment(judgment)


def load_derivation(text: str) -> Derivation:
    rows = []
    for no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        rows.append(_parse_line(line.rstrip(), no))
    if not rows:
        raise ParseError("empty derivation file", text)
    if rows[0][0] != 0:
        raise ParseError("the root must not be indented", text)

    # children of row i are the following rows one level deeper, up to the next row at level <= i
    def build(i: int) -> Tuple[Derivation, int]:
        level, rule, data, judgment = rows[i]
        premises: List[Derivation] = []
        j = i + 1
        while j < len(rows) and rows[j][0] > level:
            if rows[j][0] != level + 1:
                raise ParseError(f"node {j + 1} is nested more than one level below its parent", text)
            child, j = build(j)
            premises.append(child)
        return Derivation(rule, judgment, tuple(premises), data), j

    root, end = build(0)
    if end != len(rows):
        raise ParseError("more than one root node", text)
    return root


def read_derivation(path: Union[str, Path]) -> Derivation:
    return load_derivation(Path(path).read_text(encoding="utf-8"))
