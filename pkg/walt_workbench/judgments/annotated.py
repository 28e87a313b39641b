"""
Type-annotated terms, the input of the elaborator.

Binders carry their formula and the formula decides the rule that discharges
them: a linear formula is a linear assumption, ``$A`` a partially discharged
one, ``!A`` a polynomial one, and an eager binder ``\\{x:$A}`` an elementary
one. Boxes are explicit; quantifier rules are explicit too.

Textual form::

    \\(x:a -o a) (y:!a). $[x y]        binders
    \\{x:$a}. x                        eager binder
    $[M]   ![M]                        boxes
    M @[a -o a]                        instantiate the outermost forall
    M @[_]                             instantiate by matching the arguments of M
    /\\a b. M                          generalize
"""

from dataclasses import dataclass
from typing import FrozenSet, Mapping, Optional, Tuple

import lark as L

from walt_workbench.core.errors import IllFormedFormula, ParseError
from walt_workbench.formulas.parser import FORMULA_RULES, ToFormula
from walt_workbench.formulas.printer import print_formula
from walt_workbench.formulas.types import Bang, Formula, Par
from walt_workbench.syntax.terms import Abs, App, Term, Var


class Node:
    """An annotated term"""

    def __str__(self) -> str:
        return print_annotated(self)


@dataclass(frozen=True, eq=False)
class V(Node):
    name: str


@dataclass(frozen=True, eq=False)
class Lam(Node):
    name: str
    ty: Formula
    body: Node
    eager: bool = False


@dataclass(frozen=True, eq=False)
class Ap(Node):
    fun: Node
    arg: Node


@dataclass(frozen=True, eq=False)
class Box(Node):
    body: Node
    kind: str = "$"
    # polynomial variable -> the names its occurrences inside this box were split into
    merges: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()

    def __post_init__(self):
        if self.kind not in ("$", "!"):
            raise ValueError(f"box kind must be '$' or '!', got {self.kind!r}")


@dataclass(frozen=True, eq=False)
class Inst(Node):
    body: Node
    ty: Optional[Formula] = None  # None: read off the arguments the instance is applied to


@dataclass(frozen=True, eq=False)
class Gen(Node):
    body: Node
    var: str


# ---------- helpers ----------

def lam(binders, body: Node) -> Node:
    """``lam([("x", A), ("y", B)], M)``; a third tuple element ``True`` marks an eager binder"""
    for binder in reversed(list(binders)):
        name, ty = binder[0], binder[1]
        eager = len(binder) > 2 and binder[2]
        body = Lam(name, ty, body, eager)
    return body


def ap(head: Node, *args: Node) -> Node:
    for a in args:
        head = Ap(head, a)
    return head


def par_box(body: Node) -> Box:
    return Box(body, "$")


def bang_box(body: Node) -> Box:
    return Box(body, "!")


def erase(node: Node) -> Term:
    """The untyped term an annotated term denotes"""
    if isinstance(node, V):
        return Var(node.name)
    if isinstance(node, Lam):
        return Abs(node.name, erase(node.body))
    if isinstance(node, Ap):
        return App(erase(node.fun), erase(node.arg))
    assert isinstance(node, (Box, Inst, Gen))
    return erase(node.body)


def free_names(node: Node) -> FrozenSet[str]:
    return erase(node).free_vars


def binder_kind(ty: Formula, eager: bool) -> str:
    """``gamma``, ``delta``, ``theta`` or ``phi``: the context a binder of type ``ty`` lives in"""
    if eager:
        if not isinstance(ty, Par):
            raise IllFormedFormula(f"an eager binder needs a $-formula, got {ty}")
        return "theta"
    if isinstance(ty, Bang):
        return "phi"
    if isinstance(ty, Par):
        return "delta"
    return "gamma"


# ---------- printing ----------

def print_annotated(node: Node) -> str:
    if isinstance(node, V):
        return node.name
    if isinstance(node, Lam):
        binders = []
        while isinstance(node, Lam):
            ty = print_formula(node.ty)
            binders.append(f"{{{node.name}:{ty}}}" if node.eager else f"({node.name}:{ty})")
            node = node.body
        return "\\" + " ".join(binders) + ". " + print_annotated(node)
    if isinstance(node, Gen):
        names = []
        while isinstance(node, Gen):
            names.append(node.var)
            node = node.body
        return "/\\" + " ".join(names) + ". " + print_annotated(node)
    if isinstance(node, Box):
        return f"{node.kind}[{print_annotated(node.body)}]"
    if isinstance(node, Inst):
        shown = "_" if node.ty is None else print_formula(node.ty)
        return f"{_operand(node.body, head=True)} @[{shown}]"
    assert isinstance(node, Ap)
    return f"{_operand(node.fun, head=True)} {_operand(node.arg, head=False)}"


def _operand(node: Node, head: bool) -> str:
    text = print_annotated(node)
    if isinstance(node, (V, Box)) or (head and isinstance(node, (Ap, Inst))):
        return text
    return f"({text})"


# ---------- parsing ----------

ANNOTATED_GRAMMAR = FORMULA_RULES + r"""
?start: term

?term: "\\" binder+ "." term -> lam
     | "/\\" NAME+ "." term -> gen
     | app

?binder: "(" NAME ":" formula ")" -> linear_binder
       | "{" NAME ":" formula "}" -> eager_binder

?app: app operand -> ap
    | app "@[" formula "]" -> inst
    | app "@[" "_" "]" -> inst_auto
    | operand

?operand: NAME -> v
        | "$[" term "]" -> par_box
        | "![" term "]" -> bang_box
        | "(" term ")"

NAME: /(?!forall\b)[a-zA-Z][a-zA-Z0-9_']*/

%import common.INT
%import common.WS
%ignore WS
"""


class ToAnnotated(ToFormula):
    def v(self, items):
        return V(str(items[0]))

    def linear_binder(self, items):
        return (str(items[0]), items[1], False)

    def eager_binder(self, items):
        return (str(items[0]), items[1], True)

    def lam(self, items):
        return lam(items[:-1], items[-1])

    def gen(self, items):
        body = items[-1]
        for name in reversed(items[:-1]):
            body = Gen(body, str(name))
        return body

    def ap(self, items):
        return Ap(items[0], items[1])

    def inst(self, items):
        return Inst(items[0], items[1])

    def inst_auto(self, items):
        return Inst(items[0], None)

    def par_box(self, items):
        return Box(items[0], "$")

    def bang_box(self, items):
        return Box(items[0], "!")


_parser = L.Lark(ANNOTATED_GRAMMAR, parser="lalr")


def parse_annotated(text: str, abbreviations: Optional[Mapping[str, Formula]] = None) -> Node:
    try:
        return ToAnnotated(abbreviations).transform(_parser.parse(text))
    except L.exceptions.VisitError as e:
        if isinstance(e.orig_exc, IllFormedFormula):
            raise e.orig_exc
        raise ParseError(f"cannot build annotated term: {e.orig_exc}", text) from e
    except L.exceptions.LarkError as e:
        raise ParseError(f"cannot parse annotated term: {e}", text) from e
