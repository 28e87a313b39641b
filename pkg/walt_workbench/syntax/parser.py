"""Textual syntax for untyped terms: ``\\x y. M``, left-associative juxtaposition."""

import lark as L

from walt_workbench.core.errors import ParseError
from walt_workbench.syntax.terms import Abs, App, Term, Var

TERM_GRAMMAR = r"""
?start: term

?term: abs
     | app

abs: "\\" NAME+ "." term

?app: app atom -> application
    | atom

?atom: NAME -> var
     | "(" term ")"

NAME: /[a-zA-Z][a-zA-Z0-9_']*/

%import common.WS
%ignore WS
"""


class ToTerm(L.Transformer):
    def var(self, items):
        return Var(str(items[0]))

    def abs(self, items):
        body = items[-1]
        for name in reversed(items[:-1]):
            body = Abs(str(name), body)
        return body

    def application(self, items):
        return App(items[0], items[1])


_parser = L.Lark(TERM_GRAMMAR, parser="lalr", transformer=ToTerm())


def parse_term(text: str) -> Term:
    try:
        return _parser.parse(text)
    except L.exceptions.LarkError as e:
        raise ParseError(f"cannot parse term: {e}", text) from e
