"""
Textual syntax for formulae.

``-o`` is the linear arrow, ``=o`` the eager one (left side must be ``$``),
``!A`` and ``$A`` the modalities, ``$^n A`` / ``!^n A`` iterate them and
``forall a b. L`` quantifies. Arrows associate to the right.
"""

from typing import Mapping, Optional

import lark as L

from walt_workbench.core.errors import IllFormedFormula, ParseError
from walt_workbench.formulas.types import (
    Bang, EagerLolli, Forall, Formula, Lolli, Par, TyVar, bang_n, par_n,
)

FORMULA_RULES = r"""
?formula: "forall" NAME+ "." formula -> forall
        | prefix "-o" formula -> lolli
        | prefix "=o" formula -> eager
        | prefix

?prefix: "!" prefix -> bang
       | "$" prefix -> par
       | "$^" INT prefix -> par_n
       | "!^" INT prefix -> bang_n
       | tyatom

?tyatom: NAME -> tyvar
       | "(" formula ")"
"""

FORMULA_GRAMMAR = FORMULA_RULES + r"""
?start: formula

NAME: /(?!forall\b)[a-zA-Z][a-zA-Z0-9_']*/

%import common.INT
%import common.WS
%ignore WS
"""


class ToFormula(L.Transformer):
    """Builds formulae; names listed in ``abbreviations`` expand to their formula"""

    def __init__(self, abbreviations: Optional[Mapping[str, Formula]] = None):
        super().__init__()
        self.abbreviations = dict(abbreviations or {})

    def tyvar(self, items):
        name = str(items[0])
        if name in self.abbreviations:
            return self.abbreviations[name]
        return TyVar(name)

    def forall(self, items):
        body = items[-1]
        for name in reversed(items[:-1]):
            body = Forall(str(name), body)
        return body

    def lolli(self, items):
        return Lolli(items[0], items[1])

    def eager(self, items):
        return EagerLolli(items[0], items[1])

    def bang(self, items):
        return Bang(items[0])

    def par(self, items):
        return Par(items[0])

    def par_n(self, items):
        return par_n(int(items[0]), items[1])

    def bang_n(self, items):
        return bang_n(int(items[0]), items[1])


_parser = L.Lark(FORMULA_GRAMMAR, parser="lalr")


def parse_formula(text: str, abbreviations: Optional[Mapping[str, Formula]] = None) -> Formula:
    try:
        tree = _parser.parse(text)
        return ToFormula(abbreviations).transform(tree)
    except L.exceptions.VisitError as e:
        if isinstance(e.orig_exc, IllFormedFormula):
            raise e.orig_exc
        raise ParseError(f"cannot build formula: {e.orig_exc}", text) from e
    except L.exceptions.LarkError as e:
        raise ParseError(f"cannot parse formula: {e}", text) from e
