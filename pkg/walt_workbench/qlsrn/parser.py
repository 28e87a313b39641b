"""
Textual syntax for QlSRN.

Functions: ``z[k;l]``, ``s0``, ``s1``, ``p``, ``b``, ``proj[k;l;i]``,
``comp[k;l;k';l'](f; g1, ..; h1, ..)`` and ``rec(g; h0; h1)``.
Terms: variables, integer literals (read as numerals) and applications
``f(t1, ..; u1, ..)``. Without a ``;`` the first k arguments are normal.
"""

import lark as L

from walt_workbench.core.errors import ArityMismatch, ParseError, WorkbenchError
from walt_workbench.qlsrn.functions import (
    BRANCH, PRED, SUC0, SUC1, Apply, Comp, Proj, QFunction, QTerm, Rec, Var, Zero,
    numeral, require_linear,
)

QLSRN_GRAMMAR = r"""
?term: application
     | NAME -> var
     | INT -> literal

application: function "(" [terms] ")"               -> by_arity
           | function "(" [terms] ";" [terms] ")"   -> split

terms: term ("," term)*

function: "z" "[" INT ";" INT "]"                  -> zero
        | "s0"                                     -> suc0
        | "s1"                                     -> suc1
        | "p"                                      -> pred
        | "b"                                      -> branch
        | "proj" "[" INT ";" INT ";" INT "]"       -> proj
        | "comp" "[" INT ";" INT ";" INT ";" INT "]" "(" function ";" [functions] ";" [functions] ")" -> comp
        | "rec" "(" function ";" function ";" function ")" -> rec

functions: function ("," function)*

NAME: /[a-z][a-zA-Z0-9_']*/

%import common.INT
%import common.WS
%ignore WS
"""


class ToQ(L.Transformer):
    def var(self, items):
        return Var(str(items[0]))

    def literal(self, items):
        return numeral(int(items[0]))

    def terms(self, items):
        return list(items)

    functions = terms

    def by_arity(self, items):
        f, args = items[0], items[1] or []
        return f(*args)

    def split(self, items):
        return Apply(items[0], items[1] or [], items[2] or [])

    def zero(self, items):
        return Zero(int(items[0]), int(items[1]))

    def suc0(self, _):
        return SUC0

    def suc1(self, _):
        return SUC1

    def pred(self, _):
        return PRED

    def branch(self, _):
        return BRANCH

    def proj(self, items):
        return Proj(*map(int, items))

    def comp(self, items):
        k, total, k1, l1 = map(int, items[:4])
        f, gs, hs = items[4], items[5] or [], items[6] or []
        c = Comp(k, f, gs, hs)
        if c.arity != (k, total) or f.arity != (k1, l1):
            raise ArityMismatch(f"comp[{k};{total};{k1};{l1}] declared, "
                                f"the parts give comp[{k};{c.safe};{f.normal};{f.safe}]")
        return c

    def rec(self, items):
        return Rec(*items)


_parser = L.Lark(QLSRN_GRAMMAR, start=["term", "function"], parser="lalr",
                 maybe_placeholders=True, transformer=ToQ())


def _parse(text: str, start: str):
    try:
        return _parser.parse(text, start=start)
    except L.exceptions.VisitError as e:
        if isinstance(e.orig_exc, WorkbenchError):
            raise e.orig_exc from None
        raise ParseError(f"cannot parse QlSRN {start}: {e}", text) from e
    except L.exceptions.LarkError as e:
        raise ParseError(f"cannot parse QlSRN {start}: {e}", text) from e


def parse_qfunction(text: str) -> QFunction:
    return _parse(text, "function")


def parse_qterm(text: str, linear: bool = True) -> QTerm:
    """Parse a term; with ``linear`` a variable may feed one safe argument only"""
    t = _parse(text, "term")
    return require_linear(t) if linear else t
