"""
The weight of closed QlSRN terms and of function symbols, as exact rationals.
"""

from fractions import Fraction
from typing import Union

from walt_workbench.core.errors import OpenTerm
from walt_workbench.qlsrn.functions import Apply, Comp, QFunction, QTerm, Rec, Var

HALF, THIRD = Fraction(1, 2), Fraction(1, 3)


def weight(t: Union[QTerm, QFunction]) -> Fraction:
    if isinstance(t, Var):
        raise OpenTerm(f"{t.name} has no weight; bind it first")
    if isinstance(t, Apply):
        parts = [weight(t.f)] + [weight(a) for a in (*t.normals, *t.safes)]
        return 2 * max(*parts, HALF)
    if isinstance(t, Comp):
        return 3 * max(weight(t.f), *map(weight, t.gs), *map(weight, t.hs), THIRD)
    if isinstance(t, Rec):
        return 2 * max(weight(t.g), weight(t.h0), weight(t.h1), HALF)
    if isinstance(t, QFunction):
        return Fraction(0)
    raise TypeError(f"not a QlSRN term: {t!r}")
