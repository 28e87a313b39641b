"""
Printing QlSRN functions and terms in the syntax the parser reads.
"""

from walt_workbench.qlsrn.functions import (
    Apply, Branch, Comp, Pred, Proj, QFunction, QTerm, Rec, Suc, Var, Zero,
)


def print_function(f: QFunction) -> str:
    if isinstance(f, Zero):
        return f"z[{f.k};{f.l}]"
    if isinstance(f, Suc):
        return f"s{f.digit}"
    if isinstance(f, Pred):
        return "p"
    if isinstance(f, Branch):
        return "b"
    if isinstance(f, Proj):
        return f"proj[{f.k};{f.l};{f.i}]"
    if isinstance(f, Comp):
        k1, l1 = f.f.arity
        gs = ", ".join(map(print_function, f.gs))
        hs = ", ".join(map(print_function, f.hs))
        return f"comp[{f.k};{f.safe};{k1};{l1}]({print_function(f.f)}; {gs}; {hs})"
    if isinstance(f, Rec):
        return f"rec({print_function(f.g)}; {print_function(f.h0)}; {print_function(f.h1)})"
    raise TypeError(f"not a QlSRN function: {f!r}")


def print_term(t: QTerm) -> str:
    if isinstance(t, Var):
        return t.name
    assert isinstance(t, Apply)
    normals = ", ".join(map(print_term, t.normals))
    safes = ", ".join(map(print_term, t.safes))
    if t.normals and t.safes:
        return f"{print_function(t.f)}({normals}; {safes})"
    return f"{print_function(t.f)}({normals or safes})"
