from typing import List

from walt_workbench.syntax.terms import Abs, App, Term, Var


def print_term(t: Term) -> str:
    """Render ``t`` as ``\\x y. M`` with left-associative application"""
    out: List[str] = []
    _emit(t, out)
    return "".join(out)


def _emit(t: Term, out: List[str]) -> None:
    if isinstance(t, Var):
        out.append(t.name)
    elif isinstance(t, Abs):
        binders = [t.binder]
        body = t.body
        while isinstance(body, Abs):
            binders.append(body.binder)
            body = body.body
        out.append("\\" + " ".join(binders) + ". ")
        _emit(body, out)
    else:
        assert isinstance(t, App)
        if isinstance(t.fun, Abs):
            out.append("(")
            _emit(t.fun, out)
            out.append(")")
        else:
            _emit(t.fun, out)
        out.append(" ")
        if isinstance(t.arg, Var):
            _emit(t.arg, out)
        else:
            out.append("(")
            _emit(t.arg, out)
            out.append(")")
