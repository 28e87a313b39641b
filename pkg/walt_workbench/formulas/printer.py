from walt_workbench.formulas.types import Bang, EagerLolli, Forall, Formula, Lolli, Par, TyVar


def print_formula(f: Formula) -> str:
    return _show(f, prefix=False)


def _show(f: Formula, prefix: bool) -> str:
    if isinstance(f, TyVar):
        return f.name
    if isinstance(f, Bang):
        return "!" + _show(f.body, prefix=True)
    if isinstance(f, Par):
        return "$" + _show(f.body, prefix=True)
    if isinstance(f, (Lolli, EagerLolli)):
        arrow = " -o " if isinstance(f, Lolli) else " =o "
        text = _show(f.left, prefix=True) + arrow + _show(f.right, prefix=False)
    else:
        assert isinstance(f, Forall)
        text = f"forall {f.var}. " + _show(f.body, prefix=False)
    return f"({text})" if prefix else text
