"""
Evaluation of QlSRN terms.

``eval_q`` follows the equational theory on naturals. ``srn_eval`` is an
independent simulator working on bit strings with the most significant
digit first; it also accepts terms that share safe variables, so it can
serve as the oracle for both.
"""

from typing import Mapping, Sequence, Tuple

from walt_workbench.core.errors import UnboundVariable
from walt_workbench.core.logging_config import get_logger
from walt_workbench.qlsrn.functions import (
    Apply, Branch, Comp, Pred, Proj, QFunction, QTerm, Rec, Suc, Var, Zero,
)

logger = get_logger("evaluate", "qlsrn")


def apply_function(f: QFunction, normals: Sequence[int], safes: Sequence[int]) -> int:
    if isinstance(f, Zero):
        return 0
    if isinstance(f, Suc):
        return 2 * safes[0] + f.digit
    if isinstance(f, Pred):
        return safes[0] // 2
    if isinstance(f, Proj):
        return (*normals, *safes)[f.i - 1]
    if isinstance(f, Branch):
        x, y0, y1 = safes
        return y0 if x == 0 else y1
    if isinstance(f, Comp):
        inner = [apply_function(g, normals, ()) for g in f.gs]
        rest = list(safes)
        for h in f.hs:
            inner.append(apply_function(h, normals, rest[:h.safe]))
            rest = rest[h.safe:]
        return apply_function(f.f, inner[:len(f.gs)], inner[len(f.gs):])
    if isinstance(f, Rec):
        x, params = normals[0], tuple(normals[1:])
        if x == 0:
            return apply_function(f.g, params, safes)
        h = f.h1 if x & 1 else f.h0
        below = apply_function(f, (x >> 1, *params), safes)
        return apply_function(h, (x >> 1, *params), (*safes, below))
    raise TypeError(f"not a QlSRN function: {f!r}")


def eval_q(t: QTerm, env: Mapping[str, int] = None) -> int:
    """The value of ``t`` with its free variables read from ``env``"""
    env = env or {}
    if isinstance(t, Var):
        if t.name not in env:
            raise UnboundVariable(f"{t.name} is not bound")
        return env[t.name]
    assert isinstance(t, Apply)
    return apply_function(t.f, [eval_q(a, env) for a in t.normals],
                          [eval_q(a, env) for a in t.safes])


# ---------- bit strings ----------

def to_bits(n: int) -> str:
    """The canonical string of n: no leading zero, empty for 0"""
    if n < 0:
        raise ValueError(f"negative word {n}")
    return format(n, "b") if n else ""


def from_bits(w: str) -> int:
    return int(w, 2) if w else 0


def _run(f: QFunction, normals: Tuple[str, ...], safes: Tuple[str, ...]) -> str:
    if isinstance(f, Zero):
        return ""
    if isinstance(f, Suc):
        w = safes[0] + str(f.digit)
        return w.lstrip("0")
    if isinstance(f, Pred):
        return safes[0][:-1]
    if isinstance(f, Proj):
        return (*normals, *safes)[f.i - 1]
    if isinstance(f, Branch):
        return safes[1] if safes[0] == "" else safes[2]
    if isinstance(f, Comp):
        inner = [_run(g, normals, ()) for g in f.gs]
        offset = 0
        outer = []
        for h in f.hs:
            outer.append(_run(h, normals, safes[offset:offset + h.safe]))
            offset += h.safe
        return _run(f.f, tuple(inner), tuple(outer))
    if isinstance(f, Rec):
        w, params = normals[0], normals[1:]
        r = _run(f.g, params, safes)
        for i, digit in enumerate(w):
            h = f.h1 if digit == "1" else f.h0
            r = _run(h, (w[:i], *params), (*safes, r))
        return r
    raise TypeError(f"not a QlSRN function: {f!r}")


def srn_eval(t: QTerm, env: Mapping[str, int] = None) -> int:
    """Safe recursion on notation over bit strings, recursion unrolled from the top digit"""
    env = env or {}

    def go(u: QTerm) -> str:
        if isinstance(u, Var):
            if u.name not in env:
                raise UnboundVariable(f"{u.name} is not bound")
            return to_bits(env[u.name])
        assert isinstance(u, Apply)
        return _run(u.f, tuple(go(a) for a in u.normals), tuple(go(a) for a in u.safes))

    return from_bits(go(t))
