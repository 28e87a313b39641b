"""
Depth, partial size and width of derivations, and the depth of every subject position.

All three measures are computed for every level in a single post-order pass;
levels outside ``0..depth(d)`` are clipped to 0 at the root only, the clause
tables themselves are applied unclipped to subderivations.
"""

from typing import Dict, List, Tuple

from walt_workbench.core.models import MeasureReport
from walt_workbench.judgments.derivation import Derivation, Rule
from walt_workbench.syntax.terms import ARG, BODY, FUN, Position, nocc


def _post_order(d: Derivation) -> List[Derivation]:
    out: List[Derivation] = []
    stack: List[Tuple[Derivation, bool]] = [(d, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            out.append(node)
            continue
        stack.append((node, True))
        for p in reversed(node.premises):
            stack.append((p, False))
    return out


def depth(d: Derivation) -> int:
    """Number of $ and ! rules crossed on the deepest root-to-leaf path"""
    memo: Dict[int, int] = {}
    for node in _post_order(d):
        below = max((memo[id(p)] for p in node.premises), default=0)
        memo[id(node)] = below + 1 if node.rule.is_box else below
    return memo[id(d)]


def _tables(d: Derivation) -> Tuple[int, List[int], List[int]]:
    top = depth(d)
    levels = range(top + 1)
    psz: Dict[int, List[int]] = {}
    wdth: Dict[int, List[int]] = {}
    for node in _post_order(d):
        rule = node.rule
        ps = [psz[id(p)] for p in node.premises]
        ws = [wdth[id(p)] for p in node.premises]
        if rule is Rule.AX:
            s = [1 if lvl == 0 else 0 for lvl in levels]
            w = [0 for _ in levels]
        elif rule is Rule.CONTRACT:
            s = [ps[0][lvl] + (1 if lvl >= 1 else 0) for lvl in levels]
            w = [ws[0][lvl] + (1 if lvl == 1 else 0) for lvl in levels]
        elif rule in (Rule.FORALL_I, Rule.FORALL_E):
            s, w = list(ps[0]), list(ws[0])
        elif rule.is_intro:
            s = [ps[0][lvl] + (1 if lvl == 0 else 0) for lvl in levels]
            w = list(ws[0])
        elif rule.is_elim:
            s = [ps[0][lvl] + ps[1][lvl] + 1 for lvl in levels]
            w = [ws[0][lvl] + ws[1][lvl] + (1 if lvl == 1 else 0) for lvl in levels]
        else:
            s = [0] + ps[0][:-1]
            w = [0] + ws[0][:-1]
        w[0] = 0
        psz[id(node)] = s
        wdth[id(node)] = w
    return top, psz[id(d)], wdth[id(d)]


def partial_size(d: Derivation, lvl: int) -> int:
    top, sizes, _ = _tables(d)
    return sizes[lvl] if 0 <= lvl <= top else 0


def width(d: Derivation, lvl: int) -> int:
    top, _, widths = _tables(d)
    return widths[lvl] if 0 <= lvl <= top else 0


def measure_report(d: Derivation) -> MeasureReport:
    top, sizes, widths = _tables(d)
    return MeasureReport(depth=top, psz=list(sizes), wdth=list(widths))


def depth_map(d: Derivation) -> Dict[Position, int]:
    """Depth of the rule introducing each subject position's head constructor.

    Contraction, quantifier and box rules keep the position; a box adds one
    to everything above it.
    """
    out: Dict[Position, int] = {}
    stack: List[Tuple[Derivation, Position, int]] = [(d, (), 0)]
    while stack:
        node, pos, level = stack.pop()
        rule = node.rule
        if rule is Rule.AX or rule.is_intro or rule.is_elim:
            out.setdefault(pos, level)
        if rule.is_box:
            stack.append((node.premises[0], pos, level + 1))
        elif rule.is_intro:
            stack.append((node.premises[0], pos + (BODY,), level))
        elif rule.is_elim:
            stack.append((node.premises[0], pos + (FUN,), level))
            stack.append((node.premises[1], pos + (ARG,), level))
        elif node.premises:
            stack.append((node.premises[0], pos, level))
    return out


def lemma_violations(d: Derivation) -> List[str]:
    """Structural inequalities every valid derivation satisfies; empty when all hold"""
    report = measure_report(d)
    j = d.conclusion
    problems = []
    for lvl in range(report.depth + 1):
        if report.wdth[lvl] > report.psz[lvl]:
            problems.append(f"level {lvl}: width {report.wdth[lvl]} exceeds partial size {report.psz[lvl]}")
    total = sum(report.psz)
    if j.subject.size > total:
        problems.append(f"subject size {j.subject.size} exceeds total partial size {total}")
    linear = set(j.gamma) | set(j.delta)
    for theta, _ in j.e.pairs():
        linear |= set(theta)
    for x in sorted(linear):
        n = nocc(x, j.subject)
        if n > 1:
            problems.append(f"{x} occurs {n} times but is not polynomial")
    return problems
