"""
Rule-by-rule validation of derivations.

``check_rule`` compares one node against its rule schema and returns the
first violated condition; ``check_derivation`` folds it bottom-up and raises
``DerivationError`` with the tree path of the failing node.

The checker can be told to accept three weakened rules that are known to
break the complexity bounds (``Relaxation``); they exist so the
counterexample derivations can be built and compared.
"""

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Tuple

from walt_workbench.core.errors import DerivationError, MergeViolation, NonLinearSubstituend
from walt_workbench.core.logging_config import get_logger
from walt_workbench.formulas.types import Bang, EagerLolli, Forall, Formula, Lolli, Par, subst_type
from walt_workbench.judgments.contexts import Context, PDContext, TypeAssignment, merge_contexts
from walt_workbench.judgments.derivation import Derivation, Judgment, Rule
from walt_workbench.syntax.terms import Abs, App, Var, substitute

logger = get_logger("checker", "judgments")


class ViolationKind(str, Enum):
    JUDGMENT_SHAPE = "judgment-shape"
    PREMISE_COUNT = "premise-count"
    SUBJECT_MISMATCH = "subject-mismatch"
    TYPE_MISMATCH = "type-mismatch"
    CONTEXT_MISMATCH = "context-mismatch"
    NON_LINEAR_AXIOM = "non-linear-axiom"
    AXIOM_MISSING = "axiom-missing"
    CONTRACTION = "contraction"
    DOMAIN_CLASH = "domain-clash"
    BANG_ARGUMENT = "bang-argument"
    BANG_FUNCTION_CONTEXT = "bang-function-context"
    EAGER_ARGUMENT_CONTEXT = "eager-argument-context"
    BOX_PREMISE_PAIRS = "box-premise-pairs"
    PAR_COVERAGE = "par-coverage"
    PAR_PAIRING = "par-pairing"
    BANG_DELTA = "bang-delta"
    BANG_COVERAGE = "bang-coverage"
    BANG_OCCURRENCE = "bang-occurrence"
    FORALL_FRESHNESS = "forall-freshness"
    FORALL_INSTANCE = "forall-instance"


class Relaxation(str, Enum):
    EAGER_ELIM_ANY_GAMMA = "=oE'"
    BANG_WEAK_OCCURRENCE = "!'"
    BANG_ELIM_ANY_CONTEXT = "-oE!'"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    rule: Rule
    message: str

    def __str__(self) -> str:
        return f"[{self.rule.value}] {self.kind.value}: {self.message}"


def _v(kind: ViolationKind, rule: Rule, message: str) -> Violation:
    return Violation(kind, rule, message)


# ---------- judgment shape ----------

def judgment_violation(j: Judgment, rule: Rule) -> Optional[Violation]:
    """Invariants every judgment satisfies, whatever rule concludes it"""
    for x, ty in j.gamma.items():
        if not ty.is_linear:
            kind = ViolationKind.NON_LINEAR_AXIOM if rule is Rule.AX else ViolationKind.JUDGMENT_SHAPE
            return _v(kind, rule, f"linear context holds the modal assignment {x}:{ty}")
    seen = set(j.gamma.domain)
    for part in [j.delta.domain] + [theta.domain for theta, _ in j.e.pairs()]:
        clash = seen & part
        if clash:
            return _v(ViolationKind.JUDGMENT_SHAPE, rule, f"variables {sorted(clash)} assigned twice")
        seen |= part
    for _, phi in j.e.phi_pairs():
        if phi.var in seen:
            return _v(ViolationKind.JUDGMENT_SHAPE, rule, f"variable {phi.var} assigned twice")
        seen.add(phi.var)
    return None


def _domain_clash(a: Judgment, b: Judgment) -> Optional[str]:
    """Premises of a two-premise rule may only share identical polynomial assignments"""
    shared = a.domain & b.domain
    for x in sorted(shared):
        pa, pb = a.e.pair_for_var(x), b.e.pair_for_var(x)
        if pa is None or pb is None or pa[1] != pb[1]:
            return x
    return None


def _same_contexts(a: Judgment, b: Judgment) -> bool:
    return a.gamma == b.gamma and a.delta == b.delta and a.e == b.e


# ---------- per rule ----------

def check_rule(node: Derivation, relax: Iterable[Relaxation] = ()) -> Optional[Violation]:
    """Validate ``node`` against its rule, assuming its premises are valid"""
    relax = frozenset(relax)
    rule = node.rule
    if len(node.premises) != rule.premise_count:
        return _v(ViolationKind.PREMISE_COUNT, rule,
                  f"expected {rule.premise_count} premises, found {len(node.premises)}")
    j = node.conclusion
    shape = judgment_violation(j, rule)
    if shape is not None:
        return shape
    checker = _CHECKS[rule]
    return checker(node, j, [p.conclusion for p in node.premises], relax)


def _check_axiom(node, j, ps, relax):
    rule = Rule.AX
    if not isinstance(j.subject, Var):
        return _v(ViolationKind.SUBJECT_MISMATCH, rule, f"subject {j.subject} is not a variable")
    x = j.subject.name
    if x not in j.gamma:
        return _v(ViolationKind.AXIOM_MISSING, rule, f"{x} is not a linear assumption")
    if not j.ty.is_linear:
        return _v(ViolationKind.NON_LINEAR_AXIOM, rule, f"axiom type {j.ty} is modal")
    if j.gamma[x] != j.ty:
        return _v(ViolationKind.TYPE_MISMATCH, rule, f"{x}:{j.gamma[x]} used at {j.ty}")
    return None


def _check_contraction(node, j, ps, relax):
    rule = Rule.CONTRACT
    (p,) = ps
    x, y, z = (node.rule_data.get(k) for k in ("x", "y", "z"))
    if not (x and y and z) or x == y:
        return _v(ViolationKind.CONTRACTION, rule, "rule data must name two variables and a target")
    px, py = p.e.pair_for_var(x), p.e.pair_for_var(y)
    if px is None or py is None:
        return _v(ViolationKind.CONTRACTION, rule, f"{x} and {y} must both be polynomial assumptions")
    if px[1].ty != py[1].ty:
        return _v(ViolationKind.CONTRACTION, rule, f"{x}:{px[1].ty} and {y}:{py[1].ty} differ")
    rest = p.e.without_pair(px[1]).without_pair(py[1])
    others = p.gamma.domain | p.delta.domain | rest.domain
    if z in others or z in (p.subject.free_vars - {x, y}):
        return _v(ViolationKind.CONTRACTION, rule, f"target {z} is not fresh")
    try:
        expected_e = merge_contexts(rest, PDContext([(px[0].extend(py[0]), TypeAssignment(z, px[1].ty))]))
    except MergeViolation as e:
        return _v(ViolationKind.CONTRACTION, rule, str(e))
    if j.gamma != p.gamma or j.delta != p.delta or j.e != expected_e:
        return _v(ViolationKind.CONTEXT_MISMATCH, rule, "conclusion contexts do not merge the two pairs")
    if j.subject != substitute(p.subject, {x: Var(z), y: Var(z)}):
        return _v(ViolationKind.SUBJECT_MISMATCH, rule, f"subject is not M{{{z}/{x},{z}/{y}}}")
    if j.ty != p.ty:
        return _v(ViolationKind.TYPE_MISMATCH, rule, "type changed")
    return None


def _intro_common(rule: Rule, j: Judgment, p: Judgment, x: str) -> Optional[Violation]:
    if j.subject != Abs(x, p.subject):
        return _v(ViolationKind.SUBJECT_MISMATCH, rule, f"subject is not \\{x}. M")
    return None


def _single(names: FrozenSet[str], rule: Rule, what: str):
    if len(names) != 1:
        return None, _v(ViolationKind.CONTEXT_MISMATCH, rule,
                        f"exactly one {what} must be discharged, found {sorted(names)}")
    return next(iter(names)), None


def _check_lolli_intro(node, j, ps, relax):
    rule = Rule.LOLLI_I
    (p,) = ps
    x, bad = _single(p.gamma.domain - j.gamma.domain, rule, "linear assumption")
    if bad:
        return bad
    if j.gamma != p.gamma.without(x) or j.delta != p.delta or j.e != p.e:
        return _v(ViolationKind.CONTEXT_MISMATCH, rule, "contexts other than the binder changed")
    if not isinstance(j.ty, Lolli) or j.ty != Lolli(p.gamma[x], p.ty):
        return _v(ViolationKind.TYPE_MISMATCH, rule, f"type {j.ty} is not {p.gamma[x]} -o {p.ty}")
    return _intro_common(rule, j, p, x)


def _check_par_lolli_intro(node, j, ps, relax):
    rule = Rule.PAR_LOLLI_I
    (p,) = ps
    x, bad = _single(p.delta.domain - j.delta.domain, rule, "partially discharged assumption")
    if bad:
        return bad
    if j.gamma != p.gamma or j.delta != p.delta.without(x) or j.e != p.e:
        return _v(ViolationKind.CONTEXT_MISMATCH, rule, "contexts other than the binder changed")
    if j.ty != Lolli(Par(p.delta[x]), p.ty):
        return _v(ViolationKind.TYPE_MISMATCH, rule, f"type {j.ty} is not ${p.delta[x]} -o {p.ty}")
    return _intro_common(rule, j, p, x)


def _check_bang_lolli_intro(node, j, ps, relax):
    rule = Rule.BANG_LOLLI_I
    (p,) = ps
    x, bad = _single(p.e.phi_vars - j.e.phi_vars, rule, "polynomial assumption")
    if bad:
        return bad
    theta, phi = p.e.pair_for_var(x)
    try:
        expected = merge_contexts(p.e.without_pair(phi), PDContext([(theta, None)]))
    except MergeViolation as e:
        return _v(ViolationKind.CONTEXT_MISMATCH, rule, str(e))
    if j.gamma != p.gamma or j.delta != p.delta or j.e != expected:
        return _v(ViolationKind.CONTEXT_MISMATCH, rule, "the discharged pair must join the elementary one")
    if j.ty != Lolli(Bang(phi.ty), p.ty):
        return _v(ViolationKind.TYPE_MISMATCH, rule, f"type {j.ty} is not !{phi.ty} -o {p.ty}")
    return _intro_common(rule, j, p, x)


def _check_eager_intro(node, j, ps, relax):
    rule = Rule.EAGER_I
    (p,) = ps
    x, bad = _single(p.e.empty_theta.domain - j.e.empty_theta.domain, rule, "elementary assumption")
    if bad:
        return bad
    if j.gamma != p.gamma or j.delta != p.delta or j.e != p.e.without_theta_var(x):
        return _v(ViolationKind.CONTEXT_MISMATCH, rule, "contexts other than the binder changed")
    if j.ty != EagerLolli(Par(p.e.empty_theta[x]), p.ty):
        return _v(ViolationKind.TYPE_MISMATCH, rule,
                  f"type {j.ty} is not ${p.e.empty_theta[x]} =o {p.ty}")
    return _intro_common(rule, j, p, x)


def _check_elim(node, j, ps, relax):
    rule = node.rule
    m, n = ps
    fty = m.ty
    if rule is Rule.EAGER_E:
        if not isinstance(fty, EagerLolli):
            return _v(ViolationKind.TYPE_MISMATCH, rule, f"function type {fty} is not eager")
    elif not isinstance(fty, Lolli):
        return _v(ViolationKind.TYPE_MISMATCH, rule, f"function type {fty} is not -o")
    if n.ty != fty.left:
        return _v(ViolationKind.TYPE_MISMATCH, rule, f"argument type {n.ty} does not match {fty.left}")
    if j.ty != fty.right:
        return _v(ViolationKind.TYPE_MISMATCH, rule, f"conclusion type {j.ty} is not {fty.right}")
    if j.subject != App(m.subject, n.subject):
        return _v(ViolationKind.SUBJECT_MISMATCH, rule, "subject is not the application of the premises")

    if rule is Rule.LOLLI_E and isinstance(fty.left, Bang):
        return _v(ViolationKind.BANG_ARGUMENT, rule, f"argument type {fty.left} is !-modal")
    if rule is Rule.BANG_LOLLI_E:
        if not isinstance(fty.left, Bang):
            return _v(ViolationKind.TYPE_MISMATCH, rule, f"argument type {fty.left} is not !-modal")
        if Relaxation.BANG_ELIM_ANY_CONTEXT not in relax:
            for theta, phi in m.e.pairs():
                if theta or phi is None:
                    return _v(ViolationKind.BANG_FUNCTION_CONTEXT, rule,
                              "function side may only hold pairs (;Phi) with empty Theta")
    if rule is Rule.EAGER_E:
        if n.delta or (n.gamma and Relaxation.EAGER_ELIM_ANY_GAMMA not in relax):
            return _v(ViolationKind.EAGER_ARGUMENT_CONTEXT, rule,
                      "argument must have empty linear and partially discharged contexts")
        if n.e.phi_pairs():
            return _v(ViolationKind.EAGER_ARGUMENT_CONTEXT, rule,
                      "argument may only depend on elementary assumptions")

    clash = _domain_clash(m, n)
    if clash is not None:
        return _v(ViolationKind.DOMAIN_CLASH, rule, f"{clash} is assumed by both premises")
    try:
        expected_e = merge_contexts(m.e, n.e)
        expected_gamma = m.gamma.extend(n.gamma)
        expected_delta = m.delta.extend(n.delta)
    except MergeViolation as e:
        return _v(ViolationKind.DOMAIN_CLASH, rule, str(e))
    if j.gamma != expected_gamma or j.delta != expected_delta or j.e != expected_e:
        return _v(ViolationKind.CONTEXT_MISMATCH, rule, "conclusion contexts are not the premises' union")
    return None


def _box_common(rule: Rule, j: Judgment, p: Judgment, wrap) -> Optional[Violation]:
    if j.subject != p.subject:
        return _v(ViolationKind.SUBJECT_MISMATCH, rule, "a box does not change the subject")
    if j.ty != wrap(p.ty):
        return _v(ViolationKind.TYPE_MISMATCH, rule, f"type {j.ty} is not {wrap(p.ty)}")
    if p.e.phi_pairs():
        return _v(ViolationKind.BOX_PREMISE_PAIRS, rule,
                  "the premise may only hold elementary partially discharged assumptions")
    return None


def _check_par(node, j, ps, relax):
    rule = Rule.PAR
    (p,) = ps
    bad = _box_common(rule, j, p, Par)
    if bad:
        return bad
    shifted_delta = p.delta.map_types(Par)
    if not j.delta.contains(shifted_delta):
        return _v(ViolationKind.CONTEXT_MISMATCH, rule, "premise D must reappear $-prefixed")
    shifted_theta = p.e.empty_theta.map_types(Par)
    if not j.e.empty_theta.contains(shifted_theta):
        return _v(ViolationKind.CONTEXT_MISMATCH, rule, "premise Theta must reappear $-prefixed")
    for theta, phi in j.e.phi_pairs():
        if theta:
            return _v(ViolationKind.PAR_PAIRING, rule,
                      f"pair with {phi.var} must have an empty Theta")
    delta_rest = j.delta.without(*shifted_delta.domain)
    theta_rest = j.e.empty_theta.without(*shifted_theta.domain)
    phis = {phi.var: phi.ty for _, phi in j.e.phi_pairs()}
    for x, ty in p.gamma.items():
        target = delta_rest.get(x, theta_rest.get(x, phis.get(x)))
        if target is None or target != ty:
            return _v(ViolationKind.PAR_COVERAGE, rule,
                      f"{x}:{ty} is not in D, an elementary Theta or a Phi of the conclusion")
    return None


def _check_bang(node, j, ps, relax):
    rule = Rule.BANG
    (p,) = ps
    bad = _box_common(rule, j, p, Bang)
    if bad:
        return bad
    if p.delta:
        return _v(ViolationKind.BANG_DELTA, rule, "the premise must have an empty D")
    shifted_theta = p.e.empty_theta.map_types(Par)
    if j.e.empty_theta != shifted_theta:
        return _v(ViolationKind.CONTEXT_MISMATCH, rule,
                  "the elementary pair must be exactly the $-prefixed premise Theta")
    phi_pairs = j.e.phi_pairs()
    if len(phi_pairs) > 1:
        return _v(ViolationKind.BANG_COVERAGE, rule, "at most one polynomial pair may be created")
    if not phi_pairs:
        if p.gamma:
            return _v(ViolationKind.BANG_COVERAGE, rule,
                      f"{sorted(p.gamma)} need a polynomial pair to land in")
        return None
    theta, phi = phi_pairs[0]
    for x, ty in p.gamma.items():
        target = phi.ty if x == phi.var else theta.get(x)
        if target is None or target != ty:
            return _v(ViolationKind.BANG_COVERAGE, rule, f"{x}:{ty} is not in Theta or Phi")
    stray = theta.domain - p.gamma.domain
    if stray:
        return _v(ViolationKind.BANG_COVERAGE, rule,
                  f"{sorted(stray)} in Theta are not premise assumptions")
    if theta:
        if Relaxation.BANG_WEAK_OCCURRENCE in relax:
            return None
        if phi.var not in j.subject.free_vars:
            return _v(ViolationKind.BANG_OCCURRENCE, rule,
                      f"non-empty Theta needs the polynomial variable {phi.var} free in the subject")
    return None


def _check_forall_intro(node, j, ps, relax):
    rule = Rule.FORALL_I
    (p,) = ps
    alpha = node.rule_data.get("alpha")
    if not isinstance(j.ty, Forall):
        return _v(ViolationKind.TYPE_MISMATCH, rule, f"type {j.ty} is not quantified")
    if alpha is None:
        alpha = j.ty.var
    if j.ty != Forall(alpha, p.ty):
        return _v(ViolationKind.TYPE_MISMATCH, rule, f"type {j.ty} is not forall {alpha}. {p.ty}")
    if not _same_contexts(j, p) or j.subject != p.subject:
        return _v(ViolationKind.CONTEXT_MISMATCH, rule, "contexts and subject must be unchanged")
    for x, ty in list(p.gamma.items()) + list(p.delta.items()) + list(p.e.assignments().items()):
        if alpha in ty.free_tyvars:
            return _v(ViolationKind.FORALL_FRESHNESS, rule, f"{alpha} is free in {x}:{ty}")
    return None


def _check_forall_elim(node, j, ps, relax):
    rule = Rule.FORALL_E
    (p,) = ps
    lin = node.rule_data.get("with")
    if not isinstance(p.ty, Forall):
        return _v(ViolationKind.TYPE_MISMATCH, rule, f"premise type {p.ty} is not quantified")
    if not isinstance(lin, Formula):
        return _v(ViolationKind.FORALL_INSTANCE, rule, "rule data must carry the instance formula")
    try:
        expected = subst_type(p.ty.body, p.ty.var, lin)
    except NonLinearSubstituend as e:
        return _v(ViolationKind.FORALL_INSTANCE, rule, str(e))
    if j.ty != expected:
        return _v(ViolationKind.TYPE_MISMATCH, rule, f"type {j.ty} is not {expected}")
    if not _same_contexts(j, p) or j.subject != p.subject:
        return _v(ViolationKind.CONTEXT_MISMATCH, rule, "contexts and subject must be unchanged")
    return None


_CHECKS = {
    Rule.AX: _check_axiom,
    Rule.CONTRACT: _check_contraction,
    Rule.LOLLI_I: _check_lolli_intro,
    Rule.PAR_LOLLI_I: _check_par_lolli_intro,
    Rule.BANG_LOLLI_I: _check_bang_lolli_intro,
    Rule.EAGER_I: _check_eager_intro,
    Rule.LOLLI_E: _check_elim,
    Rule.BANG_LOLLI_E: _check_elim,
    Rule.EAGER_E: _check_elim,
    Rule.PAR: _check_par,
    Rule.BANG: _check_bang,
    Rule.FORALL_I: _check_forall_intro,
    Rule.FORALL_E: _check_forall_elim,
}


def check_derivation(d: Derivation, relax: Iterable[Relaxation] = ()) -> Judgment:
    """Check every node bottom-up; return the root judgment"""
    relax = frozenset(relax)
    nodes: List[Tuple[Tuple[int, ...], Derivation]] = list(d.walk())
    for path, node in reversed(nodes):
        violation = check_rule(node, relax)
        if violation is not None:
            logger.warning(f"derivation rejected at {path or 'root'}: {violation}")
            raise DerivationError(violation, path)
    return d.conclusion


def violations(d: Derivation, relax: Iterable[Relaxation] = ()) -> List[Tuple[Tuple[int, ...], Violation]]:
    """Every failing node, not only the first"""
    relax = frozenset(relax)
    out = []
    for path, node in d.walk():
        v = check_rule(node, relax)
        if v is not None:
            out.append((path, v))
    return out
