"""
Judgments, derivation trees and one constructor per typing rule.

The constructors compute the conclusion of a rule instance from its premises
and the choices the rule leaves open (where a box sends each assumption,
which weakened assumptions it adds). They do not validate side conditions;
``walt_workbench.judgments.checker`` does.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from walt_workbench.core.errors import ElaborationError
from walt_workbench.formulas.types import (
    Bang, EagerLolli, Forall, Formula, Lolli, Par, subst_type,
)
from walt_workbench.judgments.contexts import (
    EMPTY, EMPTY_E, Context, PDContext, TypeAssignment, merge_all, merge_contexts,
)
from walt_workbench.syntax.terms import Abs, App, Term, Var, substitute


class Rule(str, Enum):
    AX = "A"
    CONTRACT = "C"
    LOLLI_I = "-oI"
    PAR_LOLLI_I = "-oI$"
    LOLLI_E = "-oE"
    BANG_LOLLI_I = "-oI!"
    BANG_LOLLI_E = "-oE!"
    EAGER_I = "=oI"
    EAGER_E = "=oE"
    PAR = "$"
    BANG = "!"
    FORALL_I = "forallI"
    FORALL_E = "forallE"

    @property
    def premise_count(self) -> int:
        if self is Rule.AX:
            return 0
        if self in (Rule.LOLLI_E, Rule.BANG_LOLLI_E, Rule.EAGER_E):
            return 2
        return 1

    @property
    def is_box(self) -> bool:
        return self in (Rule.PAR, Rule.BANG)

    @property
    def is_intro(self) -> bool:
        return self in (Rule.LOLLI_I, Rule.PAR_LOLLI_I, Rule.BANG_LOLLI_I, Rule.EAGER_I)

    @property
    def is_elim(self) -> bool:
        return self in (Rule.LOLLI_E, Rule.BANG_LOLLI_E, Rule.EAGER_E)


# rule_data keys and how they are stored
NAME_KEYS = ("x", "y", "z", "alpha")
NAMES_KEYS = ("delta", "theta", "phi", "weakened")
FORMULA_KEYS = ("with",)


@dataclass(frozen=True)
class Judgment:
    gamma: Context
    delta: Context
    e: PDContext
    subject: Term
    ty: Formula

    @property
    def domain(self) -> frozenset:
        return self.gamma.domain | self.delta.domain | self.e.domain

    def __str__(self) -> str:
        return f"G{self.gamma} ; D{self.delta} ; E{self.e} |- {self.subject} : {self.ty}"


@dataclass(frozen=True, eq=False)
class Derivation:
    rule: Rule
    conclusion: Judgment
    premises: Tuple["Derivation", ...] = ()
    rule_data: Mapping[str, Any] = field(default_factory=dict)

    def walk(self, path: Tuple[int, ...] = ()) -> Iterator[Tuple[Tuple[int, ...], "Derivation"]]:
        """Pre-order walk over (tree path, node)"""
        stack = [(path, self)]
        while stack:
            p, node = stack.pop()
            yield p, node
            for i in reversed(range(len(node.premises))):
                stack.append((p + (i,), node.premises[i]))

    def node_at(self, path: Sequence[int]) -> "Derivation":
        node = self
        for i in path:
            node = node.premises[i]
        return node

    def replace_at(self, path: Sequence[int], new: "Derivation") -> "Derivation":
        if not path:
            return new
        premises = list(self.premises)
        premises[path[0]] = premises[path[0]].replace_at(path[1:], new)
        return Derivation(self.rule, self.conclusion, tuple(premises), self.rule_data)

    @property
    def node_count(self) -> int:
        return sum(1 for _ in self.walk())

    def __str__(self) -> str:
        return f"{self.rule.value} :: {self.conclusion}"


def _ctx(items: Optional[Mapping[str, Formula]]) -> Context:
    if items is None:
        return EMPTY
    return items if isinstance(items, Context) else Context(items)


# ---------- axiom ----------

def axiom(x: str, ty: Formula, gamma: Optional[Mapping[str, Formula]] = None,
          delta: Optional[Mapping[str, Formula]] = None, e: PDContext = EMPTY_E,
          weakened: Iterable[str] = ()) -> Derivation:
    """``G, x:L ; D ; E |- x : L``; ``gamma``/``delta``/``e`` are the weakened extras"""
    g = _ctx(gamma).with_(x, ty)
    data: Dict[str, Any] = {}
    weakened = tuple(weakened)
    if weakened:
        data["weakened"] = weakened
    return Derivation(Rule.AX, Judgment(g, _ctx(delta), e, Var(x), ty), (), data)


# ---------- contraction ----------

def contraction(d: Derivation, x: str, y: str, z: str) -> Derivation:
    """Merge the pairs of the polynomial assumptions ``x`` and ``y`` into ``z``"""
    j = d.conclusion
    px, py = j.e.pair_for_var(x), j.e.pair_for_var(y)
    if px is None or py is None:
        raise ElaborationError(f"contraction needs polynomial assumptions {x} and {y}")
    (theta_x, phi_x), (theta_y, phi_y) = px, py
    rest = j.e.without_pair(phi_x).without_pair(phi_y)
    merged = PDContext([(theta_x.extend(theta_y), TypeAssignment(z, phi_x.ty))])
    e = merge_contexts(rest, merged)
    subject = substitute(j.subject, {x: Var(z), y: Var(z)})
    return Derivation(Rule.CONTRACT, Judgment(j.gamma, j.delta, e, subject, j.ty), (d,),
                      {"x": x, "y": y, "z": z})


# ---------- implications ----------

def lolli_intro(d: Derivation, x: str) -> Derivation:
    j = d.conclusion
    if x not in j.gamma:
        raise ElaborationError(f"-oI: {x} is not a linear assumption")
    ty = Lolli(j.gamma[x], j.ty)
    return Derivation(Rule.LOLLI_I, Judgment(j.gamma.without(x), j.delta, j.e,
                                             Abs(x, j.subject), ty), (d,))


def par_lolli_intro(d: Derivation, x: str) -> Derivation:
    j = d.conclusion
    if x not in j.delta:
        raise ElaborationError(f"-oI$: {x} is not a partially discharged linear assumption")
    ty = Lolli(Par(j.delta[x]), j.ty)
    return Derivation(Rule.PAR_LOLLI_I, Judgment(j.gamma, j.delta.without(x), j.e,
                                                 Abs(x, j.subject), ty), (d,))


def bang_lolli_intro(d: Derivation, x: str) -> Derivation:
    j = d.conclusion
    found = j.e.pair_for_var(x)
    if found is None:
        raise ElaborationError(f"-oI!: {x} is not a polynomial assumption")
    theta, phi = found
    e = merge_contexts(j.e.without_pair(phi), PDContext([(theta, None)]))
    ty = Lolli(Bang(phi.ty), j.ty)
    return Derivation(Rule.BANG_LOLLI_I, Judgment(j.gamma, j.delta, e, Abs(x, j.subject), ty), (d,))


def eager_intro(d: Derivation, x: str) -> Derivation:
    j = d.conclusion
    theta = j.e.empty_theta
    if x not in theta:
        raise ElaborationError(f"=oI: {x} is not an elementary assumption")
    e = j.e.without_theta_var(x)
    ty = EagerLolli(Par(theta[x]), j.ty)
    return Derivation(Rule.EAGER_I, Judgment(j.gamma, j.delta, e, Abs(x, j.subject), ty), (d,))


def _elim(rule: Rule, dm: Derivation, dn: Derivation) -> Derivation:
    m, n = dm.conclusion, dn.conclusion
    fty = m.ty
    if not isinstance(fty, (Lolli, EagerLolli)):
        raise ElaborationError(f"{rule.value}: {fty} is not an implication")
    j = Judgment(m.gamma.extend(n.gamma), m.delta.extend(n.delta), merge_contexts(m.e, n.e),
                 App(m.subject, n.subject), fty.right)
    return Derivation(rule, j, (dm, dn))


def lolli_elim(dm: Derivation, dn: Derivation) -> Derivation:
    return _elim(Rule.LOLLI_E, dm, dn)


def bang_lolli_elim(dm: Derivation, dn: Derivation) -> Derivation:
    return _elim(Rule.BANG_LOLLI_E, dm, dn)


def eager_elim(dm: Derivation, dn: Derivation) -> Derivation:
    return _elim(Rule.EAGER_E, dm, dn)


def elim(dm: Derivation, dn: Derivation) -> Derivation:
    """The elimination rule the function type asks for"""
    fty = dm.conclusion.ty
    if isinstance(fty, EagerLolli):
        return eager_elim(dm, dn)
    if isinstance(fty, Lolli) and isinstance(fty.left, Bang):
        return bang_lolli_elim(dm, dn)
    return lolli_elim(dm, dn)


# ---------- boxes ----------

def _prefix_par(c: Context) -> Context:
    return c.map_types(Par)


def par_box(d: Derivation, to_delta: Iterable[str] = (), to_theta: Iterable[str] = (),
            to_phi: Iterable[str] = (), gamma: Optional[Mapping[str, Formula]] = None,
            delta: Optional[Mapping[str, Formula]] = None,
            theta: Optional[Mapping[str, Formula]] = None,
            phis: Iterable[TypeAssignment] = (), weakened: Iterable[str] = ()) -> Derivation:
    """The $ rule.

    Every linear assumption of the premise goes to D, to the elementary pair
    or to its own polynomial pair; ``gamma``/``delta``/``theta``/``phis`` are
    weakened extras of the conclusion.
    """
    p = d.conclusion
    to_delta, to_theta, to_phi = tuple(to_delta), tuple(to_theta), tuple(to_phi)
    new_delta = _prefix_par(p.delta).extend(p.gamma.restrict(to_delta)).extend(_ctx(delta))
    elementary = p.gamma.restrict(to_theta).extend(_ctx(theta))
    pairs = [PDContext([(_prefix_par(p.e.empty_theta), None)]),
             PDContext([(elementary, None)])]
    for x in to_phi:
        pairs.append(PDContext([(EMPTY, TypeAssignment(x, p.gamma[x]))]))
    for phi in phis:
        pairs.append(PDContext([(EMPTY, phi)]))
    data: Dict[str, Any] = {"delta": to_delta, "theta": to_theta, "phi": to_phi}
    weakened = tuple(weakened)
    if weakened:
        data["weakened"] = weakened
    j = Judgment(_ctx(gamma), new_delta, merge_all(pairs), p.subject, Par(p.ty))
    return Derivation(Rule.PAR, j, (d,), data)


def bang_box(d: Derivation, to_theta: Iterable[str] = (), to_phi: Optional[str] = None,
             gamma: Optional[Mapping[str, Formula]] = None,
             delta: Optional[Mapping[str, Formula]] = None,
             phi: Optional[TypeAssignment] = None, weakened: Iterable[str] = ()) -> Derivation:
    """The ! rule; ``phi`` is a weakened polynomial assumption for a box without one"""
    p = d.conclusion
    to_theta = tuple(to_theta)
    theta = p.gamma.restrict(to_theta)
    if to_phi is not None:
        phi = TypeAssignment(to_phi, p.gamma[to_phi])
    pairs = [PDContext([(_prefix_par(p.e.empty_theta), None)])]
    if phi is not None:
        pairs.append(PDContext([(theta, phi)]))
    elif theta:
        pairs.append(PDContext([(theta, None)]))
    data: Dict[str, Any] = {"theta": to_theta, "phi": (to_phi,) if to_phi else ()}
    weakened = tuple(weakened)
    if weakened:
        data["weakened"] = weakened
    j = Judgment(_ctx(gamma), _ctx(delta), merge_all(pairs), p.subject, Bang(p.ty))
    return Derivation(Rule.BANG, j, (d,), data)


# ---------- quantifiers ----------

def forall_intro(d: Derivation, alpha: str) -> Derivation:
    j = d.conclusion
    return Derivation(Rule.FORALL_I, Judgment(j.gamma, j.delta, j.e, j.subject,
                                              Forall(alpha, j.ty)), (d,), {"alpha": alpha})


def forall_elim(d: Derivation, lin: Formula) -> Derivation:
    j = d.conclusion
    if not isinstance(j.ty, Forall):
        raise ElaborationError(f"forallE: {j.ty} is not quantified")
    ty = subst_type(j.ty.body, j.ty.var, lin)
    return Derivation(Rule.FORALL_E, Judgment(j.gamma, j.delta, j.e, j.subject, ty), (d,),
                      {"alpha": j.ty.var, "with": lin})


def premises_of(d: Derivation) -> List[Judgment]:
    return [p.conclusion for p in d.premises]
