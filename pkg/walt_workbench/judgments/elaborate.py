"""
Elaboration of annotated terms into derivations.

The elaborator is not an inference procedure: every binder, box and
quantifier rule is given. It decides the rest, namely which elimination
rule each application uses, where each box sends the assumptions of its
premise, where unused assumptions are weakened in, and where contraction
merges several occurrences of a polynomial variable inside one box.

Three passes:

1. ``_prepare`` gives every binder a distinct name, and splits the
   occurrences of a polynomial variable that share a box (``Box.merges``).
2. ``_Synth`` computes the formula of every node and checks every variable
   occurrence against the boxes it crosses.
3. ``_Build`` walks the tree again with the constructors of
   ``walt_workbench.judgments.derivation``.
"""

from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Set, Tuple, Union

from walt_workbench.core.errors import (
    ElaborationError, IllFormedFormula, MergeViolation, NonLinearSubstituend, WeakeningError,
)
from walt_workbench.core.logging_config import get_logger
from walt_workbench.formulas.types import (
    Bang, EagerLolli, Forall, Formula, Lolli, Par, TyVar, fresh_tyvar, subst_type,
)
from walt_workbench.judgments import derivation as rules
from walt_workbench.judgments.annotated import (
    Ap, Box, Gen, Inst, Lam, Node, V, binder_kind, erase, parse_annotated,
)
from walt_workbench.judgments.checker import check_derivation
from walt_workbench.judgments.contexts import EMPTY, Context, PDContext, TypeAssignment
from walt_workbench.judgments.derivation import Derivation, Judgment, Rule
from walt_workbench.syntax.terms import fresh_name

logger = get_logger("elaborate", "judgments")

GAMMA, DELTA, THETA, PHI = "gamma", "delta", "theta", "phi"


@dataclass(frozen=True)
class Binding:
    kind: str
    binder_type: Formula  # the formula on the binder, or its root-context equivalent
    level: int

    @property
    def entry_type(self) -> Formula:
        """The formula the variable has in the context of its own level"""
        if self.kind == GAMMA:
            return self.binder_type
        return self.binder_type.body  # type: ignore[attr-defined]


@dataclass(frozen=True)
class Fake:
    """An assumption with no occurrence, weakened in at some node"""
    name: str
    kind: str
    ty: Formula


def _root_bindings(gamma, delta, theta, phi) -> Dict[str, Binding]:
    out: Dict[str, Binding] = {}
    for kind, ctx, wrap in ((GAMMA, gamma, None), (DELTA, delta, Par), (THETA, theta, Par),
                            (PHI, phi, Bang)):
        for name, ty in (ctx or {}).items():
            if name in out:
                raise ElaborationError(f"free variable {name} declared twice")
            out[name] = Binding(kind, wrap(ty) if wrap else ty, 0)
    return out


# ---------- pass 1: renaming and occurrence splitting ----------

def _rename_binders(node: Node, seen: Set[str], renames: Dict[str, str]) -> Node:
    """Give every binder a name used nowhere else in the term or its declarations"""
    if isinstance(node, V):
        return V(renames.get(node.name, node.name))
    if isinstance(node, Lam):
        name = node.name
        if name in seen:
            name = fresh_name(node.name, frozenset(seen))
        seen.add(name)
        inner = dict(renames)
        inner[node.name] = name
        body = _rename_binders(node.body, seen, inner)
        return Lam(name, node.ty, body, node.eager)
    if isinstance(node, Ap):
        return Ap(_rename_binders(node.fun, seen, renames),
                  _rename_binders(node.arg, seen, renames))
    return replace(node, body=_rename_binders(node.body, seen, renames))  # type: ignore[arg-type]


def _level0_occurrences(node: Node, names: Set[str], out: Dict[str, int]) -> None:
    """Count occurrences of ``names`` outside any nested box"""
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, V):
            if n.name in names:
                out[n.name] = out.get(n.name, 0) + 1
        elif isinstance(n, Lam):
            stack.append(n.body)
        elif isinstance(n, Ap):
            stack.extend((n.arg, n.fun))
        elif isinstance(n, (Inst, Gen)):
            stack.append(n.body)


def _split_level0(node: Node, name: str, fresh: List[str]) -> Node:
    """Replace the level-0 occurrences of ``name``, left to right, by the names in ``fresh``"""
    if isinstance(node, V):
        return V(fresh.pop(0)) if node.name == name else node
    if isinstance(node, Lam):
        return replace(node, body=_split_level0(node.body, name, fresh))
    if isinstance(node, Ap):
        fun = _split_level0(node.fun, name, fresh)
        return Ap(fun, _split_level0(node.arg, name, fresh))
    if isinstance(node, Box):
        return node
    return replace(node, body=_split_level0(node.body, name, fresh))  # type: ignore[arg-type]


def _split_occurrences(node: Node, polynomial: FrozenSet[str]) -> Node:
    if isinstance(node, V):
        return node
    if isinstance(node, Lam):
        inner = polynomial | {node.name} if binder_kind(node.ty, node.eager) == PHI else polynomial
        return replace(node, body=_split_occurrences(node.body, inner))
    if isinstance(node, Ap):
        return Ap(_split_occurrences(node.fun, polynomial), _split_occurrences(node.arg, polynomial))
    if isinstance(node, Box):
        counts: Dict[str, int] = {}
        _level0_occurrences(node.body, set(polynomial), counts)
        body = node.body
        merges = []
        taken = set(erase(node.body).free_vars) | set(polynomial)
        for name in sorted(x for x, n in counts.items() if n > 1):
            fresh = []
            for _ in range(counts[name]):
                new = fresh_name(name, frozenset(taken))
                taken.add(new)
                fresh.append(new)
            merges.append((name, tuple(fresh)))
            body = _split_level0(body, name, list(fresh))
        inner = polynomial | {x for _, xs in merges for x in xs}
        return Box(_split_occurrences(body, inner), node.kind, tuple(merges))
    return replace(node, body=_split_occurrences(node.body, polynomial))  # type: ignore[arg-type]


def _used_names(node: Node) -> FrozenSet[str]:
    """Free names, counting a polynomial variable whose occurrences a box split apart"""
    names = set(erase(node).free_vars)
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Box):
            names.update(x for x, _ in n.merges)
        if isinstance(n, Ap):
            stack.extend((n.fun, n.arg))
        elif not isinstance(n, V):
            stack.append(n.body)  # type: ignore[attr-defined]
    return frozenset(names)


def _prepare(node: Node, roots: Mapping[str, Binding]) -> Node:
    node = _rename_binders(node, set(roots) | set(erase(node).free_vars), {})
    return _split_occurrences(node, frozenset(x for x, b in roots.items() if b.kind == PHI))


# ---------- pass 2: formulas ----------

def _strip_pars(f: Formula, n: int, what: str) -> Formula:
    for _ in range(n):
        if not isinstance(f, Par):
            raise ElaborationError(f"{what}: expected {n} leading $ in {f}")
        f = f.body
    return f


class _Synth:
    def __init__(self, roots: Mapping[str, Binding]):
        self.types: Dict[int, Formula] = {}
        self.env: Dict[str, Binding] = dict(roots)
        self.uses: Dict[str, int] = {}
        self.instances: Dict[int, Formula] = {}

    def run(self, node: Node) -> Formula:
        return self._synth(node, [])

    def _occurrence(self, name: str, boxes: List[str]) -> Formula:
        b = self.env.get(name)
        if b is None:
            raise ElaborationError(f"variable {name} is neither bound nor declared")
        self.uses[name] = self.uses.get(name, 0) + 1
        crossed = boxes[b.level:]
        k = len(crossed)
        if b.kind == GAMMA:
            if k:
                raise ElaborationError(f"linear variable {name} is used inside a box")
            ty = b.binder_type
        elif b.kind == DELTA:
            if not k or "!" in crossed:
                raise ElaborationError(f"{name}:{b.binder_type} must be used inside $ boxes only")
            ty = _strip_pars(b.binder_type, k, name)
        elif b.kind == THETA:
            if not k:
                raise ElaborationError(f"elementary variable {name} must be used inside a box")
            ty = _strip_pars(b.binder_type, k, name)
        else:
            if k != 1:
                raise ElaborationError(f"polynomial variable {name} must be used inside exactly one box")
            ty = b.binder_type.body  # type: ignore[attr-defined]
        if not ty.is_linear:
            raise ElaborationError(f"occurrence of {name} would have the modal formula {ty}")
        if b.kind != PHI and self.uses[name] > 1:
            raise ElaborationError(f"{b.kind} variable {name} is used more than once")
        return ty

    def _synth(self, node: Node, boxes: List[str]) -> Formula:
        if isinstance(node, V):
            ty = self._occurrence(node.name, boxes)
        elif isinstance(node, Lam):
            kind = binder_kind(node.ty, node.eager)
            self.env[node.name] = Binding(kind, node.ty, len(boxes))
            body = self._synth(node.body, boxes)
            ty = EagerLolli(node.ty, body) if node.eager else Lolli(node.ty, body)
        elif isinstance(node, Ap):
            return self._spine(node, boxes)
        elif isinstance(node, Box):
            for name, fresh in node.merges:
                for x in fresh:
                    self.env[x] = self.env[name]
            inner = self._synth(node.body, boxes + [node.kind])
            ty = Par(inner) if node.kind == "$" else Bang(inner)
        elif isinstance(node, Inst):
            if node.ty is None:
                raise ElaborationError(f"{erase(node)} @[_] must be applied to the arguments fixing it")
            ty = self._instantiate(self._synth(node.body, boxes), node.ty)
        else:
            assert isinstance(node, Gen)
            ty = Forall(node.var, self._synth(node.body, boxes))
        self.types[id(node)] = ty
        return ty

    @staticmethod
    def _instantiate(f: Formula, lin: Formula) -> Formula:
        if not isinstance(f, Forall):
            raise ElaborationError(f"instantiating {f}, which is not quantified")
        try:
            return subst_type(f.body, f.var, lin)
        except NonLinearSubstituend as e:
            raise ElaborationError(str(e)) from e

    def _spine(self, node: Ap, boxes: List[str]) -> Formula:
        """An application ``h a1 .. an``; open instances ``@[_]`` on top of h are matched against the a_i"""
        spine: List[Ap] = []
        head: Node = node
        while isinstance(head, Ap):
            spine.append(head)
            head = head.fun
        spine.reverse()
        pending: List[Inst] = []
        while isinstance(head, Inst) and head.ty is None:
            pending.append(head)
            head = head.body
        pending.reverse()
        base = self._synth(head, boxes)
        args = [self._synth(a.arg, boxes) for a in spine]

        if pending:
            holes: Dict[str, Inst] = {}
            cur = base
            for inst in pending:
                if not isinstance(cur, Forall):
                    raise ElaborationError(f"instantiating {cur}, which is not quantified")
                hole = fresh_tyvar("hole", cur.free_tyvars)
                holes[hole] = inst
                cur = subst_type(cur.body, cur.var, TyVar(hole))
            found: Dict[str, Formula] = {}
            for a, aty in zip(spine, args):
                if not isinstance(cur, (Lolli, EagerLolli)):
                    raise ElaborationError(f"applying {erase(a.fun)} of type {cur}")
                if not _match(cur.left, aty, frozenset(holes), found):
                    raise ElaborationError(
                        f"argument {erase(a.arg)} has type {aty}, expected an instance of {cur.left}")
                cur = cur.right
            for hole, inst in holes.items():
                if hole not in found:
                    raise ElaborationError(f"the arguments of {erase(inst)} do not fix its instance")
                self.instances[id(inst)] = found[hole]

        fty = base
        for inst in pending:
            fty = self._instantiate(fty, self.instances[id(inst)])
            self.types[id(inst)] = fty
        for a, aty in zip(spine, args):
            if not isinstance(fty, (Lolli, EagerLolli)):
                raise ElaborationError(f"applying {erase(a.fun)} of type {fty}")
            if fty.left != aty:
                raise ElaborationError(f"argument {erase(a.arg)} has type {aty}, expected {fty.left}")
            fty = fty.right
            self.types[id(a)] = fty
        return fty


def _match(pattern: Formula, f: Formula, holes: FrozenSet[str], found: Dict[str, Formula]) -> bool:
    """One-sided matching of ``pattern`` against ``f``, binding the type variables in ``holes``"""
    if isinstance(pattern, TyVar) and pattern.name in holes:
        if pattern.name in found:
            return found[pattern.name] == f
        if not f.is_linear:
            return False
        found[pattern.name] = f
        return True
    if type(pattern) is not type(f):
        return False
    if isinstance(pattern, TyVar):
        return pattern.name == f.name  # type: ignore[attr-defined]
    if isinstance(pattern, (Lolli, EagerLolli)):
        return (_match(pattern.left, f.left, holes, found)  # type: ignore[attr-defined]
                and _match(pattern.right, f.right, holes, found))  # type: ignore[attr-defined]
    if isinstance(pattern, (Bang, Par)):
        return _match(pattern.body, f.body, holes, found)  # type: ignore[attr-defined]
    assert isinstance(pattern, Forall) and isinstance(f, Forall)
    bound = fresh_tyvar("bound", pattern.free_tyvars | f.free_tyvars | holes)
    ok = _match(subst_type(pattern.body, pattern.var, TyVar(bound)),
                subst_type(f.body, f.var, TyVar(bound)), holes, found)
    return ok and all(bound not in v.free_tyvars for v in found.values())


# ---------- pass 3: derivations ----------

_FUN, _ARG = 0, 1


class _Build:
    def __init__(self, synth: _Synth):
        self.types = synth.types
        self.env = synth.env
        self.instances = synth.instances
        self._absorb: Dict[Tuple[int, Fake], bool] = {}
        self._level0: Dict[int, FrozenSet[str]] = {}

    # ----- weakening -----

    def _box_premise_names(self, box: Box) -> FrozenSet[str]:
        key = id(box)
        if key not in self._level0:
            counts: Dict[str, int] = {}
            names = set(erase(box.body).free_vars)
            _level0_occurrences(box.body, names, counts)
            self._level0[key] = frozenset(counts)
        return self._level0[key]

    def _sides(self, node: Ap, fake: Fake) -> Sequence[int]:
        fty = self.types[id(node.fun)]
        if isinstance(fty, EagerLolli):
            return (_FUN, _ARG) if fake.kind == THETA else (_FUN,)
        if isinstance(fty, Lolli) and isinstance(fty.left, Bang):
            return (_ARG,) if fake.kind == THETA else (_FUN, _ARG)
        return (_FUN, _ARG)

    def can_absorb(self, node: Node, fake: Fake) -> bool:
        key = (id(node), fake)
        if key in self._absorb:
            return self._absorb[key]
        if isinstance(node, V):
            ok = True
        elif isinstance(node, Lam):
            ok = node.name != fake.name and self.can_absorb(node.body, fake)
        elif isinstance(node, Ap):
            children = (node.fun, node.arg)
            ok = any(self.can_absorb(children[s], fake) for s in self._sides(node, fake))
        elif isinstance(node, Box):
            if node.kind == "$":
                ok = True
            elif fake.kind in (GAMMA, DELTA):
                ok = True
            else:
                ok = fake.kind == PHI and not self._box_premise_names(node)
        elif isinstance(node, Gen):
            ok = node.var not in fake.ty.free_tyvars and self.can_absorb(node.body, fake)
        else:
            ok = self.can_absorb(node.body, fake)  # type: ignore[attr-defined]
        self._absorb[key] = ok
        return ok

    @staticmethod
    def _extras(fakes: Sequence[Fake]):
        gamma = {f.name: f.ty for f in fakes if f.kind == GAMMA}
        delta = {f.name: f.ty for f in fakes if f.kind == DELTA}
        theta = {f.name: f.ty for f in fakes if f.kind == THETA}
        phis = [TypeAssignment(f.name, f.ty) for f in fakes if f.kind == PHI]
        return gamma, delta, theta, phis

    # ----- construction -----

    def build(self, node: Node, fakes: Sequence[Fake]) -> Derivation:
        try:
            return self._build(node, list(fakes))
        except MergeViolation as e:
            raise ElaborationError(f"at {erase(node)}: {e}") from e

    def _build(self, node: Node, fakes: List[Fake]) -> Derivation:
        if isinstance(node, V):
            gamma, delta, theta, phis = self._extras(fakes)
            e = PDContext([(Context(theta), None)] + [(EMPTY, p) for p in phis])
            return rules.axiom(node.name, self.types[id(node)], gamma, delta, e,
                               weakened=[f.name for f in fakes])

        if isinstance(node, Lam):
            b = self.env[node.name]
            inner = list(fakes)
            if node.name not in _used_names(node.body):
                fake = Fake(node.name, b.kind, b.entry_type)
                if not self.can_absorb(node.body, fake):
                    raise WeakeningError(f"no rule below \\{node.name} can weaken in {node.name}")
                inner.append(fake)
            d = self._build(node.body, inner)
            intro = {GAMMA: rules.lolli_intro, DELTA: rules.par_lolli_intro,
                     THETA: rules.eager_intro, PHI: rules.bang_lolli_intro}[b.kind]
            return intro(d, node.name)

        if isinstance(node, Ap):
            children = (node.fun, node.arg)
            routed: Tuple[List[Fake], List[Fake]] = ([], [])
            for fake in fakes:
                side = next((s for s in self._sides(node, fake)
                             if self.can_absorb(children[s], fake)), None)
                if side is None:
                    raise WeakeningError(f"{fake.name} cannot be weakened in below {erase(node)}")
                routed[side].append(fake)
            dm = self._build(node.fun, routed[_FUN])
            dn = self._build(node.arg, routed[_ARG])
            return rules.elim(dm, dn)

        if isinstance(node, Box):
            return self._box(node, fakes)

        if isinstance(node, Inst):
            lin = node.ty if node.ty is not None else self.instances[id(node)]
            return rules.forall_elim(self._build(node.body, fakes), lin)

        assert isinstance(node, Gen)
        for fake in fakes:
            if node.var in fake.ty.free_tyvars:
                raise WeakeningError(f"{fake.name}:{fake.ty} mentions the generalized {node.var}")
        return rules.forall_intro(self._build(node.body, fakes), node.var)

    def _box(self, node: Box, fakes: List[Fake]) -> Derivation:
        premise = self._build(node.body, [])
        p = premise.conclusion
        if p.e.phi_pairs():
            raise ElaborationError(
                f"{node.kind}-box over {erase(node.body)}: polynomial assumptions "
                f"{sorted(p.e.phi_vars)} must be discharged inside the box")
        by_kind: Dict[str, List[str]] = {GAMMA: [], DELTA: [], THETA: [], PHI: []}
        for name in sorted(p.gamma):
            by_kind[self.env[name].kind].append(name)
        if by_kind[GAMMA]:
            raise ElaborationError(f"linear variables {by_kind[GAMMA]} cannot enter a box")
        gamma, delta, theta, phis = self._extras(fakes)
        weakened = [f.name for f in fakes]

        if node.kind == "$":
            d = rules.par_box(premise, to_delta=by_kind[DELTA], to_theta=by_kind[THETA],
                              to_phi=by_kind[PHI], gamma=gamma, delta=delta, theta=theta,
                              phis=phis, weakened=weakened)
        else:
            if p.delta or by_kind[DELTA]:
                raise ElaborationError("a !-box cannot depend on partially discharged assumptions")
            if len(by_kind[PHI]) > 1:
                raise ElaborationError(f"a !-box holds one polynomial assumption, found {by_kind[PHI]}")
            if theta:
                raise WeakeningError(f"elementary {sorted(theta)} cannot be weakened in at a !-box")
            to_phi = by_kind[PHI][0] if by_kind[PHI] else None
            if by_kind[THETA] and to_phi is None:
                raise ElaborationError(
                    f"elementary {by_kind[THETA]} need a polynomial assumption in the same !-box")
            if phis and (p.gamma or len(phis) > 1):
                raise WeakeningError("a !-box weakens in one polynomial assumption and only when empty")
            d = rules.bang_box(premise, to_theta=by_kind[THETA], to_phi=to_phi, gamma=gamma,
                               delta=delta, phi=phis[0] if phis else None, weakened=weakened)

        for name, fresh in node.merges:
            d = rules.contraction(d, fresh[0], fresh[1], name)
            for extra in fresh[2:]:
                d = rules.contraction(d, name, extra, name)
        return d


def elaborate(term: Union[Node, str], gamma: Optional[Mapping[str, Formula]] = None,
              delta: Optional[Mapping[str, Formula]] = None,
              theta: Optional[Mapping[str, Formula]] = None,
              phi: Optional[Mapping[str, Formula]] = None,
              abbreviations: Optional[Mapping[str, Formula]] = None,
              check: bool = True) -> Derivation:
    """Build the derivation of an annotated term.

    ``gamma``, ``delta`` and ``theta`` declare free variables with the formula
    they have in the root judgment; ``phi`` declares polynomial variables by
    the formula of their pair, each getting its own pair with empty Theta.
    Declared variables that do not occur are weakened in.
    """
    node = parse_annotated(term, abbreviations) if isinstance(term, str) else term
    roots = _root_bindings(gamma, delta, theta, phi)
    synth = _Synth(roots)
    try:
        prepared = _prepare(node, roots)
        synth.run(prepared)
    except IllFormedFormula as e:
        raise ElaborationError(str(e)) from e
    builder = _Build(synth)
    used = _used_names(prepared)
    fakes = [Fake(name, b.kind, b.entry_type) for name, b in sorted(roots.items()) if name not in used]
    for fake in fakes:
        if not builder.can_absorb(prepared, fake):
            raise WeakeningError(f"declared {fake.name} cannot be weakened in anywhere")
    d = builder.build(prepared, fakes)
    logger.debug(f"elaborated {erase(prepared)} into {d.node_count} nodes")
    if check:
        check_derivation(d)
    return d


# ---------- removing weakened assumptions ----------

def _without(j: Judgment, name: str) -> Judgment:
    e = j.e
    pair = e.pair_for_var(name)
    if pair is not None:
        if pair[0]:
            raise ElaborationError(f"{name} heads a pair with non-empty Theta and cannot be dropped")
        e = e.without_pair(pair[1])
    elif name in e.domain:
        e = e.without_theta_var(name)
    return Judgment(j.gamma.without(name), j.delta.without(name), e, j.subject, j.ty)


def remove_fake(d: Derivation, name: str) -> Derivation:
    """Drop an assumption without occurrences from the whole derivation"""
    root = d.conclusion
    if name not in root.domain:
        raise ElaborationError(f"{name} is not an assumption of the root judgment")
    if name in root.subject.free_vars:
        raise ElaborationError(f"{name} occurs in {root.subject}")

    def strip(node: Derivation) -> Derivation:
        premises = tuple(strip(p) for p in node.premises)
        data = {}
        for key, value in node.rule_data.items():
            if isinstance(value, tuple):
                value = tuple(v for v in value if v != name)
                if key == "weakened" and not value:
                    continue
            data[key] = value
        return Derivation(node.rule, _without(node.conclusion, name), premises, data)

    return strip(d)
