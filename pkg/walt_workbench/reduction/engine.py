"""
Reduction runs: plain normalization, depth-indexed rounds and the canonical strategy.

Depth annotations travel with the term (see ``syntax.terms.annotate``). A
round at level d fires only redexes whose application node is annotated d;
the canonical strategy runs complete rounds at levels 0, 1, ... up to the
depth of the starting derivation and then expects a normal form.
"""

import random
from typing import Callable, Optional, Sequence, Tuple

from walt_workbench.core.config import settings
from walt_workbench.core.errors import BudgetExhausted, NotNormalAfterFinalRound, StuckOnRestrictedRelation
from walt_workbench.core.logging_config import fields, get_logger
from walt_workbench.core.models import RoundSummary, StepRecord, Trace
from walt_workbench.judgments.derivation import Derivation
from walt_workbench.judgments.measures import depth, depth_map
from walt_workbench.reduction.redex import (
    Redex, find_redexes, is_normal, iter_beta_redexes, iter_redexes, step, stuck_redexes,
)
from walt_workbench.syntax.terms import Term, annotate, format_position, subterm_at

logger = get_logger("engine", "reduction")

Chooser = Callable[[Sequence[Redex]], Redex]
RELATIONS = ("restricted", "beta")


def make_chooser(strategy: Optional[str] = None, seed: Optional[int] = None) -> Optional[Chooser]:
    """None means leftmost-outermost; "random" picks uniformly with a seeded generator"""
    strategy = strategy or settings.reduction.strategy
    if strategy == "leftmost-outermost":
        return None
    if strategy == "random":
        rng = random.Random(settings.reduction.seed if seed is None else seed)
        return lambda candidates: rng.choice(list(candidates))
    raise ValueError(f"unknown strategy {strategy!r}")


def redex_depth(t: Term, r: Redex) -> int:
    """Depth annotation carried by the application node of ``r``"""
    d = subterm_at(t, r.pos).depth
    if d is None:
        raise ValueError(f"no depth annotation at {format_position(r.pos)}")
    return d


class _Run:
    """Single-owner step accumulator shared by the public entry points"""

    def __init__(self, budget: Optional[int], chooser: Optional[Chooser],
                 relation: Optional[str] = None):
        self.budget = settings.reduction.budget if budget is None else budget
        self.chooser = chooser
        self.relation = relation or settings.reduction.relation
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        self.trace = Trace()

    def pick(self, t: Term, level: Optional[int]) -> Optional[Redex]:
        found = self._choose(t, level, iter_redexes)
        if found is None and self.relation == "beta":
            found = self._choose(t, level, iter_beta_redexes)
        return found

    def _choose(self, t: Term, level: Optional[int], source) -> Optional[Redex]:
        if level is None:
            candidates = source(t)
        else:
            candidates = (r for r in source(t) if subterm_at(t, r.pos).depth == level)
        if self.chooser is None:
            return next(candidates, None)
        pool = list(candidates)
        return self.chooser(pool) if pool else None

    def fire(self, t: Term, r: Redex) -> Term:
        if self.trace.step_count >= self.budget:
            self.trace.result = t
            raise BudgetExhausted(f"budget of {self.budget} steps exhausted", self.trace)
        after = step(t, r)
        record = StepRecord(index=self.trace.step_count, depth=subterm_at(t, r.pos).depth,
                            pos=r.pos, before=t, after=after, case=r.case.value)
        self.trace.steps.append(record)
        logger.debug(f"#{record.index} {r} d={record.depth}")
        return after

    def until_stuck(self, t: Term, level: Optional[int]) -> Tuple[Term, int]:
        fired = 0
        while True:
            r = self.pick(t, level)
            if r is None:
                return t, fired
            t = self.fire(t, r)
            fired += 1


def reduce_to_nf(t: Term, budget: Optional[int] = None, strategy: Optional[str] = None,
                 seed: Optional[int] = None, relation: Optional[str] = None) -> Tuple[Term, Trace]:
    """Normalize with the restricted rule; with relation="beta" plain beta takes over once it is stuck"""
    run = _Run(budget, make_chooser(strategy, seed), relation)
    result, fired = run.until_stuck(t, None)
    run.trace.result = result
    logger.info("normal form reached", extra=fields(steps=fired, size=result.size))
    return result, run.trace


def complete_round(t: Term, lvl: int, budget: Optional[int] = None, strategy: Optional[str] = None,
                   seed: Optional[int] = None) -> Tuple[Term, int]:
    """Fire redexes at depth ``lvl`` until none is left; returns the term and the step count"""
    run = _Run(budget, make_chooser(strategy, seed), "restricted")
    return run.until_stuck(t, lvl)


def canonical_normalize(d: Derivation, budget: Optional[int] = None,
                        strategy: Optional[str] = None, seed: Optional[int] = None) -> Trace:
    """Complete rounds at levels 0..depth(d) starting from the subject of ``d``

    The result must be beta normal: redexes left at any level raise
    NotNormalAfterFinalRound, and a term only the plain beta rule could go on
    with raises StuckOnRestrictedRelation.
    """
    run = _Run(budget, make_chooser(strategy, seed), "restricted")
    t = annotate(d.conclusion.subject, depth_map(d))
    top = depth(d)
    for lvl in range(top + 1):
        t, fired = run.until_stuck(t, lvl)
        run.trace.rounds.append(RoundSummary(level=lvl, steps=fired, size=t.size))
        logger.info(f"round d={lvl} complete", extra=fields(level=lvl, steps=fired, size=t.size))
    run.trace.result = t
    if not is_normal(t):
        left = find_redexes(t)
        raise NotNormalAfterFinalRound(
            f"{len(left)} redexes left after {top + 1} rounds, first at "
            f"{format_position(left[0].pos)} annotated {subterm_at(t, left[0].pos).depth}",
            run.trace)
    stuck = stuck_redexes(t)
    if stuck:
        raise StuckOnRestrictedRelation(
            f"restricted normal form keeps {len(stuck)} beta redexes, first at "
            f"{format_position(stuck[0].pos)}: {subterm_at(t, stuck[0].pos)}",
            run.trace)
    return run.trace
