"""
Seeded random QlSRN functions and closed terms for the differential checks.
"""

import random
from typing import List, Optional

from walt_workbench.core.config import CorpusSettings, settings
from walt_workbench.core.logging_config import get_logger
from walt_workbench.qlsrn.functions import (
    BRANCH, PRED, SUC0, SUC1, Apply, Comp, Proj, QFunction, QTerm, Rec, Zero, numeral,
)

logger = get_logger("corpus", "qlsrn")


def _split(rng: random.Random, total: int, parts: int) -> List[int]:
    """``total`` safe arguments spread over ``parts`` slices"""
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


class CorpusGenerator:
    def __init__(self, config: Optional[CorpusSettings] = None, seed: Optional[int] = None):
        self.config = config or settings.corpus
        self.rng = random.Random(self.config.seed if seed is None else seed)

    def _base(self, k: int, l: int) -> QFunction:
        choices: List[QFunction] = [Zero(k, l)]
        choices += [Proj(k, l, i) for i in range(1, k + l + 1)]
        if (k, l) == (0, 1):
            choices += [SUC0, SUC1, PRED]
        if (k, l) == (0, 3):
            choices.append(BRANCH)
        return self.rng.choice(choices)

    def _composition(self, depth: int, k: int, l: int) -> QFunction:
        top = self.config.max_arity
        shapes = [(k1, l1) for k1 in range(top + 1) for l1 in range(top + 2)
                  if k1 + l1 > 0 and (l1 > 0 or l == 0)]
        k1, l1 = self.rng.choice(shapes)
        f = self.function(depth - 1, k1, l1)
        gs = [self.function(depth - 1, k, 0) for _ in range(k1)]
        hs = [self.function(depth - 1, k, part) for part in _split(self.rng, l, l1)]
        return Comp(k, f, gs, hs)

    def _recursion(self, depth: int, k: int, l: int) -> QFunction:
        g = self.function(depth - 1, k - 1, l)
        return Rec(g, self.function(depth - 1, k, l + 1), self.function(depth - 1, k, l + 1))

    def function(self, depth: int, k: int, l: int) -> QFunction:
        """A random function symbol of arity (k, l), at most ``depth`` constructors deep"""
        if depth <= 0 or self.rng.random() < 0.4:
            return self._base(k, l)
        # the steps of a recursion take one more safe argument
        if k > 0 and l < self.config.max_arity and self.rng.random() < 0.3:
            return self._recursion(depth, k, l)
        return self._composition(depth, k, l)

    def term(self, depth: Optional[int] = None) -> QTerm:
        """A random closed term with literal arguments up to ``max_value``"""
        depth = self.config.max_depth if depth is None else depth
        k = self.rng.randint(0, self.config.max_arity)
        l = self.rng.randint(0, self.config.max_arity)
        f = self.function(depth - 1, k, l)
        args = [self._argument(depth - 1) for _ in range(k + l)]
        return Apply(f, args[:k], args[k:])

    def _argument(self, depth: int) -> QTerm:
        if depth <= 1 or self.rng.random() < 0.7:
            return numeral(self.rng.randint(0, self.config.max_value))
        return self.term(depth)

    def corpus(self, count: Optional[int] = None) -> List[QTerm]:
        count = self.config.count if count is None else count
        terms = [self.term() for _ in range(count)]
        logger.info(f"generated {len(terms)} closed terms (seed {self.config.seed})")
        return terms


def generate_corpus(count: Optional[int] = None, seed: Optional[int] = None,
                    max_depth: Optional[int] = None) -> List[QTerm]:
    config = settings.corpus
    if max_depth is not None:
        config = config.model_copy(update={"max_depth": max_depth})
    return CorpusGenerator(config, seed).corpus(count)

