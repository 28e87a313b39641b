"""
The catalog of combinators.

A ``CombinatorSpec`` names a catalog entry and carries its parameters:
naturals for arities and exponents, pieces for the sub-terms a typing
hypothesis asks for. Names with numeric indices read as in the literature:
``Coerce^3``, ``DiagN 2``, ``DiagMN 1 2``.
"""

import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple, Union

from walt_workbench.combinators import configurations as cf
from walt_workbench.combinators import embeddings as em
from walt_workbench.combinators import iteration as it
from walt_workbench.combinators import words as wd
from walt_workbench.combinators.encoders import string_node
from walt_workbench.combinators.piece import Piece
from walt_workbench.combinators.schemas import NAT
from walt_workbench.core.errors import ArityMismatch, UnknownCombinator
from walt_workbench.core.logging_config import get_logger
from walt_workbench.judgments.derivation import Derivation
from walt_workbench.syntax.terms import Term

logger = get_logger("catalog", "combinators")

Param = Union[int, Piece]

NAT_PARAM = "nat"
PIECE_PARAM = "piece"
PIECES_PARAM = "pieces"  # any number of trailing pieces


@dataclass(frozen=True)
class CombinatorSpec:
    name: str
    params: Tuple[Param, ...] = ()

    def __str__(self) -> str:
        shown = " ".join(str(p) for p in self.params)
        return f"{self.name} {shown}".strip()


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kinds: Tuple[str, ...]
    builder: Callable[..., Piece]
    summary: str


def _string(n: int) -> Piece:
    return Piece(f"U{n}", string_node(n), NAT, lambda: n)


def _comp(n: int, m: int, normal_count: int, f: Piece, *rest: Piece) -> Piece:
    if len(rest) < normal_count:
        raise ArityMismatch(f"Comp expects {normal_count} normal functions, got {len(rest)}")
    return it.composition(n, m, f, rest[:normal_count], rest[normal_count:])


_ENTRIES: List[CatalogEntry] = [
    CatalogEntry("U", (NAT_PARAM,), _string, "the string of length n"),
    CatalogEntry("BNum", (NAT_PARAM,), lambda n: em.word_piece(n), "the word of n"),
    CatalogEntry("Ss", (), wd.successor_on_strings, "successor on strings"),
    CatalogEntry("Ws0", (), wd.ws0, "append a 0 digit"),
    CatalogEntry("Ws1", (), wd.ws1, "append a 1 digit"),
    CatalogEntry("P", (), wd.predecessor, "drop the last digit"),
    CatalogEntry("B", (), wd.branch, "branch on the empty word"),
    CatalogEntry("MkC", (), wd.mkc, "canonical form of a word"),
    CatalogEntry("BMkC", (), wd.bmkc, "base of MkC"),
    CatalogEntry("SMkC0", (), wd.smkc0, "0-step of MkC"),
    CatalogEntry("SMkC1", (), wd.smkc1, "1-step of MkC"),
    CatalogEntry("StepP", (), wd.step_p, "step of P"),
    CatalogEntry("BaseP", (), wd.base_p, "base of P"),
    CatalogEntry("I", (), wd.word_identity, "identity on words"),
    CatalogEntry("W2S", (), wd.word_to_string, "word to string of its length"),
    CatalogEntry("S2L", (), wd.string_to_list, "string to list of copies"),
    CatalogEntry("Coerce", (), em.coerce, "word to the same word under a box"),
    CatalogEntry("Coerce^m", (NAT_PARAM,), em.coerce_power, "word to the same word under m boxes"),
    CatalogEntry("DiagN", (NAT_PARAM,), em.diagonal, "n copies of a word"),
    CatalogEntry("DiagMN", (NAT_PARAM, NAT_PARAM), em.elementary_diagonal,
                 "n copies of a word under m boxes, elementary tuple"),
    CatalogEntry("EmbB", (PIECE_PARAM, NAT_PARAM), em.embed_basic, "basic embedding"),
    CatalogEntry("EmbL", (PIECE_PARAM, NAT_PARAM, NAT_PARAM), em.embed_linear, "linear embedding"),
    CatalogEntry("EmbE", (PIECE_PARAM, NAT_PARAM, NAT_PARAM, NAT_PARAM), em.embed_eager,
                 "eager embedding"),
    CatalogEntry("Ba", (NAT_PARAM,), cf.base_pair, "empty head/tail pair"),
    CatalogEntry("St", (NAT_PARAM, PIECE_PARAM), cf.step_pair, "push onto a head/tail pair"),
    CatalogEntry("C2PC", (NAT_PARAM, NAT_PARAM, NAT_PARAM, PIECE_PARAM), cf.config_to_preconfig,
                 "configuration to pre-configuration"),
    CatalogEntry("PC2C", (NAT_PARAM, NAT_PARAM, NAT_PARAM, PIECE_PARAM), cf.preconfig_to_config,
                 "pre-configuration to configuration"),
    CatalogEntry("C2C", (NAT_PARAM, NAT_PARAM, NAT_PARAM, PIECE_PARAM, PIECE_PARAM),
                 cf.config_to_config, "transition function"),
    CatalogEntry("L2C", (NAT_PARAM, NAT_PARAM, NAT_PARAM), cf.lists_to_config, "lists to configuration"),
    CatalogEntry("W2C", (NAT_PARAM, NAT_PARAM, NAT_PARAM), cf.word_to_config,
                 "initial configuration of a word"),
    CatalogEntry("C2FC", (NAT_PARAM, NAT_PARAM, NAT_PARAM), cf.config_to_final,
                 "configuration to final configuration"),
    CatalogEntry("FC2W", (NAT_PARAM, NAT_PARAM, NAT_PARAM), cf.final_to_word,
                 "result word of a final configuration"),
    CatalogEntry("It", (NAT_PARAM, NAT_PARAM, NAT_PARAM, PIECE_PARAM, PIECE_PARAM, PIECE_PARAM),
                 it.iterator, "iterator"),
    CatalogEntry("Comp", (NAT_PARAM, NAT_PARAM, NAT_PARAM, PIECE_PARAM, PIECES_PARAM), _comp,
                 "composition"),
]

CATALOG: Dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}

_EXPONENT = re.compile(r"^(?P<name>[A-Za-z0-9]+)\^(?P<m>\d+)$")


def parse_name(text: str) -> CombinatorSpec:
    """``"Coerce^3"`` -> Coerce^m with m=3; ``"DiagMN 1 2"`` -> DiagMN with (1, 2)"""
    tokens = text.split()
    if not tokens:
        raise UnknownCombinator("empty combinator name")
    head, rest = tokens[0], tokens[1:]
    params: List[Param] = []
    match = _EXPONENT.match(head)
    if match and f"{match['name']}^m" in CATALOG:
        head = f"{match['name']}^m"
        params.append(int(match["m"]))
    for token in rest:
        if not token.isdigit():
            raise ArityMismatch(f"{text}: {token!r} is not a natural")
        params.append(int(token))
    if head not in CATALOG:
        raise UnknownCombinator(f"unknown combinator {head!r}")
    return CombinatorSpec(head, tuple(params))


def _check(entry: CatalogEntry, params: Sequence[Param]) -> None:
    kinds = list(entry.kinds)
    variadic = bool(kinds) and kinds[-1] == PIECES_PARAM
    fixed = kinds[:-1] if variadic else kinds
    if len(params) < len(fixed) or (not variadic and len(params) != len(fixed)):
        raise ArityMismatch(f"{entry.name} takes {len(fixed)}{'+' if variadic else ''} parameters, "
                            f"got {len(params)}")
    for i, p in enumerate(params):
        kind = fixed[i] if i < len(fixed) else PIECE_PARAM
        if kind == NAT_PARAM and not (isinstance(p, int) and p >= 0):
            raise ArityMismatch(f"{entry.name}: parameter {i} must be a natural, got {p}")
        if kind == PIECE_PARAM and not isinstance(p, Piece):
            raise ArityMismatch(f"{entry.name}: parameter {i} must be a combinator, got {p!r}")


def build_piece(spec: Union[CombinatorSpec, str]) -> Piece:
    if isinstance(spec, str):
        spec = parse_name(spec)
    entry = CATALOG.get(spec.name)
    if entry is None:
        raise UnknownCombinator(f"unknown combinator {spec.name!r}")
    _check(entry, spec.params)
    piece = entry.builder(*spec.params)
    logger.debug(f"built {spec}: term size {piece.term.size}")
    return piece


def build(spec: Union[CombinatorSpec, str]) -> Term:
    """The closed term of a catalog entry"""
    return build_piece(spec).term


def derivation_of(spec: Union[CombinatorSpec, str]) -> Derivation:
    """The checked derivation of a catalog entry; its conclusion is the entry's formula"""
    return build_piece(spec).derivation


def names() -> List[str]:
    return [e.name for e in _ENTRIES]
