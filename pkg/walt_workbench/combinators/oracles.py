"""
Golden values of the dynamics of the combinators.

Every oracle builds the right-hand side a combinator applied to its inputs
must normalize to, symbolically and without reducing anything. The values
of the parameter functions come from their ``semantics``.
"""

from typing import Any, Callable, Dict, List, Mapping, Sequence

from walt_workbench.combinators.configurations import (
    cell_name, configuration_term, make_configuration, preconfiguration_term, step_names,
    tail_names,
)
from walt_workbench.combinators.encoders import (
    encode_string, encode_word, list_term, tuple_term,
)
from walt_workbench.combinators.piece import Piece
from walt_workbench.core.errors import HypothesisViolated, UnknownCombinator
from walt_workbench.core.logging_config import get_logger
from walt_workbench.syntax.terms import Term, apps, lams, var

logger = get_logger("oracles", "combinators")

Oracle = Callable[..., Term]

# normal forms of the closed values C2PC leaves in the head pair, [F] = \v. F v
_FIELD_NORMAL_FORMS: Dict[str, Term] = {
    "I": lams("v", var("v")),
    "Ws1": lams("v s0 s1 y", apps(var("s1"), apps(var("v"), var("s0"), var("s1"), var("y")))),
}


def _value(piece: Piece, *args: int) -> int:
    if piece.semantics is None:
        raise HypothesisViolated(f"{piece.name} has no known value on words")
    return piece.semantics(*args)


def _nonempty(lists: Sequence[Sequence[int]]) -> None:
    if not lists or any(len(items) == 0 for items in lists):
        raise HypothesisViolated("every list needs a head")
    if len({len(items) for items in lists}) > 1:
        raise HypothesisViolated("lists of one configuration share their length")


def mkc_oracle(digits: Sequence[int]) -> Term:
    """MkC on a word with digits (least significant first), possibly with 0s on top"""
    if any(d not in (0, 1) for d in digits):
        raise HypothesisViolated(f"digits must be 0 or 1, got {list(digits)}")
    return encode_word(sum(d << i for i, d in enumerate(digits)))


def pred_oracle(n: int) -> Term:
    return encode_word(n // 2)


def branch_oracle(n: int, u: int, v: int) -> Term:
    return encode_word(u if n == 0 else v)


def s2l_oracle(item: Term, length: int) -> Term:
    return list_term([item] * length)


def projection_oracle(items: Sequence[Term], i: int) -> Term:
    if not 0 <= i < len(items):
        raise HypothesisViolated(f"projection {i} of a {len(items)}-tuple")
    return items[i]


def diagonal_oracle(k: int, a: int) -> Term:
    return tuple_term([encode_word(a)] * k)


def embedding_oracle(piece: Piece, args: Sequence[Term]) -> Term:
    """An embedding applied to arguments behaves as the embedded piece applied to them"""
    return apps(piece.term, *args)


def c2pc_oracle(r: int, lists: Sequence[Sequence[int]], n: int, s: int, m: int, g: Piece) -> Term:
    """``\\d0 .. w0 .. . <<r, <a1, [G a2, .., G ar]>, <n11, [n12, ..]>, ..>>`` with every step d_i"""
    _nonempty(lists)
    if g.name not in _FIELD_NORMAL_FORMS:
        raise HypothesisViolated(f"the normal form of [{g.name}] is only known for "
                                 f"{sorted(_FIELD_NORMAL_FORMS)}")
    k = len(lists)
    steps, tails = step_names(k), tail_names(k)
    shown = [list(lists[0][:1]) + [_value(g, a) for a in lists[0][1:]]] + [list(x) for x in lists[1:]]
    fields = [_FIELD_NORMAL_FORMS[g.name]] + [_FIELD_NORMAL_FORMS["I"]] * (k - 1)
    body = preconfiguration_term(r, shown, fields, lambda i, j: steps[i], tails)
    return lams(steps + tails, body)


def _updated(fp: Piece, r: int, lists: Sequence[Sequence[int]]) -> int:
    return _value(fp, *(items[0] for items in lists), r)


def pc2c_oracle(r: int, lists: Sequence[Sequence[int]], n: int, s: int, m: int, fp: Piece) -> Term:
    """PC2C on ``make_preconfiguration``: the popped heads feed F', the tails stay with their steps"""
    _nonempty(lists)
    k = len(lists)
    rest = [list(items[1:]) for items in lists]
    return configuration_term(_updated(fp, r, lists), rest, lambda i, j: cell_name(i, j + 1),
                              tail_names(k))


def c2c_oracle(r: int, lists: Sequence[Sequence[int]], n: int, s: int, m: int, f: Piece,
               fp: Piece) -> Term:
    _nonempty(lists)
    rest = [[_value(f, a) for a in lists[0][1:]]] + [list(items[1:]) for items in lists[1:]]
    return make_configuration(_updated(fp, r, lists), rest, n, s, m).term


def l2c_oracle(lists: Sequence[Sequence[int]], n: int, s: int, m: int) -> Term:
    return make_configuration(0, lists, n, s, m).term


def w2c_oracle(normals: Sequence[int], safes: Sequence[int], w: int, m: int) -> Term:
    length = w.bit_length() + 1
    lists = [[0] * length] + [[v] * length for v in normals] + [[v] * length for v in safes]
    return make_configuration(0, lists, len(normals), len(safes), m).term


def c2fc_oracle(r: int, lists: Sequence[Sequence[int]], n: int, s: int, m: int) -> Term:
    return make_configuration(r, lists, n, s, m, final=True).term


def fc2w_oracle(r: int, lists: Sequence[Sequence[int]] = (), n: int = 0, s: int = 0,
                m: int = 1) -> Term:
    return encode_word(r)


def iterator_oracle(g0: Piece, g1: Piece, g2: Piece, x: int, normals: Sequence[int],
                    safes: Sequence[int]) -> Term:
    """Digits of x from the most significant: ``r = G_nu(x >> (i+1), n.., s.., r)`` from ``G2(0, .., 0)``"""
    r = _value(g2, 0, *normals, *safes, 0)
    for i in reversed(range(x.bit_length())):
        g = g1 if (x >> i) & 1 else g0
        r = _value(g, x >> (i + 1), *normals, *safes, r)
    return encode_word(r)


def unfolding(g0: Piece, g1: Piece, a: int, digits: Sequence[int], normals: Sequence[int],
              safes: Sequence[int], k: int, i: int) -> List[Any]:
    """The configuration ``C2C[Ws nu_i, G nu_i] (.. (C2C[Ws nu_top, G nu_top] <<a, [0]^k, ..>>))`` reaches.

    ``digits`` lists nu_0 .. nu_top, least significant first. Returns the
    result word and the lists, each ``k - (top - i) - 1`` long.
    """
    top = len(digits) - 1
    if not (0 <= i <= top and k >= top + 1):
        raise HypothesisViolated(f"need 0 <= i <= {top} and k >= {top + 1}, got i={i} k={k}")
    r = a
    for j in range(top, i - 1, -1):
        prefix = sum(digits[q] << (q - j - 1) for q in range(j + 1, top + 1))
        r = _value(g1 if digits[j] else g0, prefix, *normals, *safes, r)
    length = k - (top - i) - 1
    head = sum(digits[q] << (q - i) for q in range(i, top + 1))
    lists = [[head] * length] + [[v] * length for v in normals] + [[v] * length for v in safes]
    return [r, lists]


def unfolding_oracle(g0: Piece, g1: Piece, a: int, digits: Sequence[int], normals: Sequence[int],
                     safes: Sequence[int], k: int, i: int, m: int) -> Term:
    r, lists = unfolding(g0, g1, a, digits, normals, safes, k, i)
    return make_configuration(r, lists, len(normals), len(safes), m).term


def composition_oracle(f: Piece, gs: Sequence[Piece], hs: Sequence[Piece], normals: Sequence[int],
                       safes: Sequence[Sequence[int]]) -> Term:
    """``F (G1 n..) .. (H1 n.. s1..) ..``; ``safes[j]`` are the safe arguments of H_j"""
    if len(safes) != len(hs):
        raise HypothesisViolated(f"{len(hs)} safe functions, {len(safes)} argument groups")
    inner = [_value(g, *normals) for g in gs]
    inner += [_value(h, *normals, *group) for h, group in zip(hs, safes)]
    return encode_word(_value(f, *inner))


ORACLES: Mapping[str, Oracle] = {
    "Ss": lambda n: encode_string(n + 1),
    "Ws0": lambda n: encode_word(2 * n),
    "Ws1": lambda n: encode_word(2 * n + 1),
    "P": pred_oracle,
    "pred-on-words": pred_oracle,
    "B": branch_oracle,
    "MkC": mkc_oracle,
    "W2S": lambda n: encode_string(n.bit_length()),
    "S2L": s2l_oracle,
    "proj": projection_oracle,
    "Coerce^m": lambda m, n: encode_word(n),
    "DiagN": diagonal_oracle,
    "DiagMN": lambda m, k, a: diagonal_oracle(k, a),
    "EmbB": embedding_oracle,
    "EmbL": embedding_oracle,
    "EmbE": embedding_oracle,
    "C2PC": c2pc_oracle,
    "PC2C": pc2c_oracle,
    "C2C": c2c_oracle,
    "L2C": l2c_oracle,
    "W2C": w2c_oracle,
    "C2FC": c2fc_oracle,
    "FC2W": fc2w_oracle,
    "It": iterator_oracle,
    "It-unfold": unfolding_oracle,
    "Comp": composition_oracle,
}


def run_oracle(name: str, *args: Any, **kwargs: Any) -> Term:
    """The expected normal form of the dynamics ``name`` on the given inputs"""
    oracle = ORACLES.get(name)
    if oracle is None:
        raise UnknownCombinator(f"no dynamics known for {name!r}")
    if any(isinstance(a, int) and a < 0 for a in [*args, *kwargs.values()]):
        raise HypothesisViolated(f"{name}: words encode naturals")
    return oracle(*args, **kwargs)
