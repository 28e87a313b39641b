"""
Reference derivations.

The first three are elaborated from annotated terms. The last three are
built node by node because each one uses a relaxed rule on purpose: they
pass the checker only with the matching ``Relaxation``.
"""

from walt_workbench.formulas.parser import parse_formula
from walt_workbench.formulas.types import TyVar
from walt_workbench.judgments import derivation as rules
from walt_workbench.judgments.checker import Relaxation
from walt_workbench.judgments.derivation import Derivation
from walt_workbench.judgments.elaborate import elaborate

NAT = parse_formula("forall a. !(a -o a) -o $(a -o a)")
ABBREVIATIONS = {"N": NAT}

a, b = TyVar("a"), TyVar("b")


def wy_identity() -> Derivation:
    """``w y (\\x.x)`` at ``c``, with ``w`` linear and ``y`` polynomial; depth 2"""
    return elaborate("w ![y] $[![\\(x:b). x]]",
                     gamma={"w": parse_formula("!a -o $!(b -o b) -o c")},
                     phi={"y": a})


def shared_argument() -> Derivation:
    """``(\\x.y x x)(w z)``: both occurrences of ``x`` share one pair; no redex"""
    return elaborate("(\\(x:!a). y ![x] ![x]) ![w z]",
                     gamma={"y": parse_formula("!a -o !a -o a")},
                     theta={"w": parse_formula("a -o a")},
                     phi={"z": a})


def church_application() -> Derivation:
    """``(\\x.x)(\\f y.f (f y))`` at N; the two occurrences of ``f`` are contracted"""
    return elaborate("(\\(x:N). x) (/\\a. \\(f:!(a -o a)). $[\\(y:a). f (f y)])",
                     abbreviations=ABBREVIATIONS)


def eager_argument_counterexample() -> Derivation:
    """An eager application whose argument depends on a linear assumption.

    ``(\\x. M (x I)) (\\z. w)`` with ``M = \\u.u`` at ``$a =o $a``.
    """
    arrow = parse_formula("a -o a")
    x_ty = parse_formula("(a -o a) -o $a")
    m = rules.eager_intro(rules.par_box(rules.axiom("u", a), to_theta=["u"]), "u")
    identity = rules.lolli_intro(rules.axiom("i", a), "i")
    x_identity = rules.lolli_elim(rules.axiom("x", x_ty), identity)
    left = rules.lolli_intro(rules.eager_elim(m, x_identity), "x")
    constant = rules.par_box(rules.axiom("w", a), to_phi=["w"], gamma={"z": arrow}, weakened=["z"])
    right = rules.lolli_intro(constant, "z")
    return rules.lolli_elim(left, right)


EAGER_ARGUMENT_RELAXATION = Relaxation.EAGER_ELIM_ANY_GAMMA


def weak_occurrence_counterexample() -> Derivation:
    """A !-box whose polynomial assumption does not occur while its Theta is non-empty"""
    gamma_ty = TyVar("g")
    body = rules.axiom("x", a, gamma={"y": b, "w": gamma_ty}, weakened=["y", "w"])
    return rules.bang_box(rules.lolli_intro(body, "w"), to_theta=["x"], to_phi="y")


WEAK_OCCURRENCE_RELAXATION = Relaxation.BANG_WEAK_OCCURRENCE


def bang_function_counterexample() -> Derivation:
    """``(\\y. y x)(\\i. i)`` where the function keeps ``x`` in its elementary pair"""
    arrow = parse_formula("a -o a")
    applied = rules.lolli_elim(rules.axiom("y", arrow), rules.axiom("x", a))
    boxed = rules.bang_box(applied, to_theta=["x"], to_phi="y")
    function = rules.bang_lolli_intro(boxed, "y")
    argument = rules.bang_box(rules.lolli_intro(rules.axiom("i", a), "i"))
    return rules.bang_lolli_elim(function, argument)


BANG_FUNCTION_RELAXATION = Relaxation.BANG_ELIM_ANY_CONTEXT
