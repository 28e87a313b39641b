"""
Contexts of a judgment ``G ; D ; E |- M : A``.

``Context`` is an immutable finite map from variables to formulae (used for
G, D and every Theta). ``PDContext`` is the set E of partially discharged
pairs (Theta; Phi), keyed by Phi: ``None`` for the pair with empty Phi,
otherwise the single polynomial assignment.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

from walt_workbench.core.errors import MergeViolation
from walt_workbench.formulas.types import Formula


@dataclass(frozen=True)
class TypeAssignment:
    var: str
    ty: Formula

    def __str__(self) -> str:
        return f"{self.var}:{self.ty}"


class Context(Mapping[str, Formula]):
    __slots__ = ("_items",)

    def __init__(self, items: Iterable = ()):
        if isinstance(items, Mapping):
            self._items: Dict[str, Formula] = dict(items)
        else:
            self._items = {}
            for item in items:
                name, ty = (item.var, item.ty) if isinstance(item, TypeAssignment) else item
                if name in self._items:
                    raise MergeViolation(f"variable {name} assigned twice")
                self._items[name] = ty

    def __getitem__(self, name: str) -> Formula:
        return self._items[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mapping):
            return NotImplemented
        return dict(self._items) == dict(other)

    def __hash__(self) -> int:
        return hash(frozenset(self._items.items()))

    def __repr__(self) -> str:
        return f"Context({self})"

    def __str__(self) -> str:
        return "{" + ",".join(f"{x}:{self._items[x]}" for x in sorted(self._items)) + "}"

    @property
    def domain(self) -> FrozenSet[str]:
        return frozenset(self._items)

    def assignments(self) -> List[TypeAssignment]:
        return [TypeAssignment(x, self._items[x]) for x in sorted(self._items)]

    def extend(self, other: Mapping[str, Formula]) -> "Context":
        """Disjoint union; overlapping names are a violation"""
        clash = self.domain & frozenset(other)
        if clash:
            raise MergeViolation(f"variables {sorted(clash)} assigned on both sides")
        merged = dict(self._items)
        merged.update(other)
        return Context(merged)

    def with_(self, name: str, ty: Formula) -> "Context":
        return self.extend({name: ty})

    def without(self, *names: str) -> "Context":
        return Context({x: t for x, t in self._items.items() if x not in names})

    def restrict(self, names: Iterable[str]) -> "Context":
        keep = set(names)
        return Context({x: t for x, t in self._items.items() if x in keep})

    def map_types(self, fn) -> "Context":
        return Context({x: fn(t) for x, t in self._items.items()})

    def contains(self, other: Mapping[str, Formula]) -> bool:
        """Literal inclusion: same variables with alpha-equal formulae"""
        return all(x in self._items and self._items[x] == t for x, t in other.items())


EMPTY = Context()

Phi = Optional[TypeAssignment]
Pair = Tuple[Context, Phi]


class PDContext:
    """The partially discharged context E; pairs (Theta; {}) are dropped"""

    __slots__ = ("_pairs",)

    def __init__(self, pairs: Iterable[Pair] = ()):
        table: Dict[Phi, Context] = {}
        for theta, phi in pairs:
            theta = theta if isinstance(theta, Context) else Context(theta)
            if not theta and phi is None:
                continue
            if phi in table:
                raise MergeViolation(f"two pairs share the polynomial assignment {phi}")
            table[phi] = theta
        self._pairs = table
        self._check()

    def _check(self):
        seen: Dict[str, str] = {}
        for phi, theta in self._pairs.items():
            names = list(theta)
            if phi is not None:
                names.append(phi.var)
            for x in names:
                if x in seen:
                    raise MergeViolation(f"variable {x} occurs in two partially discharged pairs")
                seen[x] = x

    # ----- access -----

    @property
    def empty_theta(self) -> Context:
        """Theta of the pair with empty Phi"""
        return self._pairs.get(None, EMPTY)

    def phi_pairs(self) -> List[Tuple[Context, TypeAssignment]]:
        return [(theta, phi) for phi, theta in self._pairs.items() if phi is not None]

    def pairs(self) -> List[Pair]:
        """Canonical order: empty-Phi pair first, then by Phi variable"""
        out: List[Pair] = []
        if None in self._pairs:
            out.append((self._pairs[None], None))
        for phi in sorted((p for p in self._pairs if p is not None), key=lambda p: p.var):
            out.append((self._pairs[phi], phi))
        return out

    def theta_of(self, phi: Phi) -> Optional[Context]:
        return self._pairs.get(phi)

    def pair_for_var(self, name: str) -> Optional[Pair]:
        for phi, theta in self._pairs.items():
            if phi is not None and phi.var == name:
                return theta, phi
        return None

    @property
    def phi_vars(self) -> FrozenSet[str]:
        return frozenset(phi.var for phi in self._pairs if phi is not None)

    @property
    def domain(self) -> FrozenSet[str]:
        names = set()
        for phi, theta in self._pairs.items():
            names |= theta.domain
            if phi is not None:
                names.add(phi.var)
        return frozenset(names)

    def assignments(self) -> Dict[str, Formula]:
        out: Dict[str, Formula] = {}
        for phi, theta in self._pairs.items():
            out.update(theta)
            if phi is not None:
                out[phi.var] = phi.ty
        return out

    def __len__(self) -> int:
        return len(self._pairs)

    def __bool__(self) -> bool:
        return bool(self._pairs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PDContext):
            return NotImplemented
        return self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(frozenset(self._pairs.items()))

    def __str__(self) -> str:
        parts = []
        for theta, phi in self.pairs():
            ph = "{}" if phi is None else "{" + str(phi) + "}"
            parts.append(f"(Th{theta};Ph{ph})")
        return "{" + ",".join(parts) + "}"

    __repr__ = __str__

    # ----- construction -----

    def without_pair(self, phi: Phi) -> "PDContext":
        return PDContext((t, p) for p, t in self._pairs.items() if p != phi)

    def without_theta_var(self, name: str) -> "PDContext":
        return PDContext((t.without(name), p) for p, t in self._pairs.items())

    def map_types(self, fn) -> "PDContext":
        return PDContext(
            (t.map_types(fn), None if p is None else TypeAssignment(p.var, fn(p.ty)))
            for p, t in self._pairs.items())


EMPTY_E = PDContext()


def merge_contexts(e1: PDContext, e2: PDContext) -> PDContext:
    """``e1 ⊔ e2``: pairs with the same Phi get their Thetas united"""
    table: Dict[Phi, Context] = {p: t for t, p in e1.pairs()}
    for theta, phi in e2.pairs():
        if phi is not None:
            for other in table:
                if other is not None and other.var == phi.var and other.ty != phi.ty:
                    raise MergeViolation(
                        f"polynomial variable {phi.var} carries {other.ty} and {phi.ty}")
        if phi in table:
            table[phi] = table[phi].extend(theta)
        else:
            table[phi] = theta
    return PDContext((t, p) for p, t in table.items())


def merge_all(contexts: Iterable[PDContext]) -> PDContext:
    out = EMPTY_E
    for e in contexts:
        out = merge_contexts(out, e)
    return out
