import logging

from dataclasses import dataclass, field
from functools import cached_property
from threading import RLock
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import (DegreeCapExceeded, DegreeMismatch, ForeignElement, ForeignSubgroup,
                     IndexCapExceeded, NotNormal, OrderCapExceeded)
from .perm import Permutation

DEFAULT_ORDER_CAP = 10_000
DEGREE_CAP = 64
QUOTIENT_INDEX_CAP = 1000

HOMOMORPHISM = "homomorphism"
ISOMORPHISM = "isomorphism"
QUOTIENT_PROJECTION = "quotient-projection"

logger = logging.getLogger(__name__)


class FiniteGroup:
    """Fully enumerated permutation group.

    Element 0 is always the identity. Derived data (Cayley table, inverses,
    element orders, the subgroup lattice) is built at most once, on first
    use, under the group's lock; afterwards the group is read-only.
    """

    def __init__(self, degree: int, generators: List[Permutation],
                 elements: List[Permutation], name: Optional[str] = None) -> None:
        self.degree = degree
        self.generators = generators
        self.elements = elements
        self.index: Dict[Tuple[int, ...], int] = {
            p.images: i for i, p in enumerate(elements)}
        self.name = name or f"group(order={len(elements)}, degree={degree})"
        self.spec = None  # set by corpusdata.build

        self._lock = RLock()
        self._cache: Dict[Any, Any] = {}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order}, degree={self.degree})"

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def cached(self, key: Any, factory: Callable[[], Any]) -> Any:
        """At-most-once construction of derived data; first caller wins"""

        with self._lock:
            if key not in self._cache:
                self._cache[key] = factory()
            return self._cache[key]

    def has_cached(self, key: Any) -> bool:
        with self._lock:
            return key in self._cache

    def ordinal(self, g: Permutation) -> int:
        try:
            return self.index[g.images]
        except KeyError:
            raise ForeignElement(f"{g} is not an element of {self.name}") from None

    def __contains__(self, g: Permutation) -> bool:
        return g.images in self.index

    @property
    def table(self) -> List[List[int]]:
        """Cayley table on ordinals: table[a][b] is the ordinal of a*b"""

        return self.cached("table", self._build_table)

    def _build_table(self) -> List[List[int]]:
        index = self.index
        images = [p.images for p in self.elements]
        logger.debug(f"building Cayley table of {self.name} ({self.order}^2 entries)")
        return [[index[tuple(b[x] for x in a)] for b in images] for a in images]

    @property
    def inverses(self) -> List[int]:
        return self.cached("inverses", lambda: [self.ordinal(p.inverse()) for p in self.elements])

    @property
    def element_orders(self) -> List[int]:
        return self.cached("element_orders", lambda: [p.order() for p in self.elements])

    @property
    def generator_ordinals(self) -> Tuple[int, ...]:
        return tuple(self.ordinal(g) for g in self.generators)

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)),
                        tuple(g for g in self.generator_ordinals if g != 0))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([0]), ())

    def verify_closure(self) -> bool:
        """Full scan: identity, products and inverses stay inside the element list"""

        n = self.order
        if not self.elements[0].is_identity():
            return False
        table = self.table
        inv = self.inverses
        return all(0 <= table[a][b] < n for a in range(n) for b in range(n)) and \
            all(table[a][inv[a]] == 0 for a in range(n))


Ambient = Union[FiniteGroup, "Subgroup"]


@dataclass(frozen=True)
class Subgroup:
    """Set of element ordinals inside a parent FiniteGroup"""

    parent: FiniteGroup = field(repr=False)
    members: FrozenSet[int]
    known_gens: Tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if 0 not in self.members:
            raise ValueError("a subgroup must contain the identity")
        if self.parent.order % len(self.members) != 0:
            raise ValueError(
                f"order {len(self.members)} does not divide {self.parent.order} (Lagrange)")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def sorted_members(self) -> Tuple[int, ...]:
        return tuple(sorted(self.members))

    @cached_property
    def key(self) -> Tuple[int, Tuple[int, ...]]:
        """Canonical sort key: order first, then the sorted member ordinals"""

        return (self.order, self.sorted_members)

    @cached_property
    def gens(self) -> Tuple[int, ...]:
        """Short generating sequence, preferring elements of large order"""

        if self.known_gens:
            return self.known_gens

        orders = self.parent.element_orders
        gens: List[int] = []
        span = {0}
        for x in sorted(self.members, key=lambda y: (-orders[y], y)):
            if x not in span:
                gens.append(x)
                span = generate(self.parent, gens).members
                if len(span) == self.order:
                    break
        return tuple(gens)

    def elements(self) -> List[Permutation]:
        return [self.parent.elements[x] for x in self.sorted_members]

    def generators(self) -> List[Permutation]:
        return [self.parent.elements[x] for x in self.gens]

    def describe(self) -> Dict[str, Any]:
        """Replayable descriptor: order and generators in cycle notation"""

        return {"order": self.order, "generators": [str(g) for g in self.generators()]}

    def is_normal_in(self, ambient: Ambient) -> bool:
        a = as_subgroup(ambient)
        table, inv = self.parent.table, self.parent.inverses
        return all(table[table[inv[g]][h]][g] in self.members for g in a.gens for h in self.gens)

    def is_abelian(self) -> bool:
        table = self.parent.table
        return all(table[a][b] == table[b][a] for a in self.gens for b in self.gens)

    @cached_property
    def as_group(self) -> FiniteGroup:
        """Re-rooted copy: this subgroup as a standalone FiniteGroup on the same points"""

        return group_from_generators(self.generators(), self.parent.degree,
                                     order_cap=max(self.order, 1),
                                     name=f"{self.parent.name}[{self.order}]")

    def verify_closure(self) -> bool:
        table, inv = self.parent.table, self.parent.inverses
        return all(table[a][b] in self.members for a in self.members for b in self.members) and \
            all(inv[a] in self.members for a in self.members)


def as_subgroup(x: Ambient) -> Subgroup:
    return x.whole if isinstance(x, FiniteGroup) else x


def _same_parent(a: Subgroup, b: Subgroup) -> None:
    if a.parent is not b.parent:
        raise ForeignSubgroup(f"subgroups of {a.parent.name} and {b.parent.name} do not mix")


def group_from_generators(gens: Sequence[Permutation], degree: int,
                          order_cap: int = DEFAULT_ORDER_CAP,
                          name: Optional[str] = None) -> FiniteGroup:
    """Closure of `gens`, enumerated breadth-first by right multiplication
    with the generators; each new layer is sorted by image sequence."""

    if order_cap < 1:
        raise ValueError("order_cap must be at least 1")
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")

    identity = Permutation.identity(degree)
    elements = [identity]
    seen = {identity.images}
    layer = [identity]

    while layer:
        fresh = []
        for x in layer:
            for g in gens:
                y = x * g
                if y.images not in seen:
                    seen.add(y.images)
                    fresh.append(y)
                    if len(seen) > order_cap:
                        raise OrderCapExceeded(
                            f"closure of {len(gens)} generators exceeds order cap {order_cap}")
        fresh.sort()
        elements.extend(fresh)
        layer = fresh

    return FiniteGroup(degree, list(gens), elements, name)


def generate(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Subgroup of G generated by the given element ordinals"""

    gens = tuple(g for g in gens if g != 0)
    table = G.table
    members = {0}
    frontier = [0]
    for x in frontier:
        row = table[x]
        for g in gens:
            y = row[g]
            if y not in members:
                members.add(y)
                frontier.append(y)
    return Subgroup(G, frozenset(members), gens)


def join(a: Subgroup, b: Subgroup) -> Subgroup:
    _same_parent(a, b)
    return generate(a.parent, a.gens + b.gens)


def intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    _same_parent(a, b)
    return Subgroup(a.parent, a.members & b.members)


def subgroup_from_perms(G: FiniteGroup, perms: Iterable[Permutation]) -> Subgroup:
    return generate(G, [G.ordinal(p) for p in perms])


def _element_ordinal(G: FiniteGroup, g: Union[int, Permutation]) -> int:
    if isinstance(g, Permutation):
        return G.ordinal(g)
    if not 0 <= g < G.order:
        raise ForeignElement(f"ordinal {g} outside {G.name}")
    return g


def conjugate(g: Union[int, Permutation], H: Subgroup) -> Subgroup:
    """g^-1 H g as a subgroup of the same parent"""

    G = H.parent
    x = _element_ordinal(G, g)
    table, inv = G.table, G.inverses
    xi = inv[x]
    members = frozenset(table[table[xi][h]][x] for h in H.members)
    return Subgroup(G, members, tuple(table[table[xi][h]][x] for h in H.gens))


def centralizer(G: Ambient, S: Subgroup) -> Subgroup:
    """Elements of G commuting with every element of S"""

    a = as_subgroup(G)
    _same_parent(a, S)
    table = a.parent.table
    return Subgroup(a.parent, frozenset(
        g for g in a.members if all(table[g][s] == table[s][g] for s in S.gens)))


def normalizer(G: Ambient, H: Subgroup) -> Subgroup:
    a = as_subgroup(G)
    _same_parent(a, H)
    table, inv = a.parent.table, a.parent.inverses
    return Subgroup(a.parent, frozenset(
        g for g in a.members if all(table[table[inv[g]][h]][g] in H.members for h in H.gens)))


def center(G: Ambient) -> Subgroup:
    a = as_subgroup(G)
    return centralizer(a, a)


def normal_closure_in(A: Ambient, S: Subgroup) -> Subgroup:
    """Smallest subgroup containing S that is normalized by A"""

    a = as_subgroup(A)
    _same_parent(a, S)
    G = a.parent
    table, inv = G.table, G.inverses

    gens = list(S.gens)
    current = generate(G, gens)
    changed = True
    while changed:
        changed = False
        for g in a.gens:
            for h in list(gens):
                c = table[table[inv[g]][h]][g]
                if c not in current.members:
                    gens.append(c)
                    current = generate(G, gens)
                    changed = True
    return current


def commutator(G: FiniteGroup, x: int, y: int) -> int:
    """[x, y] = x^-1 y^-1 x y"""

    table, inv = G.table, G.inverses
    return table[table[table[inv[x]][inv[y]]][x]][y]


def commutator_subgroup(a: Subgroup, b: Subgroup) -> Subgroup:
    """[A, B]: normal closure in <A, B> of the commutators of the generators"""

    _same_parent(a, b)
    G = a.parent
    seeds = generate(G, [commutator(G, x, y) for x in a.gens for y in b.gens])
    return normal_closure_in(join(a, b), seeds)


def derived_subgroup(X: Ambient) -> Subgroup:
    a = as_subgroup(X)
    return commutator_subgroup(a, a)


@dataclass
class GroupMap:
    """Homomorphism determined by the images of the source generators"""

    source: FiniteGroup
    target: FiniteGroup
    image_of_generator: List[Permutation]
    kind: str = HOMOMORPHISM

    @cached_property
    def mapping(self) -> List[int]:
        """mapping[x] is the target ordinal of source element x"""

        src, tgt = self.source, self.target
        pairs = list(zip(src.generator_ordinals,
                         (tgt.ordinal(h) for h in self.image_of_generator)))
        s_table, t_table = src.table, tgt.table

        image = [-1] * src.order
        image[0] = 0
        frontier = [0]
        for x in frontier:
            for g, h in pairs:
                y = s_table[x][g]
                if image[y] < 0:
                    image[y] = t_table[image[x]][h]
                    frontier.append(y)
        return image

    def __call__(self, g: Permutation) -> Permutation:
        return self.target.elements[self.mapping[self.source.ordinal(g)]]

    def is_homomorphism(self) -> bool:
        """Exhaustive multiplicativity check over all pairs of source elements"""

        image = self.mapping
        s_table, t_table = self.source.table, self.target.table
        n = self.source.order
        return all(image[s_table[a][b]] == t_table[image[a]][image[b]]
                   for a in range(n) for b in range(n))

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and \
            len(set(self.mapping)) == self.target.order

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, frozenset(x for x, y in enumerate(self.mapping) if y == 0))

    def image(self, S: Subgroup) -> Subgroup:
        if S.parent is not self.source:
            raise ForeignSubgroup(f"subgroup does not live in {self.source.name}")
        image = self.mapping
        return Subgroup(self.target, frozenset(image[x] for x in S.members),
                        tuple(image[x] for x in S.gens if image[x] != 0))


def cosets(N: Subgroup) -> List[FrozenSet[int]]:
    """Cosets Ng in order of their smallest ordinal"""

    G = N.parent
    table = G.table
    assigned = set()
    result = []
    for g in range(G.order):
        if g not in assigned:
            coset = frozenset(table[n][g] for n in N.members)
            assigned |= coset
            result.append(coset)
    return result


def quotient(G: FiniteGroup, N: Subgroup) -> Tuple[FiniteGroup, GroupMap]:
    """G/N as the permutation group induced on the cosets of N, plus the projection"""

    if N.parent is not G:
        raise ForeignSubgroup(f"subgroup does not live in {G.name}")
    if not N.is_normal_in(G):
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")

    index = G.order // N.order
    if index > QUOTIENT_INDEX_CAP:
        raise IndexCapExceeded(f"index {index} exceeds {QUOTIENT_INDEX_CAP}")

    def build():
        table = G.table
        blocks = cosets(N)
        block_of = {}
        for i, block in enumerate(blocks):
            for x in block:
                block_of[x] = i
        reps = [min(block) for block in blocks]

        images = [Permutation(tuple(block_of[table[r][g]] for r in reps))
                  for g in G.generator_ordinals]
        Q = group_from_generators(images, index, order_cap=max(index, 1),
                                  name=f"{G.name}/{N.order}")
        return Q, GroupMap(G, Q, images, QUOTIENT_PROJECTION)

    return G.cached(("quotient", N.members), build)


def direct_product(G: FiniteGroup, H: FiniteGroup, order_cap: int = DEFAULT_ORDER_CAP,
                   degree_cap: int = DEGREE_CAP) -> FiniteGroup:
    """G x H acting on disjoint point sets"""

    degree = G.degree + H.degree
    if degree > degree_cap:
        raise DegreeCapExceeded(f"combined degree {degree} exceeds {degree_cap}")
    if G.order * H.order > order_cap:
        raise OrderCapExceeded(f"product order {G.order * H.order} exceeds order cap {order_cap}")

    gens = [g.shift(0, degree) for g in G.generators] + \
        [h.shift(G.degree, degree) for h in H.generators]
    return group_from_generators(gens, degree, order_cap=order_cap, name=f"{G.name}x{H.name}")
