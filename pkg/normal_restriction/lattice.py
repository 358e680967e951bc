import logging

from functools import cached_property
from math import gcd
from threading import RLock
from typing import Dict, FrozenSet, List

from sympy import isprime, multiplicity

from .errors import ForeignSubgroup, LatticeCapExceeded, NotPrime
from .group import (Ambient, FiniteGroup, Subgroup, as_subgroup, conjugate, generate,
                    normal_closure_in)

DEFAULT_LATTICE_CAP = 400
MAX_LATTICE_CAP = 1200

logger = logging.getLogger(__name__)


class SubgroupLattice:
    """All subgroups of a group, sorted by (order, sorted member ordinals)"""

    def __init__(self, parent: FiniteGroup, subgroups: List[Subgroup]) -> None:
        self.parent = parent
        self.subgroups = sorted(subgroups, key=lambda s: s.key)
        self.position: Dict[FrozenSet[int], int] = {
            s.members: i for i, s in enumerate(self.subgroups)}
        self._lock = RLock()

    def __len__(self) -> int:
        return len(self.subgroups)

    def index_of(self, S: Subgroup) -> int:
        if S.parent is not self.parent:
            raise ForeignSubgroup(f"subgroup does not live in {self.parent.name}")
        return self.position[S.members]

    @cached_property
    def conjugacy_classes(self) -> List[List[int]]:
        class_of = self.class_of
        classes: Dict[int, List[int]] = {}
        for i, c in enumerate(class_of):
            classes.setdefault(c, []).append(i)
        return [classes[c] for c in sorted(classes)]

    @cached_property
    def class_of(self) -> List[int]:
        gens = [g for g in self.parent.generator_ordinals if g != 0]
        class_of = [-1] * len(self.subgroups)
        next_id = 0
        for i in range(len(self.subgroups)):
            if class_of[i] >= 0:
                continue
            class_of[i] = next_id
            orbit = [i]
            for j in orbit:
                for g in gens:
                    k = self.position[conjugate(g, self.subgroups[j]).members]
                    if class_of[k] < 0:
                        class_of[k] = next_id
                        orbit.append(k)
            next_id += 1
        return class_of

    def is_normal(self, i: int) -> bool:
        return len(self.conjugacy_classes[self.class_of[i]]) == 1

    def maximal_in(self) -> List[List[int]]:
        """maximal_in[i] lists every j such that subgroup i is maximal in subgroup j"""

        with self._lock:
            result: List[List[int]] = [[] for _ in self.subgroups]
            for j, S in enumerate(self.subgroups):
                for M in maximal_subgroups(S):
                    result[self.position[M.members]].append(j)
            return result

    def check_invariants(self) -> bool:
        """Trivial and whole group present; closed under conjugation and intersection"""

        if self.parent.trivial.members not in self.position or \
                self.parent.whole.members not in self.position:
            return False
        try:
            self.class_of
        except KeyError:
            return False
        members = [s.members for s in self.subgroups]
        return all((a & b) in self.position for a in members for b in members)


def _enumerate(G: FiniteGroup) -> List[Subgroup]:
    """Cyclic seeds, then joins with single elements until nothing new appears"""

    table = G.table
    orders = G.element_orders
    n = G.order

    found: Dict[FrozenSet[int], Subgroup] = {G.trivial.members: G.trivial}
    for x in range(1, n):
        c = generate(G, [x])
        found.setdefault(c.members, c)

    work = list(found.values())
    while work:
        H = work.pop()
        members = H.members
        done = set(members)
        for x in range(n):
            if x in done:
                continue
            J = generate(G, H.gens + (x,))
            if J.members not in found:
                found[J.members] = J
                work.append(J)

            # <H, y> is the same subgroup for y in HxH and for generators of <x>
            for h1 in members:
                hx = table[h1][x]
                done.update(table[hx][h2] for h2 in members)
            y = x
            for k in range(2, orders[x]):
                y = table[y][x]
                if gcd(k, orders[x]) == 1:
                    done.add(y)

    logger.debug(f"lattice of {G.name}: {len(found)} subgroups")
    return list(found.values())


def all_subgroups(G: FiniteGroup, lattice_cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """Complete subgroup lattice of G, built once per group"""

    if lattice_cap > MAX_LATTICE_CAP:
        raise LatticeCapExceeded(f"lattice cap {lattice_cap} above the limit {MAX_LATTICE_CAP}")
    if not G.has_cached("lattice") and G.order > lattice_cap:
        raise LatticeCapExceeded(f"{G.name} has order {G.order} > lattice cap {lattice_cap}")

    return G.cached("lattice", lambda: SubgroupLattice(G, _enumerate(G)))


def subgroups_within(X: Ambient, lattice_cap: int = DEFAULT_LATTICE_CAP) -> List[Subgroup]:
    """Subgroups of X in canonical order.

    Uses the parent lattice when it exists or fits under the cap; otherwise
    X is re-rooted as a standalone group and its subgroups are mapped back.
    """

    S = as_subgroup(X)
    G = S.parent

    if G.has_cached("lattice") or G.order <= lattice_cap:
        lattice = all_subgroups(G, lattice_cap)
        if S.order == G.order:
            return list(lattice.subgroups)
        return G.cached(("within", S.members), lambda: [
            T for T in lattice.subgroups if T.members <= S.members])

    def reroot() -> List[Subgroup]:
        R = S.as_group
        back = [G.ordinal(p) for p in R.elements]
        mapped = [Subgroup(G, frozenset(back[x] for x in T.members),
                           tuple(back[x] for x in T.gens))
                  for T in all_subgroups(R, lattice_cap).subgroups]
        return sorted(mapped, key=lambda T: T.key)

    return G.cached(("within", S.members), reroot)


def maximal_subgroups(X: Ambient) -> List[Subgroup]:
    """Proper subgroups of X maximal under inclusion, in canonical order"""

    S = as_subgroup(X)

    def compute() -> List[Subgroup]:
        proper = [T for T in subgroups_within(S) if T.order < S.order]
        chosen: List[Subgroup] = []
        for T in sorted(proper, key=lambda t: -t.order):
            if not any(T.members <= M.members for M in chosen):
                chosen.append(T)
        return sorted(chosen, key=lambda t: t.key)

    return S.parent.cached(("maximals", S.members), compute)


def n_maximal_subgroups(X: Ambient, n: int) -> List[Subgroup]:
    """Maximal subgroups of (n-1)-maximal subgroups, deduplicated as subgroups of X"""

    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")

    level = maximal_subgroups(X)
    for _ in range(n - 1):
        seen: Dict[FrozenSet[int], Subgroup] = {}
        for M in level:
            for T in maximal_subgroups(M):
                seen.setdefault(T.members, T)
        level = sorted(seen.values(), key=lambda t: t.key)
    return level


def is_maximal(X: Ambient, H: Subgroup) -> bool:
    return any(M.members == H.members for M in maximal_subgroups(X))


def normal_subgroups(X: Ambient) -> List[Subgroup]:
    S = as_subgroup(X)
    return S.parent.cached(("normal", S.members), lambda: [
        T for T in subgroups_within(S) if T.is_normal_in(S)])


def minimal_normal_subgroups(X: Ambient) -> List[Subgroup]:
    nontrivial = [T for T in normal_subgroups(X) if T.order > 1]
    return [T for T in nontrivial
            if not any(U.members < T.members for U in nontrivial)]


def frattini(X: Ambient) -> Subgroup:
    """Intersection of the maximal subgroups; the trivial group for trivial X"""

    S = as_subgroup(X)
    maximals = maximal_subgroups(S)
    if not maximals:
        return S.parent.trivial

    members = maximals[0].members
    for M in maximals[1:]:
        members = members & M.members
    return Subgroup(S.parent, members)


def p_part(n: int, p: int) -> int:
    return p ** multiplicity(p, n)


def sylow(X: Ambient, p: int) -> List[Subgroup]:
    """All Sylow p-subgroups; [trivial] when p does not divide |X|"""

    if not isprime(p):
        raise NotPrime(f"{p} is not prime")

    S = as_subgroup(X)
    size = p_part(S.order, p)
    if size == 1:
        return [S.parent.trivial]
    return [T for T in subgroups_within(S) if T.order == size]


def is_subnormal(X: Ambient, H: Subgroup) -> bool:
    """Normal-closure descent X >= H^X >= H^(H^X) >= ... must stop at H"""

    current = as_subgroup(X)
    if H.parent is not current.parent or not H.members <= current.members:
        raise ForeignSubgroup(f"subgroup of order {H.order} is not inside the ambient group")

    while True:
        closure = normal_closure_in(current, H)
        if closure.members == current.members:
            return current.members == H.members
        current = closure


def export_lattice(lattice: SubgroupLattice) -> List[dict]:
    """One record per subgroup, in lattice order"""

    maximal_in = lattice.maximal_in()
    return [
        {
            "index": i,
            "order": S.order,
            "generators": [str(g) for g in S.generators()],
            "is_normal": lattice.is_normal(i),
            "conjugacy_class": lattice.class_of[i],
            "maximal_in": maximal_in[i],
        }
        for i, S in enumerate(lattice.subgroups)
    ]
