from dataclasses import dataclass
from math import gcd
from typing import Iterable, List, Optional, Tuple

from sympy import isprime, primefactors

from .errors import ForeignSubgroup, NotPGroup, NotPrime
from .group import (Ambient, FiniteGroup, Subgroup, as_subgroup, center, commutator_subgroup,
                    derived_subgroup, generate)
from .lattice import maximal_subgroups, normal_subgroups, p_part, subgroups_within

DERIVED = "derived"
LOWER_CENTRAL = "lower_central"
CHIEF = "chief"


@dataclass
class SeriesRecord:
    kind: str
    terms: List[Subgroup]
    reached_trivial: bool

    def factor_orders(self) -> List[int]:
        return [a.order // b.order for a, b in zip(self.terms, self.terms[1:])]


def _check_prime(p: int) -> None:
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")


def span(G: FiniteGroup, candidates: Iterable[int]) -> Subgroup:
    """Subgroup generated by `candidates`, keeping only the generators that enlarge it"""

    gens: List[int] = []
    current = G.trivial
    for x in candidates:
        if x not in current.members:
            gens.append(x)
            current = generate(G, gens)
    return current


def _descend(kind: str, X: Ambient, step) -> SeriesRecord:
    terms = [as_subgroup(X)]
    while True:
        nxt = step(terms[-1])
        if nxt.members == terms[-1].members:
            break
        terms.append(nxt)
    return SeriesRecord(kind, terms, terms[-1].order == 1)


def derived_series(X: Ambient) -> SeriesRecord:
    S = as_subgroup(X)
    return S.parent.cached((DERIVED, S.members), lambda: _descend(DERIVED, S, derived_subgroup))


def lower_central_series(X: Ambient) -> SeriesRecord:
    S = as_subgroup(X)
    return S.parent.cached((LOWER_CENTRAL, S.members), lambda: _descend(
        LOWER_CENTRAL, S, lambda term: commutator_subgroup(term, S)))


def is_solvable(X: Ambient) -> Tuple[bool, SeriesRecord]:
    series = derived_series(X)
    return series.reached_trivial, series


def is_nilpotent(X: Ambient) -> bool:
    return lower_central_series(X).reached_trivial


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def all_sylows_normal(X: Ambient) -> bool:
    """Each Sylow subgroup is normal iff the p-elements number exactly |X|_p"""

    S = as_subgroup(X)
    orders = S.parent.element_orders
    return all(
        sum(1 for x in S.members if _is_power_of(orders[x], p)) == p_part(S.order, p)
        for p in primefactors(S.order))


def chief_series(X: Ambient, select: str = "first") -> SeriesRecord:
    """Chief series built bottom-up; at each step one minimal normal
    subgroup of the current quotient is chosen (first or last in lattice order)"""

    if select not in ("first", "last"):
        raise ValueError(f"select must be 'first' or 'last', got {select!r}")

    S = as_subgroup(X)
    normals = normal_subgroups(S)
    current = S.parent.trivial
    ascending = [current]
    while current.members != S.members:
        above = [N for N in normals if current.members < N.members]
        minimal = [N for N in above if not any(M.members < N.members for M in above)]
        current = minimal[0] if select == "first" else minimal[-1]
        ascending.append(current)

    return SeriesRecord(CHIEF, ascending[::-1], True)


def is_supersolvable(X: Ambient, select: str = "first") -> bool:
    """Every chief factor has prime order"""

    S = as_subgroup(X)
    return S.parent.cached(("supersolvable", select, S.members), lambda: all(
        isprime(k) for k in chief_series(S, select).factor_orders()))


def is_p_nilpotent(X: Ambient, p: int) -> Optional[Subgroup]:
    """The normal p-complement, or None.

    When it exists it consists of exactly the p'-elements, so it is unique and
    can be read off the element orders.
    """

    _check_prime(p)
    S = as_subgroup(X)
    G = S.parent

    def compute() -> Optional[Subgroup]:
        orders = G.element_orders
        complement_order = S.order // p_part(S.order, p)
        p_prime = {x for x in S.members if gcd(orders[x], p) == 1}
        if len(p_prime) != complement_order:
            return None
        T = span(G, sorted(p_prime))
        return T if T.members == p_prime else None

    return G.cached(("p-complement", p, S.members), compute)


def is_minimal_non_nilpotent(X: Ambient) -> bool:
    if is_nilpotent(X):
        return False
    return all(is_nilpotent(M) for M in maximal_subgroups(X))


def _largest_normal(X: Ambient, predicate) -> Subgroup:
    normals = [N for N in normal_subgroups(X) if predicate(N)]
    largest = max(normals, key=lambda N: N.order)
    assert all(N.members <= largest.members for N in normals), \
        "largest subgroup does not contain all others"
    return largest


def fitting(X: Ambient) -> Subgroup:
    """Largest nilpotent normal subgroup F(X)"""

    return _largest_normal(X, is_nilpotent)


def solvable_radical(X: Ambient) -> Subgroup:
    """Largest solvable normal subgroup S(X)"""

    return _largest_normal(X, lambda N: is_solvable(N)[0])


def o_upper_p(X: Ambient, p: int) -> Subgroup:
    """O^p(X): generated by the elements of order prime to p"""

    _check_prime(p)
    S = as_subgroup(X)
    orders = S.parent.element_orders
    result = span(S.parent, (x for x in S.sorted_members if gcd(orders[x], p) == 1))
    assert _is_power_of(S.order // result.order, p), "X / O^p(X) is not a p-group"
    return result


def prime_of_p_group(P: Subgroup) -> Optional[int]:
    """The prime p when |P| is a power of p; None for the trivial group"""

    primes = primefactors(P.order)
    if len(primes) > 1:
        raise NotPGroup(f"order {P.order} is not a prime power")
    return primes[0] if primes else None


def thompson_subgroup(P: Ambient) -> Subgroup:
    """J(P): join of the abelian subgroups of P of largest order"""

    S = as_subgroup(P)
    prime_of_p_group(S)

    def compute() -> Subgroup:
        abelian = [A for A in subgroups_within(S) if A.is_abelian()]
        top = max(A.order for A in abelian)
        gens = [g for A in abelian if A.order == top for g in A.gens]
        return span(S.parent, gens)

    return S.parent.cached(("thompson", S.members), compute)


def z_j(P: Ambient) -> Subgroup:
    """Z(J(P))"""

    return center(thompson_subgroup(P))


def normal_complement(X: Ambient, N: Subgroup) -> Optional[Subgroup]:
    """First normal L (lattice order) with NL = X and N meet L = 1"""

    S = as_subgroup(X)
    if N.parent is not S.parent or not N.members <= S.members:
        raise ForeignSubgroup(f"subgroup of order {N.order} is not inside the ambient group")

    for L in normal_subgroups(S):
        if N.order * L.order == S.order and len(N.members & L.members) == 1:
            return L
    return None
