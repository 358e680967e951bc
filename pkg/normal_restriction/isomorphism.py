import logging

from collections import Counter
from typing import List, Optional, Sequence, Tuple, Union

from .group import ISOMORPHISM, FiniteGroup, GroupMap, Subgroup, center, derived_subgroup

logger = logging.getLogger(__name__)

Groupish = Union[FiniteGroup, Subgroup]


def _standalone(X: Groupish) -> FiniteGroup:
    return X.as_group if isinstance(X, Subgroup) else X


def invariants(G: FiniteGroup) -> Tuple:
    """Order, element-order profile, abelianization order and center order"""

    def compute():
        profile = tuple(sorted(Counter(G.element_orders).items()))
        abelianization = G.order // derived_subgroup(G).order
        return (G.order, profile, abelianization, center(G).order)

    return G.cached("invariants", compute)


def generating_sequence(G: FiniteGroup) -> List[int]:
    """Greedy generating sequence taking elements of largest order first"""

    return list(Subgroup(G, G.whole.members).gens)


def _extend_map(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int],
                images: Sequence[int]) -> Optional[List[int]]:
    """Define x*g -> f(x)*h over <gens>; None on a clash or a collision"""

    g_table, h_table = G.table, H.table
    f = [-1] * G.order
    f[0] = 0
    used = {0}
    frontier = [0]
    for x in frontier:
        for g, h in zip(gens, images):
            y = g_table[x][g]
            t = h_table[f[x]][h]
            if f[y] < 0:
                if t in used:
                    return None
                f[y] = t
                used.add(t)
                frontier.append(y)
            elif f[y] != t:
                return None
    return f


def are_isomorphic(G: Groupish, H: Groupish) -> Optional[GroupMap]:
    """Isomorphism witness from G to H, or None when none exists"""

    G, H = _standalone(G), _standalone(H)
    if G.order != H.order:
        return None
    if invariants(G) != invariants(H):
        logger.debug(f"{G.name} vs {H.name}: invariants differ")
        return None

    gens = generating_sequence(G)
    g_orders, h_orders = G.element_orders, H.element_orders
    candidates = [[y for y in range(H.order) if h_orders[y] == g_orders[g]] for g in gens]

    def search(images: List[int]) -> Optional[List[int]]:
        k = len(images)
        if k == len(gens):
            return _extend_map(G, H, gens, images)
        for y in candidates[k]:
            trial = images + [y]
            f = _extend_map(G, H, gens[:k + 1], trial)
            if f is None:
                continue
            if k + 1 == len(gens):
                return f
            found = search(trial)
            if found is not None:
                return found
        return None

    f = search([])
    if f is None or -1 in f:
        return None

    images = [H.elements[f[G.ordinal(g)]] for g in G.generators]
    return GroupMap(G, H, images, ISOMORPHISM)
