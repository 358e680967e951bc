import logging

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from sympy import isprime

from .errors import (ChainViolation, ForeignSubgroup, MissingSubject, NotNormalInH, NotPGroup,
                     UnknownTheoremId)
from .group import Ambient, Subgroup, as_subgroup, normal_closure_in, normalizer
from .lattice import (frattini, is_subnormal, maximal_subgroups, n_maximal_subgroups,
                      normal_subgroups, subgroups_within)
from .structure import is_nilpotent, is_p_nilpotent, is_supersolvable, prime_of_p_group

GLOBAL_THEOREMS = ("th1", "th2", "cor")
SUBJECT_THEOREMS = ("nc1", "th4", "th5")
THEOREM_IDS = GLOBAL_THEOREMS + SUBJECT_THEOREMS

logger = logging.getLogger(__name__)


@dataclass
class SpecialTripleRecord:
    """(G, H, K) together with K^G and K^G meet H"""

    G: Subgroup
    H: Subgroup
    K: Subgroup
    closure: Subgroup
    meet: Subgroup
    special: bool

    def describe(self) -> Dict[str, Any]:
        return {
            "G": self.G.describe(),
            "H": self.H.describe(),
            "K": self.K.describe(),
            "closure": self.closure.describe(),
            "meet": self.meet.describe(),
            "special": self.special,
        }


@dataclass
class HypothesisVerdict:
    theorem_id: str
    holds: bool
    witnesses: List[Tuple[Dict[str, Any], str]] = field(default_factory=list)


def _inside(inner: Subgroup, outer: Subgroup, what: str) -> None:
    if inner.parent is not outer.parent:
        raise ForeignSubgroup(f"{what} does not live in {outer.parent.name}")
    if not inner.members <= outer.members:
        raise ChainViolation(f"{what} of order {inner.order} is not contained in "
                             f"the subgroup of order {outer.order}")


def normal_closure(G: Ambient, K: Subgroup, verify: bool = False) -> Subgroup:
    """K^G: smallest normal subgroup of G containing K.

    With `verify` the result is checked against every normal subgroup of G
    containing K, which needs the lattice of G.
    """

    a = as_subgroup(G)
    if K.parent is not a.parent or not K.members <= a.members:
        raise ForeignSubgroup(f"subgroup of order {K.order} is not inside the ambient group")

    closure = a.parent.cached(("closure", a.members, K.members), lambda: normal_closure_in(a, K))
    if verify:
        containing = [N for N in normal_subgroups(a) if K.members <= N.members]
        assert all(closure.members <= N.members for N in containing), \
            "normal closure is not the smallest normal subgroup containing K"
    return closure


def is_special_triple(G: Ambient, H: Subgroup, K: Subgroup) -> SpecialTripleRecord:
    a = as_subgroup(G)
    _inside(H, a, "H")
    _inside(K, H, "K")
    if not K.is_normal_in(H):
        raise NotNormalInH(f"subgroup of order {K.order} is not normal in H of order {H.order}")

    closure = normal_closure(a, K)
    meet = Subgroup(a.parent, closure.members & H.members)
    return SpecialTripleRecord(a, H, K, closure, meet, meet.members == K.members)


def is_nr_subgroup(G: Ambient, H: Subgroup) -> Tuple[bool, Optional[Subgroup]]:
    """Every normal subgroup K of H gives a special triple (G, H, K).

    On failure the first offending K in canonical order is returned.
    """

    a = as_subgroup(G)
    if H.parent is not a.parent or not H.members <= a.members:
        raise ForeignSubgroup(f"subgroup of order {H.order} is not inside the ambient group")

    def compute() -> Tuple[bool, Optional[Subgroup]]:
        for K in normal_subgroups(H):
            if not is_special_triple(a, H, K).special:
                return False, K
        return True, None

    return a.parent.cached(("nr", a.members, H.members), compute)


def is_ne_subgroup(G: Ambient, K: Subgroup) -> bool:
    """(G, N_G(K), K) is special"""

    a = as_subgroup(G)
    if K.parent is not a.parent or not K.members <= a.members:
        raise ForeignSubgroup(f"subgroup of order {K.order} is not inside the ambient group")
    return is_special_triple(a, normalizer(a, K), K).special


def _p_subgroup_prime(P: Subgroup) -> int:
    p = prime_of_p_group(P)
    if p is None:
        raise NotPGroup("the trivial subgroup has no associated prime")
    return p


def nc1_premises(G: Ambient, P: Subgroup) -> Tuple[bool, Subgroup]:
    """With N = N_G(P): both (G, N, P) and (G, N, Phi(P)) are special"""

    a = as_subgroup(G)
    _p_subgroup_prime(P)
    N = normalizer(a, P)
    holds = is_special_triple(a, N, P).special and \
        is_special_triple(a, N, frattini(P)).special
    return holds, N


def nc2_premises(G: Ambient, P: Subgroup) -> Tuple[bool, Subgroup]:
    """With N = N_G(P): for T in {P, Phi(P)} some L has G = NL and N meet L = T"""

    a = as_subgroup(G)
    _p_subgroup_prime(P)
    N = normalizer(a, P)
    candidates = subgroups_within(a)

    def factorizes(T: Subgroup) -> bool:
        for L in candidates:
            meet = N.members & L.members
            if meet == T.members and N.order * L.order == a.order * len(meet):
                return True
        return False

    return factorizes(P) and factorizes(frattini(P)), N


def _subject(theorem_id: str, subject: Optional[Subgroup]) -> Subgroup:
    if subject is None:
        raise MissingSubject(f"{theorem_id} needs a subject subgroup")
    return subject


def _quantified(a: Subgroup, theorem_id: str) -> HypothesisVerdict:
    if theorem_id == "th1":
        candidates = maximal_subgroups(a)
    else:
        candidates = n_maximal_subgroups(a, 2)

    witnesses = []
    for M in candidates:
        if theorem_id in ("th1", "th2") and is_nilpotent(M):
            continue
        if theorem_id == "th1":
            if M.is_normal_in(a):
                continue
            reason = "non-nilpotent maximal subgroup neither normal nor NR"
        else:
            if is_subnormal(a, M):
                continue
            reason = "2-maximal subgroup neither subnormal nor NR" if theorem_id == "cor" \
                else "non-nilpotent 2-maximal subgroup neither subnormal nor NR"

        nr, K = is_nr_subgroup(a, M)
        if not nr:
            witnesses.append(({"subgroup": M.describe(), "K": K.describe()}, reason))

    return HypothesisVerdict(theorem_id, not witnesses, witnesses)


def hypothesis(G: Ambient, theorem_id: str, subject: Optional[Subgroup] = None) -> HypothesisVerdict:
    """Evaluate the hypothesis of the named result for G (and `subject` where one is needed)"""

    if theorem_id not in THEOREM_IDS:
        raise UnknownTheoremId(f"unknown theorem id {theorem_id!r}")

    a = as_subgroup(G)
    if theorem_id in GLOBAL_THEOREMS:
        return a.parent.cached(("hypothesis", theorem_id, a.members),
                               lambda: _quantified(a, theorem_id))

    S = _subject(theorem_id, subject)
    if theorem_id in ("nc1", "th4"):
        holds, N = nc1_premises(a, S)
        if not holds:
            return HypothesisVerdict(theorem_id, False, [
                ({"P": S.describe(), "N": N.describe()}, "a triple over N_G(P) is not special")])
        if theorem_id == "th4" and is_p_nilpotent(N, _p_subgroup_prime(S)) is None:
            return HypothesisVerdict(theorem_id, False, [
                ({"P": S.describe(), "N": N.describe()}, "N_G(P) is not p-nilpotent")])
        return HypothesisVerdict(theorem_id, True)

    # th5
    reasons = []
    nr, K = is_nr_subgroup(a, S)
    if not nr:
        reasons.append(({"H": S.describe(), "K": K.describe()}, "H is not NR"))
    if not isprime(a.order // S.order):
        reasons.append(({"H": S.describe()}, f"index {a.order // S.order} is not prime"))
    if not is_supersolvable(S):
        reasons.append(({"H": S.describe()}, "H is not supersolvable"))
    return HypothesisVerdict(theorem_id, not reasons, reasons)


def witness_chain(*subgroups: Subgroup) -> List[Dict[str, Any]]:
    return [S.describe() for S in subgroups]
