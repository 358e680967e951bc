"""Property suites: each checks one implication over a single corpus group,
or (global suites) over data of its own"""

import logging

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional

from sympy import isprime, primefactors

from .corpusdata import (ALTERNATING, DIHEDRAL, GENERATORS, PSL2, SYMMETRIC, GroupSpec,
                         VerifierConfig, build)
from .group import FiniteGroup, Subgroup, join, normalizer, quotient, subgroup_from_perms
from .isomorphism import are_isomorphic
from .lattice import (all_subgroups, frattini, is_maximal, maximal_subgroups,
                      n_maximal_subgroups, normal_subgroups, subgroups_within, sylow)
from .nrtheory import (hypothesis, is_nr_subgroup, is_special_triple, nc1_premises, nc2_premises,
                       normal_closure, witness_chain)
from .numtheory import lemma3_scan, zsigmondy_exceptions, zsigmondy_scan
from .perm import parse_generators
from .structure import (is_minimal_non_nilpotent, is_nilpotent, is_p_nilpotent, is_solvable,
                        is_supersolvable, normal_complement, solvable_radical, z_j)

logger = logging.getLogger(__name__)

REFERENCE_SPECS = {
    "A5": GroupSpec("A5", ALTERNATING, n=5),
    "A4": GroupSpec("A4", ALTERNATING, n=4),
    "S4": GroupSpec("S4", SYMMETRIC, n=4),
    "S3": GroupSpec("S3", SYMMETRIC, n=3),
    "D10": GroupSpec("D10", DIHEDRAL, n=10),
    "F21": GroupSpec("F21", GENERATORS, degree=7,
                     generators=["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]),
    "L2(5)": GroupSpec("L2(5)", PSL2, n=5),
    "L2(7)": GroupSpec("L2(7)", PSL2, n=7),
}

# maximal subgroup classes of the minimal simple L2(q) spot-checked by lem5
MAXIMAL_TYPES = {
    5: Counter({"A4": 1, "D10": 1, "S3": 1}),
    7: Counter({"S4": 2, "F21": 1}),
}


@lru_cache(maxsize=None)
def reference_group(name: str) -> FiniteGroup:
    return build(REFERENCE_SPECS[name])


@dataclass
class Counterexample:
    group: str
    witness: List[Dict[str, Any]]
    expected: str
    actual: str


@dataclass
class GroupOutcome:
    """What one suite found for one group (or one global check)"""

    group: str
    checked: int = 0
    hypothesis_held: Optional[bool] = None
    counterexamples: List[Counterexample] = field(default_factory=list)
    skipped: Optional[str] = None
    notes: List[str] = field(default_factory=list)

    def refute(self, witness: List[Dict[str, Any]], expected: str, actual: str) -> None:
        self.counterexamples.append(Counterexample(self.group, witness, expected, actual))

    def premise(self, held: bool) -> None:
        self.checked += 1
        self.hypothesis_held = bool(self.hypothesis_held) or held


@dataclass
class SuiteContext:
    config: VerifierConfig
    lattice_cap: int
    max_order: Optional[int] = None


@dataclass
class Suite:
    suite_id: str
    run: Callable
    needs_lattice: bool = True
    eligible: Optional[Callable[[FiniteGroup, SuiteContext], bool]] = None
    per_group: bool = True


SUITES: Dict[str, Suite] = {}


def suite(suite_id: str, needs_lattice: bool = True, eligible=None, per_group: bool = True):
    def register(fn):
        SUITES[suite_id] = Suite(suite_id, fn, needs_lattice, eligible, per_group)
        return fn
    return register


def prepare(s: Suite, G: FiniteGroup, ctx: SuiteContext) -> Optional[str]:
    """Reason to skip G, or None once the lattice (if needed) is in place"""

    if ctx.max_order is not None and G.order > ctx.max_order:
        return f"order {G.order} above max order {ctx.max_order}"
    if s.needs_lattice:
        if G.order > ctx.lattice_cap:
            return f"order {G.order} above lattice cap {ctx.lattice_cap}"
        lattice = all_subgroups(G, ctx.lattice_cap)
        logger.debug(f"{G.name}: lattice of {len(lattice)} subgroups")
    return None


def _small(G: FiniteGroup, ctx: SuiteContext) -> bool:
    return G.order <= ctx.config.chain_max_order


def _prime_power_subgroups(G: FiniteGroup):
    for P in subgroups_within(G):
        primes = primefactors(P.order)
        if len(primes) == 1:
            yield primes[0], P


# ========== theorems over the hypothesis of G ==========


def _solvability_check(G: FiniteGroup, theorem_id: str) -> GroupOutcome:
    out = GroupOutcome(G.name)
    verdict = hypothesis(G, theorem_id)
    out.premise(verdict.holds)

    if verdict.holds:
        solvable, series = is_solvable(G)
        if not solvable:
            out.refute(witness_chain(*series.terms), "solvable",
                       f"derived series stops at order {series.terms[-1].order}")
    else:
        logger.debug(f"{G.name}: {theorem_id} hypothesis fails, {len(verdict.witnesses)} witnesses")
    return out


@suite("th1")
def th1(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    return _solvability_check(G, "th1")


@suite("cor")
def cor(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    return _solvability_check(G, "cor")


@suite("th2")
def th2(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    verdict = hypothesis(G, "th2")
    out.premise(verdict.holds)
    if not verdict.holds:
        return out

    radical = solvable_radical(G)
    index = G.order // radical.order
    if index == 1:
        return out

    if index == 60:
        Q, _ = quotient(G, radical)
        if are_isomorphic(Q, reference_group("A5")) is not None:
            out.notes.append(f"{G.name}/S({G.name}) is isomorphic to A5")
            return out

    out.refute(witness_chain(radical), "G/S(G) trivial or isomorphic to A5",
               f"G/S(G) of order {index}")
    return out


# ========== complements and p-nilpotency ==========


@suite("nc1")
def nc1(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    for p, P in _prime_power_subgroups(G):
        holds, N = nc1_premises(G, P)
        out.premise(holds)
        if not holds:
            continue

        T = normal_complement(G, N)
        if T is None or T.order % p == 0:
            out.refute(witness_chain(P, N) + ([T.describe()] if T else []),
                       f"normal complement of N_G(P) of order prime to {p}",
                       "no normal complement" if T is None else f"complement of order {T.order}")
    return out


@suite("nc2")
def nc2(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    for p, P in _prime_power_subgroups(G):
        holds, N = nc2_premises(G, P)
        out.premise(holds)
        if holds and normal_complement(G, N) is None:
            out.refute(witness_chain(P, N), "N_G(P) has a normal complement",
                       "no normal complement")
    return out


@suite("th4")
def th4(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    for p, P in _prime_power_subgroups(G):
        verdict = hypothesis(G, "th4", P)
        out.premise(verdict.holds)
        if verdict.holds and is_p_nilpotent(G, p) is None:
            out.refute(witness_chain(P, normalizer(G, P)), f"G is {p}-nilpotent",
                       f"no normal {p}-complement")
    return out


@suite("th5")
def th5(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    for H in subgroups_within(G):
        if not isprime(G.order // H.order):
            continue
        verdict = hypothesis(G, "th5", H)
        out.premise(verdict.holds)
        if verdict.holds and not is_supersolvable(G):
            out.refute(witness_chain(H), "G supersolvable", "G not supersolvable")
    return out


# ========== lemmas ==========


@suite("lem1", eligible=_small)
def lem1(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    """Parts (a), (c) and (e) over every chain of subgroups"""

    out = GroupOutcome(G.name)
    lattice = subgroups_within(G)

    for H in lattice:
        above = [T for T in lattice if H.members <= T.members]
        for K in normal_subgroups(H):
            if not is_special_triple(G, H, K).special:
                continue
            for T in above:
                out.checked += 1
                if not is_special_triple(T, H, K).special:
                    out.refute(witness_chain(T, H, K), "(T, H, K) special in T", "not special")

    for H in lattice:
        if not is_nr_subgroup(G, H)[0]:
            continue
        for K in normal_subgroups(H):
            C = normal_closure(G, K)
            Q, projection = quotient(G, C)
            out.checked += 1
            if not is_nr_subgroup(Q, projection.image(H))[0]:
                out.refute(witness_chain(H, K, C), "HK^G/K^G is NR in G/K^G", "not NR")

    for H in lattice:
        for L in lattice:
            meet = H.members & L.members
            if H.order * L.order != G.order * len(meet):
                continue
            K = Subgroup(G, meet)
            if not K.is_normal_in(H):
                continue
            out.checked += 1
            if not is_special_triple(G, H, K).special:
                out.refute(witness_chain(H, L, K), "(G, H, H meet L) special", "not special")

    return out


@suite("lem1b", eligible=_small)
def lem1b(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    lattice = subgroups_within(G)

    for H in lattice:
        for K in normal_subgroups(H):
            if not is_special_triple(G, H, K).special:
                continue
            C = normal_closure(G, K)
            HC = join(H, C)
            Q, projection = quotient(G, C)
            for L in lattice:
                if not (C.members <= L.members <= HC.members) or not L.is_normal_in(HC):
                    continue
                if not is_special_triple(G, H, Subgroup(G, L.members & H.members)).special:
                    continue
                out.checked += 1
                record = is_special_triple(Q, projection.image(HC), projection.image(L))
                if not record.special:
                    out.refute(witness_chain(H, K, L), "(G/K^G, HK^G/K^G, L/K^G) special",
                               "not special")
    return out


@suite("lem1d", eligible=_small)
def lem1d(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    holds = hypothesis(G, "th1").holds
    out.premise(holds)
    if not holds:
        return out

    for K in normal_subgroups(G):
        if K.order in (1, G.order):
            continue
        Q, _ = quotient(G, K)
        out.checked += 1
        if not hypothesis(Q, "th1").holds:
            out.refute(witness_chain(K), "th1 hypothesis holds for G/K", "fails")
    return out


@suite("lem2")
def lem2(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    for p in primefactors(G.order):
        P = sylow(G, p)[0]
        phi = frattini(P)
        for H in normal_subgroups(G):
            held = (H.members & P.members) <= phi.members
            out.premise(held)
            if held and is_p_nilpotent(H, p) is None:
                out.refute(witness_chain(H, P, phi), f"H is {p}-nilpotent",
                           f"no normal {p}-complement in H")
    return out


@suite("lem7")
def lem7(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    supersolvable = is_supersolvable(G)

    out.checked += 1
    if supersolvable != is_supersolvable(G, "last"):
        out.refute([], "chief series selection does not change the verdict",
                   "first and last selection disagree")

    for A in normal_subgroups(G):
        if not isprime(A.order):
            continue
        Q, _ = quotient(G, A)
        out.premise(True)
        if supersolvable != is_supersolvable(Q):
            out.refute(witness_chain(A), f"G/A supersolvable == {supersolvable}",
                       f"G/A supersolvable == {not supersolvable}")
    return out


@suite("lem8")
def lem8(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    for H in normal_subgroups(G):
        for p in primefactors(H.order):
            K = is_p_nilpotent(H, p)
            out.premise(K is not None)
            if K is not None and not K.is_normal_in(G):
                out.refute(witness_chain(H, K), "normal p-complement of H normal in G",
                           "not normal")
    return out


def _dihedral(G: FiniteGroup, ctx: SuiteContext) -> bool:
    return G.spec is not None and G.spec.kind == DIHEDRAL


def _power_of_two(t: int) -> bool:
    return t & (t - 1) == 0


@suite("lem9", eligible=_dihedral)
def lem9(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    t = G.order // 2

    out.checked += 1
    nilpotent = is_nilpotent(G)
    if nilpotent != _power_of_two(t):
        out.refute([], f"nilpotent == {_power_of_two(t)} for t={t}", f"nilpotent == {nilpotent}")

    minimal = is_minimal_non_nilpotent(G)
    expected = t % 2 == 1 and isprime(t)
    if minimal != expected:
        out.refute([], f"minimal non-nilpotent == {expected} for t={t}",
                   f"minimal non-nilpotent == {minimal}")
    return out


@suite("nr1")
def nr1(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    self_normalizing = [M for M in maximal_subgroups(G)
                        if normalizer(G, M).members == M.members]
    holds = all(is_nilpotent(M) for M in self_normalizing)
    out.premise(holds)

    if holds and not is_solvable(G)[0]:
        out.refute(witness_chain(*self_normalizing), "solvable", "not solvable")
    return out


@suite("sch")
def sch(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    minimal = is_minimal_non_nilpotent(G)
    out.premise(minimal)
    if not minimal:
        return out

    if not is_solvable(G)[0]:
        out.refute([], "solvable", "not solvable")

    primes = primefactors(G.order)
    if len(primes) != 2:
        out.refute([], "order divisible by exactly two primes", f"prime divisors {primes}")
        return out

    orders = G.element_orders
    for p, q in (primes, primes[::-1]):
        sylow_p, sylow_q = sylow(G, p), sylow(G, q)
        Q = sylow_q[0]
        if len(sylow_p) == 1 and any(orders[x] == Q.order for x in Q.members):
            return out

    out.refute([], "a normal Sylow subgroup and a cyclic Sylow subgroup for the other prime",
               "no such pair")
    return out


@suite("gt")
def gt(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    for p in ctx.config.gt_primes:
        if G.order % p:
            continue
        P = sylow(G, p)[0]
        Z = z_j(P)
        N = normalizer(G, Z)
        held = is_p_nilpotent(N, p) is not None
        out.premise(held)
        if held and is_p_nilpotent(G, p) is None:
            out.refute(witness_chain(P, Z, N), f"G has a normal {p}-complement",
                       "no normal complement")
    return out


def _minimal_simple_psl2(G: FiniteGroup, ctx: SuiteContext) -> bool:
    return G.spec is not None and G.spec.kind == PSL2 and G.spec.n in MAXIMAL_TYPES


def _identify(M: Subgroup, candidates) -> str:
    for name in candidates:
        if are_isomorphic(M, reference_group(name)) is not None:
            return name
    return f"order {M.order}"


@suite("lem5", eligible=_minimal_simple_psl2)
def lem5(G: FiniteGroup, ctx: SuiteContext) -> GroupOutcome:
    out = GroupOutcome(G.name)
    expected = MAXIMAL_TYPES[G.spec.n]
    lattice = all_subgroups(G, ctx.lattice_cap)

    representatives = {}
    for M in maximal_subgroups(G):
        representatives.setdefault(lattice.class_of[lattice.index_of(M)], M)

    found = Counter(_identify(M, expected) for M in representatives.values())
    out.checked += 1
    if found != expected:
        out.refute(witness_chain(*representatives.values()),
                   f"maximal classes {dict(sorted(expected.items()))}",
                   f"maximal classes {dict(sorted(found.items()))}")
    return out


# ========== global suites ==========


def _check(name: str, passed: bool, expected: str, actual: str,
           witness: Optional[List[Dict[str, Any]]] = None) -> GroupOutcome:
    out = GroupOutcome(name, checked=1)
    if not passed:
        out.refute(witness or [], expected, actual)
    return out


@suite("lem3", needs_lattice=False, per_group=False)
def lem3(ctx: SuiteContext) -> List[GroupOutcome]:
    t_max = ctx.config.lemma3_t_max
    found_a = lemma3_scan("a", t_max)
    found_b = lemma3_scan("b", t_max)
    expected_a = {t for t in (3,) if t <= t_max}
    expected_b = {t for t in range(4) if t <= t_max}
    return [
        _check(f"lemma3(a), t <= {t_max}", found_a == expected_a,
               f"{sorted(expected_a)}", f"{sorted(found_a)}"),
        _check(f"lemma3(b), t <= {t_max}", found_b == expected_b,
               f"{sorted(expected_b)}", f"{sorted(found_b)}"),
    ]


@suite("zsi", needs_lattice=False, per_group=False)
def zsi(ctx: SuiteContext) -> List[GroupOutcome]:
    q_max, n_max = ctx.config.zsigmondy_q_max, ctx.config.zsigmondy_n_max
    scan = zsigmondy_scan(q_max, n_max)
    exceptions = zsigmondy_exceptions(scan)
    expected = [(2, 6)] if q_max >= 2 and n_max >= 6 else []
    congruence = [(q, n, r) for (q, n), primes in scan.items() for r in primes if r % n != 1]
    return [
        _check(f"zsigmondy exceptions, q <= {q_max}, n <= {n_max}", exceptions == expected,
               f"{expected}", f"{exceptions}"),
        _check("primitive prime divisors are 1 mod n", not congruence,
               "[]", f"{congruence}"),
    ]


@suite("anchors", needs_lattice=False, per_group=False)
def anchors(ctx: SuiteContext) -> List[GroupOutcome]:
    """Concrete claims about A5, A4, S4, D8 and L2(q)"""

    A5, A4, S4 = reference_group("A5"), reference_group("A4"), reference_group("S4")
    outcomes = []

    bad = [M for M in n_maximal_subgroups(A5, 2) if not is_nilpotent(M)]
    outcomes.append(_check("A5: every 2-maximal subgroup is nilpotent", not bad,
                           "all nilpotent", f"{len(bad)} non-nilpotent", witness_chain(*bad)))

    bad = [M for M in n_maximal_subgroups(A5, 3) if not is_nr_subgroup(A5, M)[0]]
    outcomes.append(_check("A5: every 3-maximal subgroup is NR", not bad,
                           "all NR", f"{len(bad)} not NR", witness_chain(*bad)))

    V4 = subgroup_from_perms(A5, parse_generators("(1 2)(3 4),(1 3)(2 4)", 5))
    nr, K = is_nr_subgroup(A5, V4)
    meet_is_v4 = K is not None and is_special_triple(A5, V4, K).meet.members == V4.members
    outcomes.append(_check(
        "A5: V4 is not NR, order-2 witness K with K^G meet V4 = V4",
        not nr and K.order == 2 and meet_is_v4,
        "not NR with an order-2 witness", f"NR={nr}, witness order {K.order if K else None}",
        witness_chain(V4, K) if K else witness_chain(V4)))

    verdict = hypothesis(A5, "cor")
    outcomes.append(_check(
        "A5: cor hypothesis fails on V4",
        not verdict.holds and all(w["subgroup"]["order"] == 4 for w, _ in verdict.witnesses),
        "fails with order-4 witnesses", f"holds={verdict.holds}",
        [w["subgroup"] for w, _ in verdict.witnesses]))

    verdict = hypothesis(A5, "th2")
    Q, _ = quotient(A5, solvable_radical(A5))
    outcomes.append(_check(
        "A5: th2 hypothesis holds and A5/S(A5) is isomorphic to A5",
        verdict.holds and are_isomorphic(Q, A5) is not None,
        "holds, quotient isomorphic to A5", f"holds={verdict.holds}, quotient order {Q.order}"))

    A3 = subgroup_from_perms(A4, parse_generators("(1 2 3)", 4))
    outcomes.append(_check(
        "A4: A3 is a supersolvable maximal NR subgroup of index 4; A4 not supersolvable",
        is_nr_subgroup(A4, A3)[0] and is_supersolvable(A3) and is_maximal(A4, A3)
        and A4.order // A3.order == 4 and not is_supersolvable(A4),
        "all true", "some property fails", witness_chain(A3)))

    outcomes.append(_s4_classification(S4))

    D8 = subgroup_from_perms(S4, parse_generators("(1 2 3 4),(1 3)", 4))
    C4 = subgroup_from_perms(S4, parse_generators("(1 2 3 4)", 4))
    nr, K = is_nr_subgroup(S4, D8)
    outcomes.append(_check(
        "S4: D8 is not NR; first witness has order 2 and C4 also fails",
        not nr and K.order == 2 and not is_special_triple(S4, D8, C4).special,
        "not NR", f"NR={nr}", witness_chain(D8, K) if K else witness_chain(D8)))

    P = subgroup_from_perms(S4, parse_generators("(1 2 3)", 4))
    holds, N = nc1_premises(S4, P)
    T = normal_complement(S4, N) if holds else None
    outcomes.append(_check(
        "S4: P = C3 meets the nc1 premises, N = S3, complement V4",
        holds and are_isomorphic(N, reference_group("S3")) is not None
        and T is not None and T.order == 4 and T.is_normal_in(S4),
        "premises hold, complement of order 4", f"premises={holds}, complement={T and T.order}",
        witness_chain(P, N) + ([T.describe()] if T else [])))

    L27 = reference_group("L2(7)")
    simple = len(normal_subgroups(L27)) == 2
    has_s4 = any(M.order == 24 and are_isomorphic(M, S4) is not None
                 for M in maximal_subgroups(L27))
    outcomes.append(_check("L2(7): order 168, simple, with a maximal S4",
                           L27.order == 168 and simple and has_s4,
                           "order 168, simple, S4 maximal",
                           f"order {L27.order}, simple={simple}, S4 maximal={has_s4}"))

    outcomes.append(_check("L2(5) is isomorphic to A5",
                           are_isomorphic(reference_group("L2(5)"), A5) is not None,
                           "isomorphic", "not isomorphic"))

    sizes = (len(all_subgroups(S4)), len(all_subgroups(A5)))
    outcomes.append(_check("lattice sizes: S4 has 30 subgroups, A5 has 59",
                           sizes == (30, 59), "(30, 59)", f"{sizes}"))

    return outcomes


def _s4_classification(S4: FiniteGroup) -> GroupOutcome:
    """NR verdicts for the maximal classes of S4; S3 NR and D8 not NR"""

    verdicts = {}
    for M in maximal_subgroups(S4):
        name = {12: "A4", 8: "D8", 6: "S3"}[M.order]
        verdicts.setdefault(name, is_nr_subgroup(S4, M)[0])

    out = _check("S4: maximal classes A4, D8, S3 classified",
                 verdicts.get("S3") is True and verdicts.get("D8") is False,
                 "S3 NR, D8 not NR", f"{dict(sorted(verdicts.items()))}")
    out.notes.append(f"S4 maximal NR verdicts: {dict(sorted(verdicts.items()))}")
    if verdicts.get("A4"):
        out.notes.append(
            "A4 (normal, non-nilpotent) is NR in S4 by direct computation, although "
            "only self-normalizing non-nilpotent maximal subgroups are claimed to be NR")
    return out


SUITE_IDS = sorted(SUITES) + ["all"]
