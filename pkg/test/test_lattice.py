import pytest

from collections import Counter

from normal_restriction.corpusdata import GroupSpec, build
from normal_restriction.errors import ForeignSubgroup, LatticeCapExceeded, NotPrime
from normal_restriction.group import conjugate, normalizer, subgroup_from_perms
from normal_restriction.lattice import (all_subgroups, export_lattice, frattini, is_maximal,
                                        is_subnormal, maximal_subgroups,
                                        minimal_normal_subgroups, n_maximal_subgroups,
                                        normal_subgroups, subgroups_within, sylow)
from normal_restriction.perm import parse_generators
from normal_restriction.structure import is_nilpotent

V4 = build(GroupSpec("V4", "klein4"))
S3 = build(GroupSpec("S3", "symmetric", n=3))
S4 = build(GroupSpec("S4", "symmetric", n=4))
A4 = build(GroupSpec("A4", "alternating", n=4))
A5 = build(GroupSpec("A5", "alternating", n=5))
D8 = build(GroupSpec("D8", "dihedral", n=8))
Q8 = build(GroupSpec("Q8", "quaternion8"))
C4 = build(GroupSpec("C4", "cyclic", n=4))
S5 = build(GroupSpec("S5", "symmetric", n=5))

D8_IN_S4 = subgroup_from_perms(S4, parse_generators("(1 2 3 4),(1 3)", 4))
C4_IN_S4 = subgroup_from_perms(S4, parse_generators("(1 2 3 4)", 4))
V4_IN_S4 = subgroup_from_perms(S4, parse_generators("(1 2)(3 4),(1 3)(2 4)", 4))


# ========== all_subgroups ==========


@pytest.mark.parametrize("G, count", [
    (V4, 5), (S3, 6), (C4, 3), (D8, 10), (Q8, 6), (A4, 10), (S4, 30), (A5, 59)])
def test_lattice_sizes(G, count):
    assert len(all_subgroups(G)) == count


def test_lattice_invariants():
    for G in (S4, A5, D8):
        lattice = all_subgroups(G)
        assert lattice.check_invariants()
        assert lattice.subgroups[0].order == 1
        assert lattice.subgroups[-1].order == G.order


def test_conjugacy_classes_of_s4():
    """S4 has 11 conjugacy classes of subgroups"""

    lattice = all_subgroups(S4)
    assert len(lattice.conjugacy_classes) == 11
    assert sum(len(c) for c in lattice.conjugacy_classes) == 30


def test_lattice_cap():
    with pytest.raises(LatticeCapExceeded):
        all_subgroups(S5, lattice_cap=100)

    with pytest.raises(LatticeCapExceeded):
        all_subgroups(S4, lattice_cap=5000)


def test_subgroups_within_matches_filter():
    inside = subgroups_within(D8_IN_S4)
    assert len(inside) == 10
    assert all(T.members <= D8_IN_S4.members for T in inside)


def test_subgroups_within_rerooting():
    """Above the cap the subgroup is re-rooted and its lattice mapped back"""

    G = build(GroupSpec("S5", "symmetric", n=5))
    H = subgroup_from_perms(G, parse_generators("(1 2),(1 2 3 4)", 5))
    inside = subgroups_within(H, lattice_cap=100)
    assert len(inside) == 30
    assert all(T.parent is G for T in inside)
    assert not G.has_cached("lattice")


# ========== maximal and n-maximal ==========


def test_maximal_subgroups_of_a5():
    orders = Counter(M.order for M in maximal_subgroups(A5))
    assert orders == Counter({12: 5, 10: 6, 6: 10})


def test_two_maximal_of_a5_nilpotent():
    two = n_maximal_subgroups(A5, 2)
    assert {M.order for M in two} == {2, 3, 4, 5}
    assert all(is_nilpotent(M) for M in two)


def test_three_maximal_of_a5():
    assert {M.order for M in n_maximal_subgroups(A5, 3)} == {1, 2}


def test_n_maximal_chain_property():
    level2 = n_maximal_subgroups(S4, 2)
    level3 = n_maximal_subgroups(S4, 3)
    below = {T.members for M in level2 for T in maximal_subgroups(M)}
    assert {T.members for T in level3} <= below


def test_n_maximal_rejects_zero():
    with pytest.raises(ValueError):
        n_maximal_subgroups(S4, 0)


def test_is_maximal():
    assert is_maximal(S4, D8_IN_S4)
    assert not is_maximal(S4, C4_IN_S4)


# ========== normal subgroups, Frattini, Sylow ==========


def test_normal_subgroups_of_s4():
    assert [N.order for N in normal_subgroups(S4)] == [1, 4, 12, 24]
    assert [N.members for N in minimal_normal_subgroups(S4)] == [V4_IN_S4.members]


def test_minimal_normal_of_simple():
    assert [N.order for N in minimal_normal_subgroups(A5)] == [60]


def test_frattini():
    assert frattini(D8).order == 2
    assert frattini(S4).order == 1
    assert frattini(C4).order == 2
    assert frattini(S4.trivial).order == 1


def test_frattini_invariant_under_normalizer():
    phi = frattini(D8_IN_S4)
    assert phi.is_normal_in(D8_IN_S4)
    for g in normalizer(S4, D8_IN_S4).members:
        assert conjugate(g, phi) == phi


def test_sylow():
    assert len(sylow(S4, 2)) == 3
    assert all(P.order == 8 for P in sylow(S4, 2))
    assert len(sylow(A5, 5)) == 6
    assert [P.order for P in sylow(S3, 5)] == [1]

    with pytest.raises(NotPrime):
        sylow(S4, 4)


@pytest.mark.parametrize("G", [S3, S4, A4, A5, D8])
def test_sylow_counting(G):
    for p in (2, 3, 5):
        if G.order % p:
            continue
        count = len(sylow(G, p))
        size = sylow(G, p)[0].order
        assert count % p == 1
        assert (G.order // size) % count == 0


# ========== subnormality and export ==========


def test_is_subnormal():
    assert is_subnormal(S4, V4_IN_S4)
    assert not is_subnormal(S4, C4_IN_S4)
    assert is_subnormal(D8_IN_S4, C4_IN_S4)

    with pytest.raises(ForeignSubgroup):
        is_subnormal(S4, A5.whole)


def test_export_lattice():
    records = export_lattice(all_subgroups(S3))
    assert len(records) == 6
    assert records[0]["order"] == 1
    assert records[-1]["is_normal"]
    assert records[-1]["maximal_in"] == []
    assert set(records[0].keys()) == {
        "index", "order", "generators", "is_normal", "conjugacy_class", "maximal_in"}
