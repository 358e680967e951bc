import pytest

from normal_restriction.corpusdata import GroupSpec, build, default_config
from normal_restriction.suites import (SUITE_IDS, SUITES, GroupOutcome, SuiteContext, prepare,
                                       reference_group)

S3 = build(GroupSpec("S3", "symmetric", n=3))
S4 = build(GroupSpec("S4", "symmetric", n=4))
A4 = build(GroupSpec("A4", "alternating", n=4))
A5 = build(GroupSpec("A5", "alternating", n=5))
D8 = build(GroupSpec("D8", "dihedral", n=8))
D10 = build(GroupSpec("D10", "dihedral", n=10))
Q8 = build(GroupSpec("Q8", "quaternion8"))
F20 = build(GroupSpec("F20", "frobenius20"))

ctx = SuiteContext(default_config(), lattice_cap=400)

per_group = sorted(s for s in SUITES if SUITES[s].per_group)
global_suites = sorted(s for s in SUITES if not SUITES[s].per_group)


def run(suite_id, G, context=ctx):
    s = SUITES[suite_id]
    if s.eligible is not None and not s.eligible(G, context):
        return None
    assert prepare(s, G, context) is None
    return s.run(G, context)


# ========== registry ==========


def test_registry():
    assert set(SUITES) == {
        "th1", "th2", "cor", "nc1", "nc2", "th4", "th5", "lem1", "lem1b", "lem1d", "lem2",
        "lem3", "lem5", "lem7", "lem8", "lem9", "nr1", "sch", "gt", "zsi", "anchors"}
    assert global_suites == ["anchors", "lem3", "zsi"]
    assert SUITE_IDS[-1] == "all"


def test_group_outcome():
    out = GroupOutcome("G")
    out.premise(False)
    assert out.hypothesis_held is False
    out.premise(True)
    out.premise(False)
    assert out.hypothesis_held is True
    assert out.checked == 3

    out.refute([{"order": 2}], "special", "not special")
    assert out.counterexamples[0].group == "G"
    assert out.counterexamples[0].witness == [{"order": 2}]

# ========== per-group suites ==========


@pytest.mark.parametrize("suite_id", per_group)
@pytest.mark.parametrize("G", [S3, A4, S4, D8, Q8, D10, F20], ids=lambda G: G.name)
def test_no_counterexamples_on_small_groups(suite_id, G):
    out = run(suite_id, G)
    if out is not None:
        assert out.group == G.name
        assert out.counterexamples == []


@pytest.mark.parametrize("suite_id", ["th1", "th2", "cor", "nr1", "gt", "lem2", "lem7", "lem8",
                                      "sch", "nc1", "th4"])
def test_no_counterexamples_on_a5(suite_id):
    assert run(suite_id, A5).counterexamples == []


def test_th2_on_a5():
    out = run("th2", A5)
    assert out.hypothesis_held
    assert out.notes == ["A5/S(A5) is isomorphic to A5"]


def test_th1_on_a5_is_vacuous():
    out = run("th1", A5)
    assert out.hypothesis_held is False
    assert out.checked == 1


def test_nc1_on_s4_has_instances():
    """23 nontrivial p-subgroups; C3 and the normal V4 meet the premises"""

    out = run("nc1", S4)
    assert out.hypothesis_held
    assert out.checked == 23
    assert out.counterexamples == []


def test_sch_on_minimal_non_nilpotent():
    for G in (S3, A4):
        out = run("sch", G)
        assert out.hypothesis_held
        assert out.counterexamples == []

    assert run("sch", S4).hypothesis_held is False


def test_lem9_dihedral_only():
    assert run("lem9", S3) is None
    for n in (2, 4, 6, 12, 14, 16, 18):
        G = build(GroupSpec(f"D{n}", "dihedral", n=n))
        assert run("lem9", G).counterexamples == []


def test_chain_suites_respect_order_limit():
    small = SuiteContext(default_config(), lattice_cap=400)
    small.config.chain_max_order = 10
    assert run("lem1", S4, small) is None
    assert run("lem1", D10, small) is not None


@pytest.mark.parametrize("q", [5, 7])
def test_lem5_minimal_simple_psl2(q):
    G = build(GroupSpec(f"L2({q})", "psl2", n=q))
    out = run("lem5", G)
    assert out.checked == 1
    assert out.counterexamples == []


def test_lem5_ineligible():
    assert run("lem5", A5) is None
    assert run("lem5", build(GroupSpec("L2(11)", "psl2", n=11))) is None


# ========== prepare ==========


def test_prepare_skips():
    s = SUITES["th1"]
    assert prepare(s, S4, SuiteContext(default_config(), lattice_cap=400, max_order=20)) == \
        "order 24 above max order 20"
    assert prepare(s, S4, SuiteContext(default_config(), lattice_cap=20)) == \
        "order 24 above lattice cap 20"
    assert prepare(SUITES["lem3"], S4, SuiteContext(default_config(), lattice_cap=20)) is None

# ========== global suites ==========


@pytest.mark.parametrize("suite_id", global_suites)
def test_global_suites_pass(suite_id):
    outcomes = SUITES[suite_id].run(ctx)
    assert outcomes
    assert all(out.checked == 1 for out in outcomes)
    assert [c for out in outcomes for c in out.counterexamples] == []


def test_anchor_notes():
    outcomes = SUITES["anchors"].run(ctx)
    notes = [n for out in outcomes for n in out.notes]
    assert any("S4 maximal NR verdicts" in n for n in notes)
    assert any("A4 (normal, non-nilpotent) is NR in S4" in n for n in notes)


def test_lem3_small_scan():
    config = default_config()
    config.lemma3_t_max = 2
    outcomes = SUITES["lem3"].run(SuiteContext(config, lattice_cap=400))
    assert [out.counterexamples for out in outcomes] == [[], []]


def test_reference_groups():
    assert reference_group("F21").order == 21
    assert reference_group("L2(7)").order == 168
    assert reference_group("A5") is reference_group("A5")
