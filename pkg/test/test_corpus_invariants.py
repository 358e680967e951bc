import pytest
import pathlib

from unittest.mock import Mock

from sympy import primefactors

from normal_restriction.corpusdata import GroupSpec, build, default_config, load_corpus
from normal_restriction.isomorphism import are_isomorphic
from normal_restriction.lattice import all_subgroups, sylow
from normal_restriction.structure import all_sylows_normal, is_nilpotent, is_solvable

cur_dir = pathlib.Path(__file__).parent

# every default-corpus group the lattice cap lets through
corpus = [G for G in load_corpus(cur_dir.parent.joinpath("data", "corpus.jsonl"), Mock())
          if G.order <= default_config().lattice_cap]

A5 = build(GroupSpec("A5", "alternating", n=5))


def _name(G):
    return G.name


def test_corpus_is_not_empty():
    assert len(corpus) > 80
    assert {"S5", "A5", "L2(5)", "L2(7)", "SL(2,3)", "A5xC2"} <= {G.name for G in corpus}


# ========== lattice ==========


@pytest.mark.parametrize("G", corpus, ids=_name)
def test_lattice_closed(G):
    assert all_subgroups(G).check_invariants()


@pytest.mark.parametrize("G", corpus, ids=_name)
def test_sylow_counting(G):
    for p in primefactors(G.order):
        sylows = sylow(G, p)
        assert len(sylows) % p == 1
        assert (G.order // sylows[0].order) % len(sylows) == 0


# ========== structure ==========


@pytest.mark.parametrize("G", corpus, ids=_name)
def test_nilpotent_iff_sylows_normal(G):
    assert is_nilpotent(G) == all_sylows_normal(G)
    assert is_nilpotent(G) == all(len(sylow(G, p)) == 1 for p in primefactors(G.order))


@pytest.mark.parametrize("G", corpus, ids=_name)
def test_solvability_small_orders(G):
    solvable = is_solvable(G)[0]
    if G.order < 60:
        assert solvable
    elif G.order == 60 and not solvable:
        assert are_isomorphic(G, A5) is not None


def test_order_60_non_solvable():
    names = sorted(G.name for G in corpus if G.order == 60 and not is_solvable(G)[0])
    assert names == ["A5", "L2(5)"]
