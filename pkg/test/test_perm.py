import pytest

from hypothesis import given, strategies as st

from normal_restriction.errors import CycleParseError, DegreeMismatch
from normal_restriction.perm import (Permutation, cycle_to_perm, format_generators,
                                     parse_cycles, parse_generators, split_generators)

permutations = st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.permutations(list(range(n))).map(lambda p: Permutation(tuple(p))))


# ========== Permutation ==========


def test_product_reads_left_to_right():
    """(1 2)*(1 3) applies (1 2) first: 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1"""

    p = parse_cycles("(1 2)", 3) * parse_cycles("(1 3)", 3)
    assert str(p) == "(1 2 3)"


def test_identity_prints_as_empty_cycle():
    assert str(Permutation.identity(4)) == "()"
    assert Permutation.identity(4).is_identity()


def test_not_a_bijection():
    with pytest.raises(CycleParseError):
        Permutation((0, 0, 1))


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        parse_cycles("(1 2)", 2) * parse_cycles("(1 2)", 3)


def test_order_and_inverse():
    p = parse_cycles("(1 2 3)(4 5)")
    assert p.order() == 6
    assert not (p * p * p).is_identity()
    assert (p * p * p * p * p * p).is_identity()
    assert p * p.inverse() == Permutation.identity(p.degree)


def test_from_images_is_one_based():
    assert str(Permutation.from_images([2, 3, 1])) == "(1 2 3)"


def test_extend_and_shift():
    p = parse_cycles("(1 2)")
    assert p.extend(4).images == (1, 0, 2, 3)
    assert str(p.shift(2, 4)) == "(3 4)"

    with pytest.raises(DegreeMismatch):
        p.extend(1)


@given(permutations)
def test_inverse_roundtrip(p):
    assert (p * p.inverse()).is_identity()
    assert (p.inverse() * p).is_identity()


@given(permutations)
def test_str_parses_back(p):
    assert parse_cycles(str(p), p.degree) == p


# ========== parsing ==========


def test_parse_cycles_degree_default():
    assert parse_cycles("(1 2 3)(4 5)").degree == 5
    assert parse_cycles("()").degree == 1


@pytest.mark.parametrize("text", ["(1 2", "1 2)", "(1 a)", "(0 1)", "(1 1)", "", "(1 2) x"])
def test_parse_cycles_malformed(text):
    with pytest.raises(CycleParseError):
        parse_cycles(text)


def test_parse_cycles_point_above_degree():
    with pytest.raises(CycleParseError):
        parse_cycles("(1 5)", 4)


def test_cycle_to_perm():
    assert str(cycle_to_perm([2, 4, 3], 5)) == "(2 4 3)"


def test_split_generators():
    assert split_generators("(1 2)(3 4), (1 3)(2 4)") == ["(1 2)(3 4)", "(1 3)(2 4)"]
    assert split_generators(" ") == []


def test_parse_generators_common_degree():
    gens = parse_generators("(1 2),(1 2 3 4 5)")
    assert [g.degree for g in gens] == [5, 5]
    assert format_generators(gens) == "(1 2),(1 2 3 4 5)"
