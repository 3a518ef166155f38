from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from singular_iter import intervals
from singular_iter.intervals import (plateau_consistency_check, plateau_levels, plateau_tree, total_plateau_length,
                                     value_from_word)
from singular_iter.measure import BernoulliParam
from singular_iter.oracles import cantor_exact
from singular_iter.pairs import make_affine_pair

from conftest import builtin_pairs

HALF = BernoulliParam(Fraction(1, 2))
QUARTER = BernoulliParam(Fraction(1, 4))
PLATEAU_PAIRS = [p for p in builtin_pairs().values() if p.a < p.b]


def spans(nodes):
    return [(nd.left, nd.right, nd.value) for nd in nodes]


def test_cantor_first_levels(cantor):
    levels = list(plateau_levels(cantor, HALF, 2))
    assert spans(levels[0]) == [(Fraction(1, 3), Fraction(2, 3), Fraction(1, 2))]
    assert spans(levels[1]) == [(Fraction(1, 9), Fraction(2, 9), Fraction(1, 4)),
                                (Fraction(7, 9), Fraction(8, 9), Fraction(3, 4))]
    assert [nd.value for nd in levels[2]] == [Fraction(k, 8) for k in (1, 3, 5, 7)]


def test_asymmetric_level_zero():
    pair = make_affine_pair("2/5", "4/5")
    (root,) = next(plateau_levels(pair, QUARTER, 0))
    assert (root.left, root.right, root.value, root.word, root.level) == (Fraction(2, 5), Fraction(4, 5), Fraction(1, 4), (), 0)


def test_cantor_total_length(cantor):
    assert total_plateau_length(cantor, 1) == pytest.approx(5 / 9, abs=1e-15)
    assert total_plateau_length(cantor, 10) == pytest.approx(1 - (2 / 3) ** 11, abs=1e-12)


@pytest.mark.parametrize("pair", PLATEAU_PAIRS, ids=lambda p: p.name)
def test_level_zero_length(pair):
    assert total_plateau_length(pair, 0) == pytest.approx(float(pair.b - pair.a), abs=1e-15)


def test_affine_total_length_closed_form():
    # level n contributes (b - a)(a + 1 - b)^n
    a, b = Fraction(2, 5), Fraction(4, 5)
    pair = make_affine_pair(a, b)
    for n in (0, 1, 5, 12):
        expected = sum((b - a) * (a + 1 - b) ** j for j in range(n + 1))
        assert total_plateau_length(pair, n) == pytest.approx(float(expected), abs=1e-14)


def test_rejects_degenerate_and_deep(cantor, minkowski):
    with pytest.raises(ValueError, match="a=b"):
        plateau_tree(minkowski, HALF, 3)
    with pytest.raises(ValueError, match="max_level"):
        plateau_tree(cantor, HALF, intervals.MAX_LEVEL + 1)
    with pytest.raises(ValueError, match="budget"):
        plateau_tree(cantor, HALF, 10, node_budget=100)


@pytest.mark.parametrize("pair", PLATEAU_PAIRS, ids=lambda p: p.name)
@pytest.mark.parametrize("p", [Fraction(1, 4), Fraction(1, 2), Fraction(2, 3)])
def test_values_agree_with_fixed_point(pair, p):
    m = BernoulliParam(p)
    assert plateau_consistency_check(pair, m, plateau_tree(pair, m, 6), 40)


def test_consistency_check_detects_wrong_value(cantor):
    nodes = plateau_tree(cantor, HALF, 2)
    bad = [intervals.PlateauNode(nd.left, nd.right, nd.value + Fraction(1, 100), nd.word, nd.level) for nd in nodes]
    assert not plateau_consistency_check(cantor, HALF, bad, 40)


@pytest.mark.parametrize("pair", PLATEAU_PAIRS, ids=lambda p: p.name)
def test_plateaus_disjoint_and_ordered(pair):
    nodes = sorted(plateau_tree(pair, QUARTER, 12), key=lambda nd: nd.left)
    for u, v in zip(nodes, nodes[1:]):
        assert u.right < v.left
        # F is non-decreasing, so plateau values follow the left-to-right order
        assert u.value < v.value
    for level in plateau_levels(pair, QUARTER, 8):
        assert all(u.right < v.left for u, v in zip(level, level[1:]))


def test_cantor_values_are_dyadic(cantor):
    for nd in plateau_tree(cantor, HALF, 10):
        assert nd.value.denominator == 2 ** (nd.level + 1)
        assert nd.value == cantor_exact(nd.midpoint)


@pytest.mark.parametrize("pair", PLATEAU_PAIRS, ids=lambda p: p.name)
def test_words_reproduce_values_and_images(pair):
    for nd in plateau_tree(pair, QUARTER, 7):
        assert value_from_word(nd.word, QUARTER) == nd.value
        assert len(nd.word) == nd.level
        # pushing the plateau forward along its word lands back on [a, b]
        lo, hi = nd.left, nd.right
        for s in nd.word:
            f = pair.f0 if s == 0 else pair.f1
            lo, hi = f(lo), f(hi)
        assert lo == pytest.approx(pair.a, abs=1e-12) and hi == pytest.approx(pair.b, abs=1e-12)


def test_value_from_word_examples():
    assert value_from_word((), QUARTER) == Fraction(1, 4)
    assert value_from_word((0,), QUARTER) == Fraction(1, 16)
    assert value_from_word((1,), QUARTER) == Fraction(1, 4) + Fraction(3, 16)
    assert value_from_word((1, 0), HALF) == Fraction(5, 8)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=20), st.fractions(Fraction(1, 50), Fraction(49, 50)))
def test_values_strictly_inside_unit_interval(word, p):
    v = value_from_word(tuple(word), BernoulliParam(p))
    assert 0 < v < 1
