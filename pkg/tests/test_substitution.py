import pytest
from hypothesis import given
from hypothesis import strategies as st

from decstruct import Gamble, Pair, SubstitutionScheme
from decstruct.core import Dimension, DomainError, Option, ProbCategory, ValCategory
from decstruct.substitution import (
    attainable_categories,
    build_matrices,
    pessimistic_point,
    product,
    substitute_probability,
    substitute_uncertain_probability,
    substitute_value,
)

S = SubstitutionScheme(value_cutoffs=(100.0, 1000.0))
P = ProbCategory


@pytest.mark.parametrize(
    "p, cat",
    [(0.0, P.ZERO), (0.2, P.A), (0.3, P.A), (0.35, P.B), (0.5, P.B), (0.6999, P.B), (0.7, P.C), (0.99, P.C), (1.0, P.ONE)],
)
def test_probability_bins(p, cat):
    assert substitute_probability(p, S) is cat


@pytest.mark.parametrize(
    "v, cat",
    [(0, ValCategory.ZERO), (1, ValCategory.A), (99.9, ValCategory.A), (100, ValCategory.B), (1000, ValCategory.C), (1e9, ValCategory.C)],
)
def test_value_bins(v, cat):
    assert substitute_value(v, S) is cat


@pytest.mark.parametrize("p", [-0.01, 1.01, float("nan")])
def test_probability_domain(p):
    with pytest.raises(DomainError):
        substitute_probability(p, S)


@pytest.mark.parametrize("v", [-1.0, float("inf"), float("nan")])
def test_value_domain(v):
    with pytest.raises(DomainError):
        substitute_value(v, S)


def test_probability_grid_is_total():
    seen = set()
    for i in range(1001):
        seen.add(substitute_probability(i / 1000, S))
    assert seen == set(ProbCategory)


@given(st.floats(0, 1), st.floats(0, 1))
def test_probability_monotone(p, q):
    lo, hi = sorted((p, q))
    assert substitute_probability(lo, S) <= substitute_probability(hi, S)


@given(st.floats(0, 1e12), st.floats(0, 1e12))
def test_value_monotone(v, w):
    lo, hi = sorted((v, w))
    assert substitute_value(lo, S) <= substitute_value(hi, S)


@pytest.mark.parametrize(
    "lo, hi, cat",
    [
        (0.0, 2 / 3, P.A),
        (1 / 3, 1.0, P.B),
        (0.1, 0.2, P.A),
        (0.4, 0.9, P.C),
        (0.4, 0.6, P.B),
        (0.75, 0.95, P.C),
        (0.5, 0.5, P.B),
    ],
)
def test_uncertain_probability(lo, hi, cat):
    assert substitute_uncertain_probability(lo, hi, S) is cat


def test_uncertain_rejects_inverted():
    with pytest.raises(DomainError):
        substitute_uncertain_probability(0.6, 0.2, S)


@given(st.floats(0, 1), st.floats(0, 1))
def test_uncertain_result_is_attainable_and_pessimistic(a, b):
    lo, hi = sorted((a, b))
    cat = substitute_uncertain_probability(lo, hi, S)
    if lo == hi:
        assert cat is substitute_probability(lo, S)
        return
    cats = attainable_categories(lo, hi, S)
    assert cat in cats
    point = pessimistic_point(lo, hi, cat, S)
    assert lo <= point < hi
    # nothing attainable sits below the pick except lo's own category
    assert all(c >= cat or c == substitute_probability(lo, S) for c in cats)


def test_ambiguity_law_switch():
    pair = Pair(Gamble.of((1 / 3, 100.0)), Gamble.of((1 / 3, 100.0), intervals=[(0.0, 2 / 3)]), "amb")
    on, _ = build_matrices(pair, S)
    off, _ = build_matrices(pair, SubstitutionScheme(value_cutoffs=(100.0, 1000.0), ambiguity_law=False))
    assert on.shape() == off.shape()
    y_on = [t for t in on.tokens if t.option is Option.Y][0]
    y_off = [t for t in off.tokens if t.option is Option.Y][0]
    assert y_on.numeric == 0.0 and y_on.interval == (0.0, 2 / 3)
    assert y_off.numeric == pytest.approx(1 / 3) and y_off.interval is None


def test_single_branch_matrices():
    pair = Pair(Gamble.of((0.2, 50.0)), Gamble.of((0.5, 500.0)))
    g_p, g_v = build_matrices(pair, S)
    assert [t.symbol for t in g_p.cell("a")] == ["a_X"]
    assert [t.symbol for t in g_p.cell("b")] == ["b_Y"]
    assert [t.dimension for t in g_v.tokens] == [Dimension.VALUE] * 2
    assert len(product(g_p, g_v)) == 4


def test_implicit_remainder_contributes_nothing():
    pair = Pair(Gamble.of((0.2, 50.0)), Gamble.of((0.2, 50.0), (0.8, 0.0)))
    g_p, g_v = build_matrices(pair, S)
    xs = [t for t in g_p.all_tokens if t.option is Option.X]
    ys = [t for t in g_p.all_tokens if t.option is Option.Y]
    assert len(xs) == 1 and len(ys) == 2  # the written zero-reward branch still has a probability token


def test_certain_outcome_lands_in_anchor():
    g_p, _ = build_matrices(Pair(Gamble.of((1.0, 10.0)), Gamble.of((0.5, 10.0))), S)
    assert [t.symbol for t in g_p.cell("anchor")] == ["1_X"]


sym = st.sampled_from(["a", "b", "c"])


@given(st.floats(0.01, 0.99), st.floats(1, 5000), st.floats(0.01, 0.99), st.floats(1, 5000))
def test_product_commutative_and_associative(p1, v1, p2, v2):
    pair = Pair(Gamble.of((p1, v1)), Gamble.of((p2, v2)))
    g_p, g_v = build_matrices(pair, S)
    assert product(g_p, g_v).shape() == product(g_v, g_p).shape()
    empty = type(g_p).from_tokens([])
    assert product(product(g_p, g_v), empty).shape() == product(g_p, product(g_v, empty)).shape()
    assert len(product(g_p, g_v)) == len(g_p) + len(g_v)
