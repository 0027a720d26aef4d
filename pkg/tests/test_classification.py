import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from decstruct import Gamble, Pair, SubstitutionScheme
from decstruct.classification import (
    ContractViolation,
    cancel_and_reduce,
    classify,
    classify_ranks,
    superiority,
)
from decstruct.compensatory import expected_value
from decstruct.core import Dimension, Option, Order, Outcome, StructureClass
from decstruct.phenomena import ALLAIS_SCHEME, allais_pairs
from decstruct.substitution import build_matrices

S = SubstitutionScheme(value_cutoffs=(100.0, 1000.0))


def klass(px, vx, py, vy, scheme=S):
    return classify(*build_matrices(Pair(Gamble.of((px, vx)), Gamble.of((py, vy))), scheme))


@pytest.mark.parametrize(
    "args, text",
    [
        ((0.2, 50, 0.5, 500), "ZeroOrder(Y)"),
        ((0.8, 5000, 0.5, 500), "ZeroOrder(X)"),
        ((0.2, 50, 0.25, 500), "FirstOrder(PROB,Y)"),
        ((0.5, 500, 0.6, 600), "SecondOrderParallel"),
        ((0.1, 2000, 0.5, 50), "SecondOrderCrossing"),
        ((0.9, 50, 0.5, 60), "FirstOrder(VALUE,X)"),
        ((1.0, 50, 0.5, 60), "FirstOrder(VALUE,X)"),
    ],
)
def test_classify_examples(args, text):
    assert str(klass(*args)) == text


def test_classify_needs_single_tokens():
    pair = Pair(Gamble.of((0.5, 10), (0.5, 500)), Gamble.of((0.4, 10)))
    with pytest.raises(ContractViolation):
        classify(*build_matrices(pair, S))


def test_rank_table_is_exhaustive_and_exclusive():
    for ranks in itertools.product(range(5), repeat=4):
        assert isinstance(classify_ranks(*ranks), StructureClass)


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_classification_symmetric_under_swap(px, vx, py, vy):
    a, b = classify_ranks(px, vx, py, vy), classify_ranks(py, vy, px, vx)
    assert a.order is b.order
    if a.favored is not None:
        assert b.favored is a.favored.other
    assert a.tied is b.tied


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_zero_order_iff_superiority_single_branch(px, vx, py, vy):
    """For one token per option and dimension, superiority is exactly strict dominance on both axes."""
    cls = classify_ranks(px, vx, py, vy)
    dominant = (px > py and vx >= vy) or (px >= py and vx > vy)
    dominated = (py > px and vy >= vx) or (py >= px and vy > vx)
    # strict on both axes is zero order; strict on one with a tie is first order
    if cls.order is Order.ZERO:
        assert dominant or dominated
    if not (dominant or dominated):
        assert cls.order in (Order.PARALLEL, Order.CROSSING)


def test_superiority_allais():
    first, second = allais_pairs()
    assert superiority(*build_matrices(first, ALLAIS_SCHEME)) is Option.X
    assert superiority(*build_matrices(second, ALLAIS_SCHEME)) is None


def test_cancel_shared_zero_consequence():
    _, second = allais_pairs()
    res = cancel_and_reduce(second, ALLAIS_SCHEME)
    assert res.verdict is None and not res.by_superiority
    assert res.cancelled == ((1, 1),)
    assert res.pair.x.is_single_branch and res.pair.y.is_single_branch
    assert res.pair.x.explicit[0].v == 1_000_000 and res.pair.y.explicit[0].v == 5_000_000


def test_cancel_identical_gambles_is_indifferent():
    g = Gamble.of((0.3, 50), (0.4, 500))
    res = cancel_and_reduce(Pair(g, g), S)
    assert res.verdict is Outcome.INDIFFERENT
    assert len(res.cancelled) == 2


def test_cancel_by_superiority():
    res = cancel_and_reduce(Pair(Gamble.of((0.5, 500), (0.4, 50)), Gamble.of((0.2, 50))), S)
    assert res.by_superiority and res.verdict is Outcome.X


def test_no_cancellation_keeps_best_branch():
    # X holds the higher probability, Y the higher reward: nobody is superior
    pair = Pair(Gamble.of((0.8, 50), (0.1, 60)), Gamble.of((0.5, 500), (0.2, 5000)))
    res = cancel_and_reduce(pair, S)
    assert res.pair is not None and res.cancelled == ()
    assert res.pair.x.explicit[0].v == 60 and res.pair.y.explicit[0].v == 5000


pos_p = st.floats(0.001, 0.999)
pos_v = st.floats(0.01, 10_000)


@given(pos_p, pos_v, pos_p, pos_v)
def test_zero_order_agrees_with_ev(px, vx, py, vy):
    pair = Pair(Gamble.of((px, vx)), Gamble.of((py, vy)))
    cls = classify(*build_matrices(pair, S))
    if cls.order is Order.ZERO:
        ex, ey = expected_value(pair.x), expected_value(pair.y)
        assert (ex > ey) if cls.favored is Option.X else (ey > ex)


@given(pos_p, pos_v, pos_p, pos_v, st.floats(0.1, 10))
def test_invariant_under_value_rescaling(px, vx, py, vy, k):
    scaled = SubstitutionScheme(value_cutoffs=(100.0 * k, 1000.0 * k))
    assert klass(px, vx, py, vy) == klass(px, vx * k, py, vy * k, scaled) or (
        # float rounding can push a product across a cutoff
        any(abs(v * k - c) < 1e-6 * c for v in (vx, vy) for c in scaled.value_cutoffs)
    )


def test_first_order_tie_dimension():
    cls = klass(0.2, 50, 0.25, 500)
    assert cls.tied is Dimension.PROB and cls.favored is Option.Y
