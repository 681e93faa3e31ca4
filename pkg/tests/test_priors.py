from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_leak.domain import DiscreteDistribution, IntegerInterval
from affine_leak.errors import (
    CenterOutOfRange,
    DegenerateSupport,
    DistributionSyntaxError,
    DuplicateValue,
    SumNotOne,
    SupportMismatch,
    WeightOutOfRange,
)
from affine_leak.priors import (
    parse_distribution,
    parse_rational,
    serialize_distribution,
    spiked_prior,
    uniform_prior,
)


@pytest.mark.parametrize("lo, hi", [(0, 6), (0, 0), (-3, 3)])
def test_uniform_prior(lo, hi):
    support = IntegerInterval(lo, hi)
    d = uniform_prior(support)
    assert all(p == Fraction(1, hi - lo + 1) for _, p in d.masses())


def test_spiked_edges():
    support = IntegerInterval(0, 50)
    point = spiked_prior(support, 0, 1)
    assert point.prob(0) == 1 and point.prob(7) == 0
    assert spiked_prior(support, 0, Fraction(1, 51)) == uniform_prior(support)
    half = spiked_prior(support, 0, Fraction(1, 2))
    assert half.prob(0) == Fraction(1, 2)
    assert all(half.prob(v) == Fraction(1, 100) for v in range(1, 51))


@pytest.mark.parametrize("size", [1, 2, 7, 51])
def test_spiked_uniform_weight_is_uniform(size):
    support = IntegerInterval(0, size - 1)
    assert spiked_prior(support, size // 2, Fraction(1, size)) == uniform_prior(support)


def test_spiked_errors():
    support = IntegerInterval(0, 5)
    with pytest.raises(CenterOutOfRange):
        spiked_prior(support, 9, Fraction(1, 2))
    with pytest.raises(WeightOutOfRange):
        spiked_prior(support, 0, Fraction(3, 2))
    with pytest.raises(DegenerateSupport):
        spiked_prior(IntegerInterval(4, 4), 4, Fraction(1, 2))
    assert spiked_prior(IntegerInterval(4, 4), 4, 1).prob(4) == 1


def test_parse_paper_prior():
    d = parse_distribution("0\t1/2\n1\t0/1\n2\t1/2\n", IntegerInterval(0, 2))
    assert d.as_dict() == {0: Fraction(1, 2), 1: 0, 2: Fraction(1, 2)}


def test_parse_uniform_file():
    support = IntegerInterval(0, 2)
    assert parse_distribution("0\t1/3\n1\t1/3\n2\t1/3\n", support) == uniform_prior(support)


def test_parse_sum_not_one_reports_deficit():
    with pytest.raises(SumNotOne) as info:
        parse_distribution("0\t1/2\n1\t1/3\n", IntegerInterval(0, 1))
    assert info.value.deficit == Fraction(1, 6)


def test_parse_comments_order_and_integers():
    text = "# prior on Y\n2\t0\n0\t1\n1\t0/5\n"
    assert parse_distribution(text, IntegerInterval(0, 2)).prob(0) == 1


def test_parse_rejects_decimal_with_position():
    with pytest.raises(DistributionSyntaxError) as info:
        parse_distribution("0\t0.5\n1\t1/2\n", IntegerInterval(0, 1))
    assert (info.value.line, info.value.column) == (1, 3)


def test_parse_rejects_bad_value_and_layout():
    with pytest.raises(DistributionSyntaxError):
        parse_distribution("x\t1/2\n", IntegerInterval(0, 1))
    with pytest.raises(DistributionSyntaxError):
        parse_distribution("0 1/2\n", IntegerInterval(0, 1))


def test_parse_duplicates():
    with pytest.raises(DuplicateValue) as info:
        parse_distribution("0\t1/2\n0\t1/2\n", IntegerInterval(0, 1))
    assert info.value.line == 2


def test_parse_missing_value_needs_sparse():
    support = IntegerInterval(0, 2)
    with pytest.raises(SupportMismatch):
        parse_distribution("0\t1/2\n2\t1/2\n", support)
    d = parse_distribution("#sparse\n0\t1/2\n2\t1/2\n", support)
    assert d.prob(1) == 0


def test_parse_value_outside_support():
    with pytest.raises(SupportMismatch):
        parse_distribution("0\t1/2\n5\t1/2\n", IntegerInterval(0, 1))


def test_parse_rational():
    assert parse_rational("3/9") == Fraction(1, 3)
    assert parse_rational("1") == 1
    for bad in ("0.5", "1/0", "-1/2", "a/b", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)


@st.composite
def distributions(draw):
    lo = draw(st.integers(-20, 20))
    size = draw(st.integers(1, 12))
    weights = draw(st.lists(st.integers(0, 20), min_size=size, max_size=size))
    if not any(weights):
        weights[0] = 1
    total = sum(weights)
    support = IntegerInterval(lo, lo + size - 1)
    return DiscreteDistribution.from_masses(support, {lo + i: Fraction(w, total) for i, w in enumerate(weights)})


@settings(max_examples=200)
@given(distributions(), st.booleans())
def test_serialize_round_trip(d, sparse):
    text = serialize_distribution(d, sparse=sparse)
    again = parse_distribution(text, d.support)
    assert again == d
    assert parse_distribution(serialize_distribution(again), d.support) == d
