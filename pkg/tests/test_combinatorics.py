import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_leak.combinatorics import (
    count_outputs,
    enumerate_outputs,
    enumerate_spec_outputs,
    floor_sum,
    gcd,
    is_injective,
    normalize,
    prefix_count,
    preimage_table,
    residues,
)
from affine_leak.domain import AffineSpec, IntegerInterval, NormalizedAffine
from affine_leak.errors import DomainTooLarge, NotCoprime, ZeroCoefficient

from oracles import brute_outputs


@pytest.mark.parametrize("a, b, expected", [(12, 18, 6), (0, 5, 5), (69, 581, 1), (0, 0, 0), (-12, 18, 6)])
def test_gcd(a, b, expected):
    assert gcd(a, b) == expected


@given(st.integers(-10**40, 10**40), st.integers(-10**40, 10**40))
def test_gcd_agrees_with_math(a, b):
    assert gcd(a, b) == math.gcd(a, b)


@pytest.mark.parametrize("p, q, expected", [(1, 1, 0), (3, 4, 3), (5, 7, 12)])
def test_floor_sum_examples(p, q, expected):
    assert floor_sum(p, q) == expected


def test_floor_sum_rejects_non_coprime():
    with pytest.raises(NotCoprime):
        floor_sum(4, 6)


@pytest.mark.parametrize(
    "spec, expected",
    [
        (AffineSpec(5, -3, 4, IntegerInterval(2, 9), IntegerInterval(0, 6)), (3, 4, 7, 6, 1)),
        (AffineSpec(0, 6, 8, IntegerInterval(0, 3), IntegerInterval(0, 5)), (3, 4, 3, 5, 2)),
        (AffineSpec(0, 1, 1, IntegerInterval(0, 4), IntegerInterval(0, 4)), (1, 1, 4, 4, 1)),
    ],
)
def test_normalize_examples(spec, expected):
    na = normalize(spec)
    assert (na.beta_prime, na.gamma_prime, na.n, na.m, na.d) == expected
    raw = brute_outputs(spec.alpha, spec.beta, spec.gamma, spec.y_domain, spec.z_domain)
    assert len(raw) == len(enumerate_outputs(na))


def test_normalize_rejects_zero_coefficients():
    iv = IntegerInterval(0, 3)
    with pytest.raises(ZeroCoefficient):
        normalize(AffineSpec(0, 0, 3, iv, iv))
    with pytest.raises(ZeroCoefficient):
        normalize(AffineSpec(0, 3, 0, iv, iv))


@pytest.mark.parametrize(
    "args, expected",
    [((3, 4, 3, 6), 28), ((3, 4, 7, 6), 40), ((2, 3, 3, 2), 11), ((1, 1, 4, 6), 11)],
)
def test_count_outputs_examples(args, expected):
    na = NormalizedAffine(*args)
    assert count_outputs(na) == expected
    assert len(brute_outputs(0, args[0], args[1], range(args[2] + 1), range(args[3] + 1))) == expected


def test_boundary_m_equals_beta_uses_collision_formula():
    # (n+1)(m+1) would give 12
    na = NormalizedAffine(2, 3, 3, 2)
    assert not is_injective(na)
    assert count_outputs(na) == 11 != na.pair_count()


def test_enumerate_examples():
    assert enumerate_outputs(NormalizedAffine(2, 3, 1, 1)) == [0, 2, 3, 5]
    assert enumerate_outputs(NormalizedAffine(1, 1, 1, 1)) == [0, 1, 2]
    big = enumerate_outputs(NormalizedAffine(3, 4, 7, 6))
    assert (len(big), big[0], big[-1]) == (40, 0, 45)


def test_enumerate_cap():
    with pytest.raises(DomainTooLarge):
        enumerate_outputs(NormalizedAffine(1, 1, 99, 99), cap=9999)
    assert len(enumerate_outputs(NormalizedAffine(1, 1, 99, 99), cap=10000)) == 199


def test_enumerate_set_fallback_matches_bitset():
    # the output range 0..max exceeds the cap, forcing the set path
    na = NormalizedAffine(10**6 + 3, 10**6, 20, 30)
    via_set = enumerate_outputs(na, cap=1000)
    assert via_set == sorted(brute_outputs(0, na.beta_prime, na.gamma_prime, range(21), range(31)))


def test_enumerate_huge_coefficients():
    na = NormalizedAffine(3**50, 2**70, 5, 4)
    assert len(enumerate_outputs(na)) == count_outputs(na) == 30


@pytest.mark.parametrize("args, expected", [((3, 4), 9), ((1, 5), 5), ((2, 3), 5)])
def test_prefix_count_examples(args, expected):
    assert prefix_count(*args) == expected


def test_prefix_count_fig1_by_enumeration():
    outputs = enumerate_outputs(NormalizedAffine(3, 4, 7, 6))
    assert [o for o in outputs if o < 12] == [0, 3, 4, 6, 7, 8, 9, 10, 11]


def test_prefix_count_rejects_non_coprime():
    with pytest.raises(NotCoprime):
        prefix_count(2, 4)


coprime_box = st.tuples(
    st.integers(1, 12), st.integers(1, 12), st.integers(0, 25), st.integers(0, 25)
).filter(lambda t: math.gcd(t[0], t[1]) == 1)


@given(coprime_box)
def test_symmetry_of_output_set(t):
    na = NormalizedAffine(*t)
    outputs = set(enumerate_outputs(na))
    top = na.max_output
    assert all((top - o) in outputs for o in outputs)
    assert min(outputs) == 0 and max(outputs) == top


@given(coprime_box)
def test_middle_interval_is_full(t):
    na = NormalizedAffine(*t)
    b, g = na.beta_prime, na.gamma_prime
    if na.n >= g and na.m >= b:
        outputs = set(enumerate_outputs(na))
        assert all(o in outputs for o in range(b * g, na.max_output - b * g + 1))


@given(coprime_box)
def test_suffix_count_matches_prefix(t):
    na = NormalizedAffine(*t)
    b, g = na.beta_prime, na.gamma_prime
    if na.n >= g and na.m >= b:
        top = na.max_output
        outputs = enumerate_outputs(na)
        assert sum(1 for o in outputs if o >= top - b * g + 1) == prefix_count(b, g)
        assert sum(1 for o in outputs if o < b * g) == prefix_count(b, g)


@given(coprime_box)
def test_collisions_structure_and_location(t):
    na = NormalizedAffine(*t)
    b, g = na.beta_prime, na.gamma_prime
    outputs, ys, zs = preimage_table(na)
    same = outputs[1:] == outputs[:-1]
    dy = (ys[1:] - ys[:-1])[same]
    dz = (zs[1:] - zs[:-1])[same]
    assert np.all(dy % g == 0) and np.all(dy != 0)
    assert np.all(dz == -(dy // g) * b)
    collided = outputs[1:][same]
    assert np.all(collided >= b * g) and np.all(collided <= na.max_output - b * g)
    if is_injective(na):
        assert not same.any()


def test_residue_coverage():
    for b in range(1, 31):
        for g in range(1, 31):
            if math.gcd(b, g) == 1:
                assert residues(b, g) == set(range(g))


def test_normalization_invariance_random_specs():
    rng = random.Random(500)
    nonzero = [k for k in range(-10, 11) if k]
    for _ in range(500):
        lo_y, lo_z = rng.randint(-20, 20), rng.randint(-20, 20)
        y = IntegerInterval(*sorted((lo_y, rng.randint(-20, 20))))
        z = IntegerInterval(*sorted((lo_z, rng.randint(-20, 20))))
        spec = AffineSpec(rng.randint(-100, 100), rng.choice(nonzero), rng.choice(nonzero), y, z)
        assert len(enumerate_spec_outputs(spec)) == count_outputs(normalize(spec))


@settings(max_examples=200)
@given(st.integers(1, 50), st.integers(1, 50))
def test_floor_sum_identity_property(p, q):
    if math.gcd(p, q) == 1:
        assert 2 * floor_sum(p, q) == (p - 1) * (q - 1)
