from fractions import Fraction

import numpy as np
import pytest

from chenap._errors import DomainError, ResourceError
from chenap.arith import APClass, valid_classes
from chenap.chen import (
    KIND_ORDER,
    Branch,
    Kind,
    chen_census,
    classify,
    classify_range,
    is_chen_prime,
    lemma14_rhs,
    lemma14_window,
    p2_indicator,
    verify_lemma14,
)

import oracles


@pytest.mark.parametrize(
    "n,kind,factors",
    [
        (13, Kind.PRIME, (13,)),
        (35, Kind.SEMIPRIME, (5, 7)),
        (105, Kind.TRIPLE_PRODUCT, (3, 5, 7)),
        (49, Kind.SEMIPRIME, (7, 7)),
        (12, Kind.TRIPLE_PRODUCT, (2, 2, 3)),
        (16, Kind.PRIME_POWER, (2, 2, 2, 2)),
        (210, Kind.OTHER, (2, 3, 5, 7)),
    ],
)
def test_classify_examples(n, kind, factors):
    c = classify(n)
    assert c.kind is kind and c.factors == factors and c.min_factor == factors[0]


def test_classify_rejects_small():
    with pytest.raises(DomainError):
        classify(1)


def test_classify_range_agrees_with_trial_division_to_1e6():
    n_hi = 10**6
    omega = oracles.trial_division_big_omega(2, n_hi)
    got = classify_range(2, n_hi)
    np.testing.assert_array_equal(got <= 2, omega <= 3)
    np.testing.assert_array_equal(got[omega <= 3], omega[omega <= 3] - 1)


def test_scalar_classify_matches_range():
    codes = classify_range(2, 20_000)
    for n, code in zip(range(2, 20_001), codes.tolist()):
        c = classify(n)
        assert KIND_ORDER[code] is c.kind
        assert list(c.factors) == oracles.trial_factors(n)


def test_chen_examples():
    assert is_chen_prime(5).branch is Branch.TWIN
    v7 = is_chen_prime(7)
    assert v7.branch is Branch.QUALIFIED_SEMIPRIME and v7.witness == (3, 3)
    v2 = is_chen_prime(2)
    assert v2.branch is Branch.QUALIFIED_SEMIPRIME and v2.witness == (2, 2)
    assert is_chen_prime(3).branch is Branch.TWIN
    with pytest.raises(DomainError):
        is_chen_prime(9)


def test_chen_exponent_threshold_is_exact():
    # 2^8 = 256: for p + 2 = 2 * r the factor 2 qualifies iff p <= 256
    v = is_chen_prime(23)  # 25 = 5 * 5, 5^8 >= 23
    assert v.is_chen
    # Chen's original 1/10 threshold is a configuration away
    assert is_chen_prime(23, Fraction(1, 10)).is_chen
    with pytest.raises(DomainError):
        is_chen_prime(5, 1.5)


def test_chen_matches_literal_definition_to_1e5():
    primes = oracles.trial_division_primes(10**5)
    twins = set(oracles.twin_primes(10**5))
    for p in primes.tolist():
        v = is_chen_prime(p)
        f = oracles.trial_factors(p + 2)
        expected = len(f) == 1 or (len(f) == 2 and f[0] ** 8 >= p)
        assert v.is_chen == expected
        if p in twins:
            assert v.branch is Branch.TWIN
        if v.branch is Branch.QUALIFIED_SEMIPRIME:
            a, b = v.witness
            assert a * b == p + 2 and a ** 8 >= p and b ** 8 >= p


@pytest.mark.parametrize("n,expected", [(97, 1), (95, 1), (99, 0)])
def test_p2_indicator(n, expected):
    assert p2_indicator(n, 100) == expected


def test_p2_indicator_window():
    with pytest.raises(DomainError):
        p2_indicator(21, 100)  # 21 <= 100^(2/3)
    with pytest.raises(DomainError):
        p2_indicator(101, 100)


def test_lemma14_rhs_examples():
    assert lemma14_rhs(997, 1000) == 1
    assert lemma14_rhs(961, 1000) == 1
    # 902 = 2 * 11 * 41; only p = 2 lies at or below 1000^(1/3) = 10
    assert lemma14_rhs(902, 1000) == 0
    assert lemma14_rhs(902, 1000) == oracles.lemma_rhs(902, 1000)


@pytest.mark.parametrize("x", [100, 1000, 12345])
def test_lemma14_rhs_matches_oracle(x):
    lo, hi = lemma14_window(x)
    for n in range(lo, hi + 1):
        assert lemma14_rhs(n, x) == oracles.lemma_rhs(n, x)
        assert p2_indicator(n, x) == int(len(oracles.trial_factors(n)) <= 2)


def test_window_endpoints():
    assert lemma14_window(1000) == (101, 1000)
    assert lemma14_window(100) == (22, 100)


@pytest.mark.parametrize("x", [100, 1000, 10**5, 999_999.5])
def test_verify_lemma14_empty(x):
    assert verify_lemma14(x) == []


def test_verify_lemma14_errors():
    with pytest.raises(DomainError):
        verify_lemma14(7)
    with pytest.raises(ResourceError):
        verify_lemma14(10**6, max_n=10**5)


def test_twin_count_100():
    c = chen_census(100, APClass(1, 1))
    assert c.twin == 8
    assert oracles.twin_primes(100) == [3, 5, 11, 17, 29, 41, 59, 71]
    assert c.total >= 8


def test_census_small_x():
    assert chen_census(10, APClass.unchecked(1, 3)).total == 1  # only 7: 9 = 3 * 3
    assert chen_census(3, APClass(1, 1)).total == 2  # 2 and 3 under the literal definition
    assert chen_census(3, APClass(1, 1), exclude_small=True).total == 0


@pytest.mark.parametrize("q", [1, 3, 5, 7])
def test_census_matches_oracle(q):
    x = 20_000
    for ap in valid_classes(q):
        assert chen_census(x, ap).total == oracles.chen_count(x, ap.a, q)


def test_census_segment_boundaries():
    # 2^18 = 262144 is the segment size; straddle a few boundaries
    x = 3 * (1 << 18) + 1
    full = chen_census(x, APClass(1, 1))
    primes = oracles.trial_division_primes(x + 2)
    pset = set(primes.tolist())
    count = 0
    for p in primes.tolist():
        if p > x:
            break
        m = p + 2
        if m in pset:
            count += 1
            continue
        f = oracles.trial_factors(m)
        if len(f) == 2 and f[0] ** 8 >= p:
            count += 1
    assert full.total == count


def test_census_exponent_tightening():
    loose = chen_census(10**5, APClass(1, 1), Fraction(1, 10)).total
    tight = chen_census(10**5, APClass(1, 1), Fraction(1, 3)).total
    base = chen_census(10**5, APClass(1, 1)).total
    assert tight <= base <= loose
