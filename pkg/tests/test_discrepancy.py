import math

import pytest

from chenap._errors import DomainError, ResourceError
from chenap.arith import euler_phi
from chenap.decomp import SieveParams, b_weight
from chenap.discrepancy import (
    Weight,
    bv_level,
    bv_sum,
    combined_residue,
    crt_pair,
    delta,
    psi,
    q_conditioned_delta,
    row,
    sw_residual,
    weight_support,
)

import oracles


def naive_delta(f, lo, hi, a, d):
    cls = math.fsum(f(n) for n in range(lo, hi + 1) if n % d == a % d)
    cop = math.fsum(f(n) for n in range(lo, hi + 1) if math.gcd(n, d) == 1)
    return cls - cop / euler_phi(d)


@pytest.mark.parametrize("w", list(Weight))
def test_d1_is_zero(w):
    assert delta(w, 1e4, 1, 1) == 0.0


def test_small_example_against_oracle():
    got = delta(Weight.MANGOLDT, 100, 1, 4)
    assert got == pytest.approx(naive_delta(oracles.mangoldt, 1, 100, 1, 4), abs=1e-12)


def test_window_weight_against_oracle():
    x = 5000
    for d, a in [(3, 1), (7, 5), (10, 3)]:
        got = delta(Weight.MANGOLDT_WINDOW, x, a, d)
        assert got == pytest.approx(naive_delta(oracles.mangoldt, 2500, 4998, a, d), abs=1e-9)


def test_b_weight_against_oracle():
    x = 20_000
    params = SieveParams(x)
    for d, a in [(3, 2), (8, 5), (11, 4)]:
        got = delta(Weight.B, x, a, d)
        want = naive_delta(lambda k: b_weight(k, params), params.b_lo, params.b_hi, a, d)
        assert got == pytest.approx(want, abs=1e-9)


@pytest.mark.parametrize("w", list(Weight))
def test_row_sum_identity(w):
    x = 1e5
    for d in range(1, 101):
        s = math.fsum(delta(w, x, a, d) for a in range(1, d + 1) if math.gcd(a, d) == 1)
        assert abs(s) < 1e-9


def test_delta_validation():
    with pytest.raises(DomainError):
        delta(Weight.MANGOLDT, 1e4, 2, 4)
    with pytest.raises(DomainError):
        delta(Weight.MANGOLDT, 1e4, 5, 4)
    with pytest.raises(ResourceError):
        weight_support(Weight.MANGOLDT, 2e9)


def test_row_worst_class():
    r = row(Weight.MANGOLDT, 1e4, 12)
    assert math.gcd(r.worst_a, 12) == 1 and r.delta_abs >= 0
    assert r.delta_abs == pytest.approx(abs(delta(Weight.MANGOLDT, 1e4, r.worst_a, 12)))


def test_bv_trivial():
    s = bv_sum(1e4, 1, Weight.MANGOLDT)
    assert s.total == 0.0 and len(s.rows) == 1
    with pytest.raises(DomainError):
        bv_sum(1e4, 0.5)
    with pytest.raises(ResourceError):
        bv_sum(1e6, 1000, max_work=10**6)


# values from the first certified run at D = sqrt(x)
BV_REGRESSION = {
    Weight.MANGOLDT: 0.3932319615121014,
    Weight.MANGOLDT_WINDOW: 0.3650482214521028,
    Weight.B: 0.017566209650540246,
}


@pytest.mark.parametrize("w", list(Weight))
def test_bv_regression_1e5(w):
    s = bv_sum(1e5, bv_level(1e5), w)
    assert s.total > 0
    assert s.total / 1e5 == pytest.approx(BV_REGRESSION[w], rel=1e-12)
    for r in s.rows:
        assert math.gcd(r.worst_a, r.d) == 1 and r.delta_abs >= 0


def test_bv_b_reports_noncoprime_mass():
    s = bv_sum(1e5, bv_level(1e5), Weight.B)
    assert s.noncoprime_mass > 0
    assert bv_sum(1e5, bv_level(1e5), Weight.MANGOLDT).noncoprime_mass == 0


def test_bv_csv_and_dict():
    s = bv_sum(1e4, 10, Weight.MANGOLDT)
    lines = s.rows_csv().splitlines()
    assert lines[0] == "d,worst_a,delta_abs" and len(lines) == 11
    d = s.to_dict()
    assert d["moduli"] == 10 and d["normalized_total"] == pytest.approx(s.total / 1e4)


def test_psi_and_sw():
    x = 1e6
    ps = oracles.trial_division_primes(10**6)
    direct = math.fsum(math.log(p) for p in ps.tolist() if p % 3 == 1)
    direct += math.fsum(
        math.log(p) * (sum(1 for k in range(2, 21) if p**k <= x and p**k % 3 == 1))
        for p in ps[ps <= 1000].tolist()
    )
    assert psi(x, 1, 3) == pytest.approx(direct, rel=1e-12)
    assert sw_residual(x, 1, 3) == pytest.approx(abs(direct - x / 2), rel=1e-9)
    assert sw_residual(x, 1, 1) == pytest.approx(abs(psi(x, 1, 1) - x))
    for d in (3, 4, 5):
        for a in range(1, d):
            if math.gcd(a, d) == 1:
                assert sw_residual(x, a, d) / x < 0.02
    with pytest.raises(DomainError):
        sw_residual(x, 3, 6)
    with pytest.raises(DomainError):
        sw_residual(x, 1, 1000, A=1)


def test_crt():
    assert crt_pair(2, 3, 3, 5) == 8
    c = combined_residue(2, 3, 7)
    assert c % 3 == 2 and (c + 2) % 7 == 0
    with pytest.raises(DomainError):
        crt_pair(1, 4, 1, 6)
    v = q_conditioned_delta(Weight.MANGOLDT, 1e4, 2, 3, 5)
    assert v == delta(Weight.MANGOLDT, 1e4, combined_residue(2, 3, 5), 15)


def test_delta_is_deterministic():
    weight_support.cache_clear()
    a = [delta(Weight.B, 1e5, 1, d) for d in (7, 11, 13)]
    weight_support.cache_clear()
    b = [delta(Weight.B, 1e5, 1, d) for d in (7, 11, 13)]
    assert a == b
