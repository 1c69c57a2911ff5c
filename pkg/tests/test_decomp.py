import math

import numpy as np
import pytest

from chenap._errors import DomainError, ResourceError
from chenap.arith import APClass, mangoldt
from chenap.decomp import (
    SieveParams,
    b_weight,
    b_weights,
    chen_count_ap,
    decompose,
    eval_A1,
    eval_A2_single,
    eval_A2_sum,
    eval_A3,
    eval_A4_sum,
    theorem_lhs,
    window_terms,
)

import oracles

CLASSES = [(1, 1), (2, 3), (1, 5), (2, 5), (3, 7), (14, 15)]


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300) if b else abs(a)


def test_params():
    p = SieveParams(10**4)
    assert p.z == pytest.approx(10 ** 0.5)
    assert p.eps_x == pytest.approx(math.log(1e4) ** -0.5)
    assert p.D < math.sqrt(1e4)
    assert (p.z_min, p.cube) == (4, 21)
    assert (p.n_lo, p.n_hi) == (5000, 9998)
    assert p.a2_primes().tolist() == [5, 7, 11, 13, 17, 19]
    with pytest.raises(DomainError):
        SieveParams(8)
    with pytest.raises(ResourceError):
        SieveParams(1e6, max_n=10**5)


def test_real_x_rounding():
    p = SieveParams(1001.5)
    assert (p.n_lo, p.n_hi) == (501, 999)
    assert (p.b_lo, p.b_hi) == (503, 1001)


@pytest.fixture(scope="module")
def naive_1e4():
    return {c: oracles.decomposition(10**4, *c) for c in CLASSES}


@pytest.mark.parametrize("cls", CLASSES)
def test_sums_match_naive_oracle(cls, naive_1e4):
    A1, A2, A3, A4, L, _ = naive_1e4[cls]
    params, ap = SieveParams(10**4), APClass(*cls)
    assert rel(eval_A1(params, ap), A1) <= 1e-9
    assert rel(eval_A2_sum(params, ap), A2) <= 1e-9
    assert rel(eval_A3(params, ap), A3) <= 1e-9
    assert rel(eval_A4_sum(params, ap), A4) <= 1e-9
    assert rel(theorem_lhs(params, ap), L) <= 1e-9


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19])
def test_A2_single_matches_oracle(p):
    *_, A2p = oracles.decomposition(10**4, 1, 1, only_p=p)
    assert rel(eval_A2_single(SieveParams(10**4), APClass(1, 1), p), A2p) <= 1e-9


def test_A2_additivity():
    params = SieveParams(10**4)
    for cls in CLASSES:
        ap = APClass(*cls)
        parts = [eval_A2_single(params, ap, int(p)) for p in params.a2_primes()]
        assert math.fsum(parts) == pytest.approx(eval_A2_sum(params, ap), rel=1e-12)


def test_A2_single_range():
    params = SieveParams(10**4)
    with pytest.raises(DomainError):
        eval_A2_single(params, APClass(1, 1), 23)  # 23 > 10^(4/3)
    with pytest.raises(DomainError):
        eval_A2_single(params, APClass(1, 1), 3)


def test_x100_degenerate():
    params = SieveParams(100)
    ap = APClass.unchecked(1, 3)
    # no prime lies below 100^(1/8), so A1 is the plain class sum
    direct = math.fsum(mangoldt(n) for n in range(50, 99) if n % 3 == 1)
    assert eval_A1(params, ap) == pytest.approx(direct, rel=1e-15)
    A1, A2, A3, A4, L, _ = oracles.decomposition(100, 1, 3)
    assert eval_A2_sum(params, ap) == pytest.approx(A2, rel=1e-12)
    assert eval_A4_sum(params, ap) == pytest.approx(A4, rel=1e-12)
    assert eval_A3(params, ap) == pytest.approx(A3, abs=1e-12)


def test_empty_class_gives_zero():
    # residue 0 mod 7 carries only 7 itself, which is outside [x/2, x - 2]
    ap = APClass.unchecked(7, 7)
    params = SieveParams(10**4)
    assert eval_A1(params, ap) == 0.0
    assert theorem_lhs(params, ap) == 0.0


# values from the first certified run at x = 10^6
REGRESSION_1E6 = {
    (2, 3): (186494.54279557403, 153383.62290974797, 12489.075252725, 10089.374569429929,
             131093.58345525485),
    (2, 5): (62356.78092726592, 51398.58455747842, 4128.01602349724, 3169.938265012394,
             43684.09240517591),
}


@pytest.mark.parametrize("cls", sorted(REGRESSION_1E6))
def test_regression_1e6(cls):
    r = decompose(SieveParams(10**6), APClass(*cls))
    got = (r.A1, r.A2_sum, r.A3, r.A4_sum, r.lhs_theorem)
    for g, e in zip(got, REGRESSION_1E6[cls]):
        assert g == pytest.approx(e, rel=1e-12)


def test_A4_envelope_1e6():
    x = 1e6
    assert eval_A4_sum(SieveParams(x), APClass(1, 1)) < x ** 0.875 * math.log(x) ** 2


@pytest.mark.parametrize("x", [100, 1000, 10**4, 10**5, 10**6])
def test_summed_lemma(x):
    for cls in CLASSES:
        r = decompose(SieveParams(x), APClass(*cls))
        assert r.lemma_holds
        assert min(r.A1, r.A2_sum, r.A3, r.A4_sum, r.lhs_theorem) >= 0


def test_workers_identical():
    params, ap = SieveParams(10**6), APClass(1, 5)
    one = window_terms.__wrapped__(params, ap, 1)
    four = window_terms.__wrapped__(params, ap, 4)
    for a, b in zip(one.__dict__.values(), four.__dict__.values()):
        np.testing.assert_array_equal(a, b)


def test_report_dict_fields():
    d = decompose(SieveParams(10**4), APClass(2, 3)).to_dict()
    for key in ("x", "ap", "A1", "A2_sum", "A3", "A4_sum", "combination", "lhs_theorem",
                "normalizer", "lemma_holds"):
        assert key in d
    assert d["ap"] == {"a": 2, "q": 3}
    assert d["combination"] == pytest.approx(d["A1"] - d["A2_sum"] / 2 - d["A3"] / 2 - d["A4_sum"])


def test_b_weight_examples():
    params = SieveParams(10**4)
    assert b_weight(9973, params) == 0
    assert b_weight(17 * 29 * 31, params) == 0
    assert b_weight(7 * 31 * 37, params) == 1
    assert b_weight(3 * 41 * 43, params) == 0  # 3 < 10^(1/2)


def test_b_weight_is_indicator_1e6():
    params = SieveParams(10**6)
    n, c = b_weights(params)
    assert set(np.unique(c).tolist()) == {1}
    assert np.all((n >= params.b_lo) & (n <= params.b_hi))
    for k in n[:: max(1, n.size // 300)].tolist():
        assert b_weight(k, params) == 1


def test_b_weights_match_scalar():
    params = SieveParams(20_000)
    n, _ = b_weights(params)
    scalar = [k for k in range(params.b_lo, params.b_hi + 1) if b_weight(k, params)]
    assert n.tolist() == scalar


def test_chen_count_examples():
    assert chen_count_ap(10, APClass.unchecked(1, 3)) == 1
    assert chen_count_ap(3, APClass(1, 1)) == 2
    assert chen_count_ap(100, APClass(1, 1)) >= 8
