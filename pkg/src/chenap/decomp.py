"""Exact evaluation of the four weighted sums behind the Chen-prime lower bound.

For a real ``x`` and a residue class ``a mod q`` all sums run over
``ceil(x/2) <= n <= floor(x - 2)`` with weight ``Lambda(n) [n = a mod q]``:

* ``A1``     - ``n + 2`` has no prime factor below ``z = x^(1/8)``;
* ``A2,p``   - as ``A1`` and additionally ``p | n + 2``, for ``z <= p <= x^(1/3)``;
* ``A3``     - ``n + 2 = p1 p2 p3`` with ``z <= p1 <= x^(1/3) < p2 <= p3``;
* ``A4,p``   - as ``A1`` and additionally ``p^2 | n + 2``.

Summing the pointwise almost-prime inequality over the window gives
``lhs_theorem >= A1 - A2_sum/2 - A3/2 - A4_sum``, which :func:`decompose`
reports together with every term.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Dict, Optional, Tuple

import numpy as np

from ._errors import DomainError, ResourceError
from ._exact import as_fraction, iroot_ceil, iroot_floor
from .arith import APClass, phi2
from .chen import DEFAULT_EXPONENT, chen_census
from .primes import (
    DEFAULT_MAX_N,
    IntervalFactorization,
    SegmentedRange,
    factorize,
    iter_factorized_segments,
    sieve_primes,
)

_SEGMENT = 1 << 18


@dataclass(frozen=True)
class SieveParams:
    """Sieve levels for a given ``x``: ``z = x^(1/8)``, ``D = x^(1/2 - eps_x)``, ``eps_x = (log x)^(-1/2)``."""

    x: float
    max_n: int = DEFAULT_MAX_N

    def __post_init__(self):
        if not self.x > 8:
            raise DomainError(f"x must exceed 8, got {self.x}")
        if self.x > self.max_n:
            raise ResourceError(f"x = {self.x:g} exceeds the configured maximum {self.max_n}")

    @property
    def xq(self) -> Fraction:
        return as_fraction(self.x)

    @property
    def eps_x(self) -> float:
        return math.log(self.x) ** -0.5

    @property
    def z(self) -> float:
        return self.x ** 0.125

    @property
    def D(self) -> float:
        return self.x ** (0.5 - self.eps_x)

    @property
    def z_min(self) -> int:
        """Smallest integer ``>= z``; ``p < z`` iff ``p < z_min``."""
        return iroot_ceil(self.xq, 8)

    @property
    def cube(self) -> int:
        """Largest integer ``<= x^(1/3)``."""
        return iroot_floor(self.xq, 3)

    @property
    def n_lo(self) -> int:
        return math.ceil(self.xq / 2)

    @property
    def n_hi(self) -> int:
        return math.floor(self.xq - 2)

    @property
    def b_lo(self) -> int:
        """Lower end of the support ``x/2 + 2 <= n <= x`` of the triple weight."""
        return math.ceil(self.xq / 2 + 2)

    @property
    def b_hi(self) -> int:
        return math.floor(self.xq)

    def a2_primes(self) -> np.ndarray:
        """Primes ``p`` with ``z <= p <= x^(1/3)``."""
        return sieve_primes(max(self.cube, 2)).between(self.z_min, self.cube)


def triple_counts(fz: IntervalFactorization, z_min: int, cube: int) -> np.ndarray:
    """Number of ordered factorizations ``n = p1 p2 p3`` with ``z_min <= p1 <= cube < p2 <= p3``.

    All three choices of ``p1`` from the multiset of factors are tried, so a
    value above 1 would be reported rather than silently capped.
    """
    big_omega = fz.big_omega()
    a = fz.least_factor()
    c = fz.largest_factor()
    n = fz.numbers
    three = big_omega == 3
    b = np.where(three, n // np.where(three, a * c, 1), 0)

    def ok(p1, rest_min):
        return (p1 >= z_min) & (p1 <= cube) & (rest_min > cube)

    count = ok(a, b).astype(np.int64)
    count += (ok(b, a) & (b != a)).astype(np.int64)
    count += (ok(c, a) & (c != b)).astype(np.int64)
    return np.where(three, count, 0)


@dataclass(frozen=True)
class WindowTerms:
    """Per-``n`` data for the ``n`` in the window carrying ``Lambda_{a,q}(n) > 0``."""

    n: np.ndarray
    lam: np.ndarray
    coprime: np.ndarray
    p2: np.ndarray
    k2: np.ndarray
    k4: np.ndarray
    t3: np.ndarray


def _terms_for_segment(s: int, e: int, z_min: int, cube: int, a: int, q: int):
    empty = tuple(np.zeros(0, dtype=t) for t in
                  (np.int64, np.float64, bool, bool, np.int64, np.int64, np.int64))
    if e < s:
        return empty
    out = []
    rng = SegmentedRange(s, e + 2, _SEGMENT + 2)
    fz = next(iter_factorized_segments(rng))
    n = fz.numbers[:-2]
    omega = fz.omega()
    sel = np.flatnonzero((omega[:-2] == 1) & (n % q == a % q))
    if sel.size == 0:
        return empty
    mi = sel + 2
    lpf = fz.least_factor()
    lam = np.log(lpf[sel].astype(np.float64))
    coprime = lpf[mi] >= z_min
    p2 = fz.big_omega()[mi] <= 2
    band = (fz.primes >= z_min) & (fz.primes <= cube)
    k2 = fz.count_rows(band)[mi]
    k4 = fz.count_rows(band & (fz.exponents >= 2))[mi]
    t3 = triple_counts(fz, z_min, cube)[mi]
    out = (n[sel], lam, coprime, p2, k2, k4, t3)
    return out


def _chunk_task(args):
    s, e, z_min, cube, a, q = args
    parts = []
    cur = s
    while cur <= e:
        hi = min(cur + _SEGMENT - 1, e)
        parts.append(_terms_for_segment(cur, hi, z_min, cube, a, q))
        cur = hi + 1
    if not parts:
        parts.append(_terms_for_segment(1, 0, z_min, cube, a, q))
    return tuple(np.concatenate([p[i] for p in parts]) for i in range(7))


@lru_cache(maxsize=8)
def window_terms(params: SieveParams, ap: APClass, workers: int = 1) -> WindowTerms:
    """Collect the support of ``Lambda_{a,q}`` in the window with the features of ``n + 2``.

    The window is split into ``workers`` contiguous chunks; chunks are
    concatenated in order, so the result does not depend on ``workers``.
    """
    lo, hi = params.n_lo, params.n_hi
    z_min, cube = params.z_min, params.cube
    if hi < lo:
        chunks = [(1, 0)]
    else:
        k = max(1, int(workers))
        step = -(-(hi - lo + 1) // k)
        chunks = [(s, min(s + step - 1, hi)) for s in range(lo, hi + 1, step)]
    tasks = [(s, e, z_min, cube, ap.a, ap.q) for s, e in chunks]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk_task, tasks))
    else:
        parts = [_chunk_task(t) for t in tasks]
    arrays = [np.concatenate([p[i] for p in parts]) for i in range(7)]
    for arr in arrays:
        arr.setflags(write=False)
    return WindowTerms(*arrays)


def _weighted_sum(lam: np.ndarray, mult: np.ndarray) -> float:
    """Correctly rounded ``sum(lam * mult)`` for non-negative integer multiplicities."""
    mult = np.asarray(mult, dtype=np.int64)
    return math.fsum(np.repeat(lam, mult).tolist())


def eval_A1(params: SieveParams, ap: APClass, workers: int = 1) -> float:
    w = window_terms(params, ap, workers)
    return _weighted_sum(w.lam, w.coprime)


def eval_A2_single(params: SieveParams, ap: APClass, p: int, workers: int = 1) -> float:
    if not (p >= params.z_min and p <= params.cube):
        raise DomainError(f"p = {p} is outside [x^(1/8), x^(1/3)] = [{params.z_min}, {params.cube}]")
    w = window_terms(params, ap, workers)
    return _weighted_sum(w.lam, w.coprime & ((w.n + 2) % p == 0))


def eval_A2_sum(params: SieveParams, ap: APClass, workers: int = 1) -> float:
    w = window_terms(params, ap, workers)
    return _weighted_sum(w.lam, w.coprime * w.k2)


def eval_A3(params: SieveParams, ap: APClass, workers: int = 1) -> float:
    w = window_terms(params, ap, workers)
    return _weighted_sum(w.lam, w.t3)


def eval_A4_sum(params: SieveParams, ap: APClass, workers: int = 1) -> float:
    w = window_terms(params, ap, workers)
    return _weighted_sum(w.lam, w.coprime * w.k4)


def theorem_lhs(params: SieveParams, ap: APClass, workers: int = 1) -> float:
    w = window_terms(params, ap, workers)
    return _weighted_sum(w.lam, w.coprime & w.p2)


def b_weight(n: int, params: SieveParams) -> int:
    """Number of admissible ordered triples ``n = p1 p2 p3`` for ``x/2 + 2 <= n <= x``.

    ``z <= p1 <= x^(1/3) < p2 <= p3``; the count is 0 or 1 in practice.
    """
    if not params.b_lo <= n <= params.b_hi:
        return 0
    flat = [p for p, e in factorize(n) for _ in range(e)]
    if len(flat) != 3:
        return 0
    z_min, cube = params.z_min, params.cube
    return sum(1 for p1, p2, p3 in set(permutations(flat))
               if z_min <= p1 <= cube < p2 <= p3)


def b_weights(params: SieveParams) -> Tuple[np.ndarray, np.ndarray]:
    """All ``n`` with ``b(n) > 0`` and their counts, ascending."""
    ns, cs = [], []
    lo, hi = params.b_lo, params.b_hi
    if hi >= lo:
        for fz in iter_factorized_segments(SegmentedRange(lo, hi, _SEGMENT), max_n=params.max_n):
            t = triple_counts(fz, params.z_min, params.cube)
            idx = np.flatnonzero(t)
            ns.append(fz.numbers[idx])
            cs.append(t[idx])
    if not ns:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate(ns), np.concatenate(cs)


def chen_count_ap(x, ap: APClass, exponent=DEFAULT_EXPONENT, exclude_small: bool = False,
                  max_n: int = DEFAULT_MAX_N) -> int:
    """Exact number of Chen primes ``p <= x`` with ``p = a (mod q)``."""
    return chen_census(x, ap, exponent, exclude_small, max_n).total


@dataclass(frozen=True)
class DecompositionReport:
    x: float
    ap: APClass
    A1: float
    A2_sum: float
    A3: float
    A4_sum: float
    combination: float
    lhs_theorem: float
    normalizer: float
    extras: Dict[str, float] = field(default_factory=dict, compare=False)

    @property
    def lemma_holds(self) -> bool:
        slack = 1e-9 * max(1.0, abs(self.lhs_theorem), self.A1)
        return self.lhs_theorem >= self.combination - slack

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ap"] = {"a": self.ap.a, "q": self.ap.q}
        extras = d.pop("extras")
        d["lemma_holds"] = self.lemma_holds
        d.update(extras)
        return d


def decompose(params: SieveParams, ap: APClass, workers: int = 1) -> DecompositionReport:
    w = window_terms(params, ap, workers)
    A1 = _weighted_sum(w.lam, w.coprime)
    A2 = _weighted_sum(w.lam, w.coprime * w.k2)
    A3 = _weighted_sum(w.lam, w.t3)
    A4 = _weighted_sum(w.lam, w.coprime * w.k4)
    lhs = _weighted_sum(w.lam, w.coprime & w.p2)
    # the combination is formed from the rounded sums with one fsum
    comb = math.fsum([A1, -A2 / 2, -A3 / 2, -A4])
    x = params.x
    norm = x / (float(phi2(ap.q)) * math.log(x))
    extras = {
        "z": params.z,
        "D": params.D,
        "eps_x": params.eps_x,
        "A1_ratio": A1 / norm,
        "A2_sum_ratio": A2 / norm,
        "A3_ratio": A3 / norm,
        "combination_ratio": comb / norm,
        "lhs_ratio": lhs / norm,
    }
    return DecompositionReport(x, ap, A1, A2, A3, A4, comb, lhs, norm, extras)
