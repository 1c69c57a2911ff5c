"""Prime classes: twin primes, almost primes, Chen primes and triple products.

A prime ``p`` is a Chen prime here when ``p + 2`` is prime, or when
``p + 2 = p1 * p2`` with both prime factors at least ``p**(1/8)`` (the
exponent is configurable).  The module also carries the pointwise
almost-prime inequality

    1[n in P2] >= 1 - 1/2 #{p <= x^(1/3): p | n}
                    - 1/2 #{n = p1 p2 p3 : p1 <= x^(1/3) < p2 <= p3}
                    - #{p <= x^(1/3): p^2 | n},     x^(2/3) < n <= x,

together with an exhaustive checker for it.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from ._errors import DomainError, ResourceError
from ._exact import as_fraction, iroot_ceil, iroot_floor, power_ge
from .arith import APClass
from .primes import (
    DEFAULT_MAX_N,
    SegmentedRange,
    factorize,
    is_prime,
    iter_factorized_segments,
)

DEFAULT_EXPONENT = Fraction(1, 8)


class Kind(enum.Enum):
    PRIME = "prime"
    SEMIPRIME = "semiprime"
    TRIPLE_PRODUCT = "triple_product"
    PRIME_POWER = "prime_power"
    OTHER = "other"


class Branch(enum.Enum):
    TWIN = "twin"
    QUALIFIED_SEMIPRIME = "qualified_semiprime"
    NOT_CHEN = "not_chen"


@dataclass(frozen=True)
class FactorClassification:
    """Factor profile of ``n``.

    ``factors`` lists the prime factors with multiplicity, ascending.  The
    kind is decided by the number of prime factors counted with
    multiplicity: 1 is PRIME, 2 is SEMIPRIME (squares included), 3 is
    TRIPLE_PRODUCT (cubes and ``p^2 q`` included), a single prime raised to a
    power ``>= 4`` is PRIME_POWER, anything else is OTHER.
    """

    n: int
    kind: Kind
    factors: Tuple[int, ...]
    min_factor: int

    @property
    def big_omega(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class ChenVerdict:
    p: int
    is_chen: bool
    branch: Branch
    witness: Optional[Tuple[int, int]] = None


def classify(n: int) -> FactorClassification:
    if n < 2:
        raise DomainError(f"classify needs n >= 2, got {n}")
    fac = factorize(n)
    flat = tuple(p for p, e in fac for _ in range(e))
    k = len(flat)
    if k == 1:
        kind = Kind.PRIME
    elif k == 2:
        kind = Kind.SEMIPRIME
    elif k == 3:
        kind = Kind.TRIPLE_PRODUCT
    elif len(fac) == 1:
        kind = Kind.PRIME_POWER
    else:
        kind = Kind.OTHER
    return FactorClassification(n, kind, flat, flat[0])


KIND_ORDER = (Kind.PRIME, Kind.SEMIPRIME, Kind.TRIPLE_PRODUCT, Kind.PRIME_POWER, Kind.OTHER)


def classify_range(lo: int, hi: int, max_n: int = DEFAULT_MAX_N) -> np.ndarray:
    """Kind of every ``lo <= n <= hi`` as an index into :data:`KIND_ORDER`."""
    out = []
    for fz in iter_factorized_segments(SegmentedRange(max(lo, 2), hi, 1 << 18), max_n=max_n):
        big_omega = fz.big_omega()
        code = np.where(big_omega <= 3, big_omega - 1, np.where(fz.omega() == 1, 3, 4))
        out.append(code)
    return np.concatenate(out)


def _exponent(exponent) -> Fraction:
    r = as_fraction(exponent).limit_denominator(10**6)
    if not 0 < r < 1:
        raise DomainError(f"factor-size exponent must lie in (0, 1), got {exponent}")
    return r


def is_chen_prime(p: int, exponent=DEFAULT_EXPONENT) -> ChenVerdict:
    """Decide Chen membership of the prime ``p`` and return a witness.

    ``p1 >= p**exponent`` is tested as ``p1**den >= p**num`` in integers.
    """
    r = _exponent(exponent)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    m = p + 2
    if is_prime(m):
        return ChenVerdict(p, True, Branch.TWIN)
    flat = classify(m).factors
    if len(flat) == 2:
        p1, p2 = flat
        if p1**r.denominator >= p**r.numerator:
            return ChenVerdict(p, True, Branch.QUALIFIED_SEMIPRIME, (p1, p2))
    return ChenVerdict(p, False, Branch.NOT_CHEN)


def _check_window(n: int, x: Fraction) -> None:
    if not (n**3 > x**2 and n <= x):
        raise DomainError(f"n = {n} is outside (x^(2/3), x] for x = {float(x):g}")


def p2_indicator(n: int, x) -> int:
    """1 if ``n`` has at most two prime factors counted with multiplicity."""
    _check_window(n, as_fraction(x))
    return int(sum(e for _, e in factorize(n)) <= 2)


def lemma14_rhs(n: int, x) -> Fraction:
    """Right-hand side of the almost-prime inequality, as an exact dyadic rational."""
    x = as_fraction(x)
    _check_window(n, x)
    cube = iroot_floor(x, 3)
    fac = factorize(n)
    small = [(p, e) for p, e in fac if p <= cube]
    divides = len(small)
    squares = sum(1 for _, e in small if e >= 2)
    flat = [p for p, e in fac for _ in range(e)]
    triple = int(len(flat) == 3 and flat[0] <= cube < flat[1])
    return 1 - Fraction(divides, 2) - Fraction(triple, 2) - squares


def lemma14_window(x) -> Tuple[int, int]:
    """Integer bounds of ``x^(2/3) < n <= x``."""
    x = as_fraction(x)
    return iroot_floor(x * x, 3) + 1, math.floor(x)


def verify_lemma14(x, max_n: int = DEFAULT_MAX_N) -> List[int]:
    """Every ``n`` in ``(x^(2/3), x]`` where the almost-prime inequality fails.

    The check is exact: both sides are doubled and compared as integers.
    """
    x = as_fraction(x)
    if x < 8:
        raise DomainError("verify_lemma14 needs x >= 8")
    lo, hi = lemma14_window(x)
    if hi > max_n:
        raise ResourceError(f"x = {float(x):g} exceeds the configured maximum {max_n}")
    cube = iroot_floor(x, 3)
    bad: List[int] = []
    for fz in iter_factorized_segments(SegmentedRange(max(lo, 2), hi, 1 << 18)):
        small = fz.primes <= cube
        divides = fz.count_rows(small)
        squares = fz.count_rows(small & (fz.exponents >= 2))
        big_omega = fz.big_omega()
        p1 = fz.least_factor()
        p3 = fz.largest_factor()
        n = fz.numbers
        with np.errstate(divide="ignore"):
            p2 = n // (p1 * p3)
        triple = (big_omega == 3) & (p1 <= cube) & (p2 > cube)
        twice_rhs = 2 - divides - triple.astype(np.int64) - 2 * squares
        twice_lhs = 2 * (big_omega <= 2)
        bad.extend(n[twice_lhs < twice_rhs].tolist())
    return bad


@dataclass(frozen=True)
class ChenCensus:
    x: float
    ap: APClass
    total: int
    twin: int
    qualified_semiprime: int
    exponent: Fraction = DEFAULT_EXPONENT
    excluded_small: bool = False


def chen_census(
    x,
    ap: APClass,
    exponent=DEFAULT_EXPONENT,
    exclude_small: bool = False,
    max_n: int = DEFAULT_MAX_N,
) -> ChenCensus:
    """Count Chen primes ``p <= x`` with ``p = a (mod q)``, split by branch.

    With ``exclude_small`` the primes 2 and 3 are left out of the count.
    """
    r = _exponent(exponent)
    xf = as_fraction(x)
    if xf < 3:
        raise DomainError("chen census needs x >= 3")
    top = math.floor(xf)
    if top + 2 > max_n:
        raise ResourceError(f"x = {float(xf):g} exceeds the configured maximum {max_n}")
    twin = semi = 0
    # p ranges over [2, top]; its shift m = p + 2 over [4, top + 2]
    lo = 2
    for fz in iter_factorized_segments(SegmentedRange(lo, top + 2, 1 << 18)):
        n = fz.numbers
        big_omega = fz.big_omega()
        # primality of p = m - 2 is read from the same segment when possible
        prime_here = big_omega == 1
        m_idx = np.arange(2, n.size)
        p_vals = n[m_idx - 2]
        m_vals = n[m_idx]
        keep = prime_here[m_idx - 2] & ap.contains(p_vals) & (p_vals <= top)
        if exclude_small:
            keep &= p_vals >= 5
        is_twin = keep & prime_here[m_idx]
        cand = keep & ~prime_here[m_idx] & (big_omega[m_idx] == 2)
        ok = np.zeros(m_idx.size, dtype=bool)
        if cand.any():
            ci = np.flatnonzero(cand)
            ok[ci] = power_ge(fz.least_factor()[m_idx[ci]], p_vals[ci], r)
        twin += int(is_twin.sum())
        semi += int(ok.sum())
        # the last two p of the segment pair with m in the next segment
        for j in (n.size - 2, n.size - 1):
            if j < 0:
                continue
            p = int(n[j])
            if p > top or big_omega[j] != 1 or not ap.contains(p):
                continue
            if exclude_small and p < 5:
                continue
            if p + 2 > fz.range.hi:
                v = is_chen_prime(p, r)
                twin += v.branch is Branch.TWIN
                semi += v.branch is Branch.QUALIFIED_SEMIPRIME
    return ChenCensus(float(xf), ap, twin + semi, twin, semi, r, exclude_small)
