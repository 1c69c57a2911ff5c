"""Segmented prime generation and interval factorization.

Everything else in the package queries this module for primes and for the
prime factorizations of integers in a window ``[lo, hi]``.  Factorizations
are produced by offset sieving: for every prime ``p <= sqrt(hi)`` the
multiples of ``p`` inside the segment are located by an offset computation,
``p`` is divided out as many times as it divides, and whatever cofactor is
left over at the end is a single prime larger than ``sqrt(hi)``.

Results are stored in compressed-row form (``offsets``, ``primes``,
``exponents``) so that per-integer features can be computed with numpy
reductions instead of Python loops.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ._errors import DependencyError, DomainError, ResourceError

#: Largest integer any routine will sieve or factor unless told otherwise.
DEFAULT_MAX_N = 10**9
#: Environment variable capping the size of a single allocation, in MiB.
MEMORY_ENV = "CHEN_SIEVE_MAX_MEMORY_MB"

_DEFAULT_SEGMENT = 1 << 18
_ODD_SEGMENT = 1 << 21


def memory_cap_bytes() -> Optional[int]:
    raw = os.environ.get(MEMORY_ENV)
    if not raw:
        return None
    try:
        mb = float(raw)
    except ValueError as exc:
        raise DomainError(f"{MEMORY_ENV}={raw!r} is not a number") from exc
    if mb <= 0:
        raise DomainError(f"{MEMORY_ENV} must be positive")
    return int(mb * 2**20)


def _check_memory(nbytes: int, what: str) -> None:
    cap = memory_cap_bytes()
    if cap is not None and nbytes > cap:
        raise ResourceError(
            f"{what} needs about {nbytes / 2**20:.1f} MiB, "
            f"above the {MEMORY_ENV} cap of {cap / 2**20:.1f} MiB"
        )


def _check_limit(value: int, max_n: Optional[int], what: str) -> None:
    cap = DEFAULT_MAX_N if max_n is None else int(max_n)
    if value > cap:
        raise ResourceError(f"{what} = {value} exceeds the configured maximum {cap}")


# ---------------------------------------------------------------------------
# prime tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeTable:
    """All primes ``<= limit`` in increasing order."""

    limit: int
    primes: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return int(self.primes.size)

    def __iter__(self):
        return iter(self.primes.tolist())

    def __contains__(self, n) -> bool:
        n = int(n)
        if n > self.limit:
            raise DependencyError(f"{n} is beyond the table limit {self.limit}")
        i = int(np.searchsorted(self.primes, n))
        return i < self.primes.size and int(self.primes[i]) == n

    def below(self, y: float) -> np.ndarray:
        """Primes strictly less than ``y``."""
        return self.primes[: int(np.searchsorted(self.primes, y, side="left"))]

    def upto(self, y: float) -> np.ndarray:
        """Primes ``<= y``."""
        return self.primes[: int(np.searchsorted(self.primes, y, side="right"))]

    def between(self, lo: float, hi: float) -> np.ndarray:
        """Primes ``p`` with ``lo <= p <= hi``."""
        i = int(np.searchsorted(self.primes, lo, side="left"))
        j = int(np.searchsorted(self.primes, hi, side="right"))
        return self.primes[i:j]


def _small_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


def sieve_primes(limit: int, max_n: Optional[int] = None) -> PrimeTable:
    """Return every prime ``<= limit``.

    Uses an odd-only segmented sieve so that memory stays proportional to
    ``sqrt(limit)`` plus the output.
    """
    limit = int(limit)
    if limit < 2:
        raise DomainError(f"limit must be at least 2, got {limit}")
    _check_limit(limit, max_n, "sieve limit")
    # rough prime count bound for the output array
    est = int(1.26 * limit / math.log(limit)) + 16
    _check_memory(8 * est, f"prime table to {limit}")
    primes = _cached_sieve(limit)
    return PrimeTable(limit, primes)


@lru_cache(maxsize=8)
def _cached_sieve(limit: int) -> np.ndarray:
    if limit <= 1 << 22:
        out = _small_sieve(limit)
        out.setflags(write=False)
        return out
    base = _small_sieve(math.isqrt(limit))[1:]  # odd base primes
    chunks = [np.array([2], dtype=np.int64)]
    # flags[i] describes the odd number lo + 2*i
    lo = 3
    while lo <= limit:
        hi = min(lo + 2 * _ODD_SEGMENT - 2, limit if limit % 2 else limit - 1)
        count = (hi - lo) // 2 + 1
        flags = np.ones(count, dtype=bool)
        for p in base:
            p = int(p)
            sq = p * p
            if sq > hi:
                break
            start = max(sq, ((lo + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start > hi:
                continue
            flags[(start - lo) // 2 :: p] = False
        chunks.append(lo + 2 * np.flatnonzero(flags).astype(np.int64))
        lo = hi + 2
    out = np.concatenate(chunks)
    out.setflags(write=False)
    return out


def least_prime_factor(n: int) -> int:
    """Least prime factor of ``n >= 2`` by trial division."""
    n = int(n)
    if n < 2:
        raise DomainError(f"least prime factor undefined for {n}")
    if n % 2 == 0:
        return 2
    r = math.isqrt(n)
    if r >= 3:
        small = _trial_primes(r)
        for p in small[1 : int(np.searchsorted(small, r, side="right"))].tolist():
            if n % p == 0:
                return p
    return n


_TRIAL = np.zeros(0, dtype=np.int64)
_TRIAL_LIMIT = 1


def _trial_primes(r: int) -> np.ndarray:
    """A shared table reaching at least ``r``; grows geometrically."""
    global _TRIAL, _TRIAL_LIMIT
    if r > _TRIAL_LIMIT:
        _TRIAL_LIMIT = max(r, 2 * _TRIAL_LIMIT, 1 << 12)
        _TRIAL = _small_sieve(_TRIAL_LIMIT)
    return _TRIAL


def factorize(n: int) -> List[Tuple[int, int]]:
    """Prime factorization of a single integer as ``[(p, e), ...]``."""
    n = int(n)
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out = []
    while n > 1:
        p = least_prime_factor(n)
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def coprime_to_small_primes(n: int, y: float) -> bool:
    """True iff no prime ``p < y`` divides ``n``.

    This is the predicate ``gcd(n, P(y)) == 1`` where ``P(y)`` is the product
    of the primes below ``y``; the product itself is never formed.
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if y < 2:
        raise DomainError(f"y must be at least 2, got {y}")
    if n == 1:
        return True
    return least_prime_factor(n) >= y


# ---------------------------------------------------------------------------
# interval factorization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SegmentedRange:
    """The integer window ``lo <= n <= hi`` processed in fixed-size segments."""

    lo: int
    hi: int
    segment_size: int = _DEFAULT_SEGMENT

    def __post_init__(self):
        if self.lo < 2:
            raise DomainError(f"lo must be at least 2, got {self.lo}")
        if self.hi < self.lo:
            raise DomainError(f"empty range [{self.lo}, {self.hi}]")
        if self.segment_size < 64:
            raise DomainError("segment_size must be at least 64")
        if self.hi - self.lo >= 2**63:
            raise ResourceError("range width does not fit in 64 bits")

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def segments(self) -> Iterator[Tuple[int, int]]:
        s = self.lo
        while s <= self.hi:
            e = min(s + self.segment_size - 1, self.hi)
            yield s, e
            s = e + 1


@dataclass(frozen=True)
class IntervalFactorization:
    """Factorizations of every integer in ``range`` in compressed-row form.

    The factors of ``range.lo + i`` are ``primes[offsets[i]:offsets[i+1]]``
    with matching ``exponents``; primes within a row are strictly increasing.
    """

    range: SegmentedRange
    offsets: np.ndarray = field(repr=False)
    primes: np.ndarray = field(repr=False)
    exponents: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.range)

    @property
    def numbers(self) -> np.ndarray:
        return np.arange(self.range.lo, self.range.hi + 1, dtype=np.int64)

    def factors(self, n: int) -> List[Tuple[int, int]]:
        i = int(n) - self.range.lo
        if not 0 <= i < len(self):
            raise DomainError(f"{n} is outside [{self.range.lo}, {self.range.hi}]")
        a, b = self.offsets[i], self.offsets[i + 1]
        return list(zip(self.primes[a:b].tolist(), self.exponents[a:b].tolist()))

    def __iter__(self):
        for n in range(self.range.lo, self.range.hi + 1):
            yield n, self.factors(n)

    @property
    def starts(self) -> np.ndarray:
        return self.offsets[:-1]

    def omega(self) -> np.ndarray:
        """Number of distinct prime factors of each integer."""
        return np.diff(self.offsets)

    def big_omega(self) -> np.ndarray:
        """Number of prime factors counted with multiplicity."""
        return np.add.reduceat(self.exponents, self.starts)

    def least_factor(self) -> np.ndarray:
        return self.primes[self.starts]

    def largest_factor(self) -> np.ndarray:
        return self.primes[self.offsets[1:] - 1]

    def count_rows(self, entry_mask: np.ndarray) -> np.ndarray:
        """Per-integer count of factor entries selected by ``entry_mask``."""
        return np.add.reduceat(entry_mask.astype(np.int64), self.starts)


def _base_primes(hi: int, primes: Optional[PrimeTable]) -> np.ndarray:
    need = math.isqrt(hi)
    if primes is None:
        return _cached_sieve(max(need, 2))
    if primes.limit < need:
        raise DependencyError(
            f"prime table to {primes.limit} cannot factor up to {hi}; need primes to {need}"
        )
    return primes.upto(need)


def _factor_segment(lo: int, hi: int, base: np.ndarray):
    width = hi - lo + 1
    rem = np.arange(lo, hi + 1, dtype=np.int64)
    rows: List[np.ndarray] = []
    ps: List[np.ndarray] = []
    es: List[np.ndarray] = []
    for p in base.tolist():
        if p * p > hi:
            break
        idx = np.arange((-lo) % p, width, p, dtype=np.int64)
        if idx.size == 0:
            continue
        vals = rem[idx] // p
        exps = np.ones(idx.size, dtype=np.int64)
        sel = np.flatnonzero(vals % p == 0)
        while sel.size:
            vals[sel] //= p
            exps[sel] += 1
            sel = sel[vals[sel] % p == 0]
        rem[idx] = vals
        rows.append(idx)
        ps.append(np.full(idx.size, p, dtype=np.int64))
        es.append(exps)
    big = np.flatnonzero(rem > 1)
    rows.append(big)
    ps.append(rem[big])
    es.append(np.ones(big.size, dtype=np.int64))
    row = np.concatenate(rows)
    # stable sort keeps primes ascending within a row; the leftover cofactor
    # was appended last and exceeds every sieving prime that divides its row
    order = np.argsort(row, kind="stable")
    counts = np.bincount(row, minlength=width)
    offsets = np.zeros(width + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return offsets, np.concatenate(ps)[order], np.concatenate(es)[order]


def _factor_task(args):
    lo, hi, base = args
    return _factor_segment(lo, hi, base)


def _merge(parts, rng: SegmentedRange) -> IntervalFactorization:
    if len(parts) == 1:
        offsets, ps, es = parts[0]
    else:
        shifted = [parts[0][0]]
        total = int(parts[0][0][-1])
        for off, _, _ in parts[1:]:
            shifted.append(off[1:] + total)
            total += int(off[-1])
        offsets = np.concatenate(shifted)
        ps = np.concatenate([p[1] for p in parts])
        es = np.concatenate([p[2] for p in parts])
    for arr in (offsets, ps, es):
        arr.setflags(write=False)
    return IntervalFactorization(rng, offsets, ps, es)


def factorize_interval(
    rng: SegmentedRange,
    primes: Optional[PrimeTable] = None,
    workers: int = 1,
    max_n: Optional[int] = None,
) -> IntervalFactorization:
    """Factor every integer in ``rng`` by offset sieving.

    ``primes`` must reach ``isqrt(rng.hi)`` when supplied.  Segments are
    independent; with ``workers > 1`` they are farmed out to a process pool
    and merged in order, so the output does not depend on ``workers``.
    """
    _check_limit(rng.hi, max_n, "range upper end")
    _check_memory(48 * min(len(rng), rng.segment_size), "factorization segment")
    base = _base_primes(rng.hi, primes)
    tasks = [(s, e, base) for s, e in rng.segments()]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_factor_task, tasks))
    else:
        parts = [_factor_task(t) for t in tasks]
    return _merge(parts, rng)


def iter_factorized_segments(
    rng: SegmentedRange, primes: Optional[PrimeTable] = None, max_n: Optional[int] = None
) -> Iterator[IntervalFactorization]:
    """Yield one :class:`IntervalFactorization` per segment of ``rng``."""
    _check_limit(rng.hi, max_n, "range upper end")
    base = _base_primes(rng.hi, primes)
    for s, e in rng.segments():
        sub = SegmentedRange(s, e, rng.segment_size)
        yield _merge([_factor_segment(s, e, base)], sub)


def is_prime(n: int) -> bool:
    n = int(n)
    return n >= 2 and least_prime_factor(n) == n


def primes_in(values: Sequence[int], table: PrimeTable) -> np.ndarray:
    """Vectorised membership test against ``table``."""
    v = np.asarray(values, dtype=np.int64)
    if v.size and int(v.max()) > table.limit:
        raise DependencyError("values exceed the prime table limit")
    i = np.searchsorted(table.primes, v)
    i = np.minimum(i, max(table.primes.size - 1, 0))
    return table.primes[i] == v


__all__ = [
    "DEFAULT_MAX_N",
    "MEMORY_ENV",
    "IntervalFactorization",
    "PrimeTable",
    "SegmentedRange",
    "coprime_to_small_primes",
    "factorize",
    "factorize_interval",
    "is_prime",
    "iter_factorized_segments",
    "least_prime_factor",
    "primes_in",
    "sieve_primes",
]
