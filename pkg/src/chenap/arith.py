"""Arithmetic functions and Euler products used throughout the sieve argument."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from ._errors import DomainError, ResourceError
from .primes import DEFAULT_MAX_N, factorize, sieve_primes

#: Euler-Mascheroni constant to 30 digits.
EULER_GAMMA = 0.577215664901532860606512090082

#: Largest truncation prime :func:`pi2_constant` will sieve to.
PI2_MAX_PRIME = 10**8


@dataclass(frozen=True)
class APClass:
    """The residue class ``a mod q`` with ``gcd(a, q) = gcd(a + 2, q) = 1``.

    Use :meth:`unchecked` for classes that deliberately violate the
    coprimality hypothesis (e.g. to see the degenerate behaviour of
    ``1 mod 3``).
    """

    a: int
    q: int

    def __post_init__(self):
        if self.q < 1 or self.a < 1:
            raise DomainError(f"need a >= 1 and q >= 1, got a={self.a}, q={self.q}")
        if math.gcd(self.a, self.q) != 1 or math.gcd(self.a + 2, self.q) != 1:
            raise DomainError(
                f"({self.a}, {self.q}) violates the hypothesis gcd(a, q) = gcd(a + 2, q) = 1 "
                "of the main theorem"
            )

    @classmethod
    def unchecked(cls, a: int, q: int) -> "APClass":
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", int(a))
        object.__setattr__(obj, "q", int(q))
        return obj

    @property
    def residue(self) -> int:
        return self.a % self.q

    def contains(self, n) -> bool:
        return n % self.q == self.residue

    @property
    def is_valid(self) -> bool:
        return math.gcd(self.a, self.q) == 1 and math.gcd(self.a + 2, self.q) == 1


def valid_classes(q: int) -> list:
    """All admissible ``APClass`` values with modulus ``q`` and ``1 <= a <= q``."""
    return [APClass(a, q) for a in range(1, q + 1)
            if math.gcd(a, q) == 1 and math.gcd(a + 2, q) == 1]


def mangoldt(n: int) -> float:
    """von Mangoldt function: ``log p`` if ``n`` is a power of the prime ``p``, else 0."""
    if n < 1:
        raise DomainError(f"mangoldt needs n >= 1, got {n}")
    fac = factorize(n)
    return math.log(fac[0][0]) if len(fac) == 1 else 0.0


def mangoldt_aq(n: int, ap: APClass) -> float:
    return mangoldt(n) if ap.contains(n) else 0.0


def mobius(n: int) -> int:
    if n < 1:
        raise DomainError(f"mobius needs n >= 1, got {n}")
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"phi needs n >= 1, got {n}")
    r = n
    for p, _ in factorize(n):
        r = r // p * (p - 1)
    return r


def phi2(n: int) -> Fraction:
    """Twin-prime totient ``n * prod_{p | n, p odd} (1 - 2/p) * (1 - [2 | n]/2)``.

    Evaluated with integer arithmetic; the result is returned as an exact
    ``Fraction`` (its denominator is always 1).
    """
    if n < 1:
        raise DomainError(f"phi2 needs n >= 1, got {n}")
    num = n
    for p, _ in factorize(n):
        if p != 2:
            num = num // p * (p - 2)
    if n % 2 == 0:
        return Fraction(num, 2)
    return Fraction(num)


def pi2_partial(P: float) -> float:
    """Partial product ``prod_{2 < p <= P} (1 - 1/(p-1)^2)``."""
    if P < 2:
        raise DomainError("truncation point must be at least 2")
    ps = sieve_primes(max(int(P), 2)).upto(P)
    ps = ps[ps > 2].astype(np.float64)
    if ps.size == 0:
        return 1.0
    return math.exp(math.fsum(np.log1p(-1.0 / (ps - 1.0) ** 2).tolist()))


def pi2_truncation_point(tolerance: float) -> int:
    """Smallest prime bound ``P`` whose certified tail ``1/(P - 1)`` is below ``tolerance / 2``."""
    return int(2.0 / tolerance) + 2


def pi2_constant(tolerance: float = 1e-6, max_prime: int = PI2_MAX_PRIME) -> float:
    """Twin prime constant ``prod_{p > 2} (1 - 1/(p-1)^2)`` to within ``tolerance``.

    The product is cut at ``P`` with ``sum_{p > P} 1/(p-1)^2 < 1/(P-1) < tolerance/2``.
    """
    if not 0 < tolerance < 1:
        raise DomainError(f"tolerance must lie in (0, 1), got {tolerance}")
    P = pi2_truncation_point(tolerance)
    if P > max_prime:
        raise ResourceError(
            f"tolerance {tolerance} needs primes to {P}, beyond the limit {max_prime}"
        )
    return _pi2_cached(P)


@lru_cache(maxsize=16)
def _pi2_cached(P: int) -> float:
    return pi2_partial(P)


@dataclass(frozen=True)
class SieveDensity:
    """Sieve density ``h(p) = g(p) [p does not divide q]`` with ``g(2) = 0``, ``g(p) = 1/(p-1)``."""

    q: int = 1

    def g(self, p: int) -> float:
        return 0.0 if p == 2 else 1.0 / (p - 1)

    def h(self, p: int) -> float:
        return 0.0 if self.q % p == 0 else self.g(p)

    def h_array(self, primes: np.ndarray) -> np.ndarray:
        ps = np.asarray(primes, dtype=np.int64)
        out = np.where(ps == 2, 0.0, 1.0 / np.maximum(ps - 1, 1).astype(np.float64))
        out[(self.q % ps) == 0] = 0.0
        return out

    def g_multiplicative(self, d: int) -> float:
        """``g`` extended multiplicatively as ``prod g(p)^e`` (only squarefree ``d`` matter)."""
        out = 1.0
        for p, e in factorize(d):
            out *= self.g(p) ** e
        return out

    def h_multiplicative(self, d: int) -> float:
        return self.g_multiplicative(d) if math.gcd(d, self.q) == 1 else 0.0


def mertens_V(z: float, density: SieveDensity, max_n: int = DEFAULT_MAX_N) -> float:
    """Finite product ``V(z) = prod_{p < z} (1 - h(p))``."""
    if z < 3:
        raise DomainError(f"mertens_V needs z >= 3, got {z}")
    if z > max_n:
        raise ResourceError(f"z = {z} exceeds the prime table capacity {max_n}")
    ps = sieve_primes(max(int(math.ceil(z)), 2)).below(z)
    h = density.h_array(ps)
    h = h[h > 0]
    return float(np.prod(1.0 - h)) if h.size else 1.0


def odd_prime_divisors(q: int) -> Iterable[int]:
    return [p for p, _ in factorize(q) if p != 2]
