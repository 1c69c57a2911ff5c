"""Numeric side of the linear sieve argument.

Contents:

* the linear-sieve functions ``F(s) = 2e^g/s`` and ``f(s) = 2e^g log(s-1)/s``
  and the two-sided Jurkat-Richert bound assembled from them;
* a checker for the density condition
  ``prod_{u <= p < z, p not in Q} (1 - h(p))^(-1) < (1 + eps) log z / log u``;
* the constants ``int_1^{8/3} dt/((4-t)t) = log(6)/4`` and the region
  integral over ``1/8 <= t1 <= 1/3 < t2 < 1 - t1 - t2``, which reduces to
  ``int_{1/8}^{1/3} log(2 - 3 t1) / (t1 (1 - t1)) dt1``;
* convergence checks of prime sums ``sum f(log p / log x)/p`` towards
  ``int f(t) dt/t`` (Mertens' second theorem in integral form);
* the bundle of headline constants.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Dict, Iterable, Optional, Tuple

import numpy as np

from ._errors import DomainError, NumericalError
from .arith import EULER_GAMMA, SieveDensity, mertens_V, odd_prime_divisors, pi2_constant
from .primes import sieve_primes
from .quadrature import QuadResult, gk_integrate

_E_GAMMA = math.exp(EULER_GAMMA)


def big_F(s: float) -> float:
    if not s > 0:
        raise DomainError(f"F(s) needs s > 0, got {s}")
    return 2.0 * _E_GAMMA / s


def small_f(s: float) -> float:
    if not s > 1:
        raise DomainError(f"f(s) needs s > 1, got {s}")
    return 2.0 * _E_GAMMA * math.log(s - 1.0) / s


@dataclass(frozen=True)
class JRInput:
    X: float
    V_z: float
    s: float
    epsilon: float = 0.0
    remainder_sum: float = 0.0
    alpha_abs: float = 0.0

    def __post_init__(self):
        if not self.X > 0:
            raise DomainError("X must be positive")
        if not 0 < self.V_z <= 1:
            raise DomainError("V_z must lie in (0, 1]")
        if not 0 <= self.epsilon < 1 / 200:
            raise DomainError("epsilon must lie in [0, 1/200)")
        if self.remainder_sum < 0 or self.alpha_abs < 0:
            raise DomainError("remainder_sum and alpha_abs must be non-negative")


def jr_upper(inp: JRInput) -> float:
    """``(F(s) + eps e^(14-s)) X V(z) + sum|r_d| + |alpha|``, valid for ``1 < s <= 3``."""
    if not 1 < inp.s <= 3:
        raise DomainError(f"upper bound needs 1 < s <= 3, got {inp.s}")
    main = (big_F(inp.s) + inp.epsilon * math.exp(14 - inp.s)) * inp.X * inp.V_z
    return main + inp.remainder_sum + inp.alpha_abs


def jr_lower(inp: JRInput) -> float:
    """``(f(s) - eps e^(14-s)) X V(z) - sum|r_d| - |alpha|``, valid for ``2 <= s <= 4``.

    The remainder is subtracted: a lower bound can only be weakened by it.
    """
    if not 2 <= inp.s <= 4:
        raise DomainError(f"lower bound needs 2 <= s <= 4, got {inp.s}")
    main = (small_f(inp.s) - inp.epsilon * math.exp(14 - inp.s)) * inp.X * inp.V_z
    return main - inp.remainder_sum - inp.alpha_abs


# ---------------------------------------------------------------------------
# density condition
# ---------------------------------------------------------------------------

def condition_31_sides(density: SieveDensity, u: float, z: float,
                       Q: Iterable[int] = (), epsilon: float = 0.0) -> Tuple[float, float]:
    """Left and right side of the density condition."""
    if not 2 <= u < z:
        raise DomainError(f"need 2 <= u < z, got u={u}, z={z}")
    excluded = set(int(p) for p in Q)
    ps = sieve_primes(max(int(math.ceil(z)), 2)).primes
    ps = ps[(ps >= u) & (ps < z)]
    if excluded:
        ps = ps[~np.isin(ps, list(excluded))]
    h = density.h_array(ps)
    if np.any(h >= 1):
        return math.inf, (1 + epsilon) * math.log(z) / math.log(u)
    lhs = math.exp(-math.fsum(np.log1p(-h).tolist()))
    return lhs, (1 + epsilon) * math.log(z) / math.log(u)


def check_condition_31(density: SieveDensity, u: float, z: float,
                       Q: Iterable[int] = (), epsilon: float = 0.0) -> bool:
    lhs, rhs = condition_31_sides(density, u, z, Q, epsilon)
    return lhs < rhs


def minimal_excluded_primes(density: SieveDensity, u: float, z: float, epsilon: float) -> int:
    """Smallest ``k`` such that excluding the first ``k`` primes makes the condition hold."""
    ps = sieve_primes(max(int(math.ceil(z)), 2)).below(z).tolist()
    for k in range(len(ps) + 1):
        if check_condition_31(density, u, z, ps[:k], epsilon):
            return k
    raise NumericalError("condition fails even with every prime excluded")  # pragma: no cover


# ---------------------------------------------------------------------------
# integrals
# ---------------------------------------------------------------------------

def integral_45_closed_form() -> float:
    """``(1/4) [log(t/(4-t))]_1^{8/3} = log(6)/4``."""
    anti = lambda t: 0.25 * math.log(t / (4.0 - t))
    return anti(8.0 / 3.0) - anti(1.0)


def integral_45_quadrature(tol: float = 1e-12) -> QuadResult:
    return gk_integrate(lambda t: 1.0 / ((4.0 - t) * t), 1.0, 8.0 / 3.0, tol)


def integral_45(tol: float = 1e-12) -> float:
    """``int_1^{8/3} dt / ((4 - t) t)``, cross-checked against quadrature to 1e-10."""
    closed = integral_45_closed_form()
    quad = integral_45_quadrature(tol)
    if abs(closed - quad.value) > 1e-10:
        raise NumericalError(f"closed form {closed!r} and quadrature {quad.value!r} disagree")
    return closed


def _i55_reduced(t):
    return np.log(2.0 - 3.0 * t) / (t * (1.0 - t))


def _i55_density(t1, t2):
    return 1.0 / (t1 * t2 * (1.0 - t1 - t2))


def integral_55(tolerance: float = 1e-8) -> QuadResult:
    """Region integral reduced to one dimension.

    For fixed ``t1`` the inner integral over ``1/3 < t2 < (1 - t1)/2`` equals
    ``log(2 - 3 t1) / (1 - t1)``.
    """
    if not 0 < tolerance <= 1e-3:
        raise DomainError(f"tolerance must lie in (0, 1e-3], got {tolerance}")
    return gk_integrate(_i55_reduced, 1.0 / 8.0, 1.0 / 3.0, tolerance)


def integral_55_2d(tolerance: float = 1e-8) -> QuadResult:
    """The same integral by nested adaptive quadrature in both variables."""
    inner_tol = tolerance / 4.0
    inner_err = []

    def inner(t1: float) -> float:
        hi = 0.5 * (1.0 - t1)
        r = gk_integrate(lambda t2: _i55_density(t1, t2), 1.0 / 3.0, hi, inner_tol)
        inner_err.append(r.error)
        return r.value

    outer = gk_integrate(inner, 1.0 / 8.0, 1.0 / 3.0, tolerance / 2.0)
    # each inner error enters with at most the outer rule's weight sum (1/3 - 1/8)
    err = outer.error + (1.0 / 3.0 - 1.0 / 8.0) * max(inner_err, default=0.0)
    return QuadResult(outer.value, err, outer.intervals)


def integral_55_monte_carlo(samples: int = 10**7, seed: int = 0,
                            chunk: int = 10**6) -> Tuple[float, float]:
    """Monte Carlo estimate and its standard error over the bounding box."""
    rng = np.random.default_rng(seed)
    a1, b1 = 1.0 / 8.0, 1.0 / 3.0
    a2, b2 = 1.0 / 3.0, 7.0 / 16.0
    area = (b1 - a1) * (b2 - a2)
    s = s2 = 0.0
    done = 0
    while done < samples:
        k = min(chunk, samples - done)
        t1 = rng.uniform(a1, b1, k)
        t2 = rng.uniform(a2, b2, k)
        v = np.where(t2 < 0.5 * (1.0 - t1), _i55_density(t1, t2), 0.0) * area
        s += float(v.sum())
        s2 += float((v * v).sum())
        done += k
    mean = s / samples
    var = max(s2 / samples - mean * mean, 0.0)
    return mean, math.sqrt(var / samples)


# ---------------------------------------------------------------------------
# Mertens product against its asymptotic
# ---------------------------------------------------------------------------

def mertens_main_term(z: float, q: int = 1, pi2: Optional[float] = None) -> float:
    """``2 Pi2 / (e^g log z) * prod_{p | q, p odd} (1 - 1/(p-1))^(-1)``."""
    pi2 = pi2_constant(1e-6) if pi2 is None else pi2
    corr = 1.0
    for p in odd_prime_divisors(q):
        corr /= 1.0 - 1.0 / (p - 1)
    return 2.0 * pi2 / (_E_GAMMA * math.log(z)) * corr


def mertens_asymptotic_ratio(z: float, q: int = 1) -> float:
    if z < 10:
        raise DomainError(f"z must be at least 10, got {z}")
    return mertens_V(z, SieveDensity(q)) / mertens_main_term(z, q)


# ---------------------------------------------------------------------------
# prime sums versus integrals
# ---------------------------------------------------------------------------

def _bump(t, a: float, b: float):
    t = np.asarray(t, dtype=np.float64)
    inside = (t > a) & (t < b)
    return np.where(inside, np.sin(np.pi * (t - a) / (b - a)) ** 2, 0.0)


def _box(t, a: float, b: float):
    t = np.asarray(t, dtype=np.float64)
    return ((t >= a) & (t <= b)).astype(np.float64)


@dataclass(frozen=True)
class CatalogFunction:
    """A compactly supported test function on ``(0, inf)^dim``.

    ``support`` gives, per coordinate, an interval outside of which the
    function vanishes; ``integral`` returns ``int f(t) dt/(t_1 ... t_d)``.
    """

    name: str
    dim: int
    func: Callable
    support: Tuple[Tuple[float, float], ...]
    integral: Callable[[], float]
    smooth: bool
    description: str


def _f45(t):
    t = np.asarray(t, dtype=np.float64)
    return _box(t, 1 / 8, 1 / 3) * 2.0 * _E_GAMMA / (4.0 - 8.0 * t)


def _region55(t1, t2):
    inside = (t1 >= 1 / 8) & (t1 <= 1 / 3) & (t2 > 1 / 3) & (t2 < 1.0 - t1 - t2)
    return np.where(inside, 1.0 / np.where(inside, 1.0 - t1 - t2, 1.0), 0.0)


def _one_dim_integral(func, a, b, pts=()):
    edges = [a, *pts, b]
    return math.fsum(gk_integrate(lambda t: func(t) / t, lo, hi, 1e-12).value
                     for lo, hi in zip(edges[:-1], edges[1:]))


CATALOG: Dict[str, CatalogFunction] = {
    "box": CatalogFunction(
        "box", 1, lambda t: _box(t, 1 / 8, 1 / 3), ((1 / 8, 1 / 3),),
        lambda: math.log(8 / 3), False,
        "indicator of [1/8, 1/3]; integral log(8/3)"),
    "sieve_F": CatalogFunction(
        "sieve_F", 1, _f45, ((1 / 8, 1 / 3),),
        lambda: _E_GAMMA * math.log(6) / 2, False,
        "F(4 - 8t) on [1/8, 1/3]; integral e^g log(6)/2"),
    "triple_region": CatalogFunction(
        "triple_region", 2, _region55, ((1 / 8, 1 / 3), (1 / 3, 7 / 16)),
        lambda: integral_55(1e-10).value, False,
        "1/(1 - t1 - t2) on 1/8 <= t1 <= 1/3 < t2 < 1 - t1 - t2"),
    "bump": CatalogFunction(
        "bump", 1, lambda t: _bump(t, 0.1, 0.5), ((0.1, 0.5),),
        lambda: _one_dim_integral(lambda t: _bump(t, 0.1, 0.5), 0.1, 0.5), True,
        "sin^2 bump on (0.1, 0.5)"),
    "bump_pair": CatalogFunction(
        "bump_pair", 2, lambda t1, t2: _bump(t1, 0.1, 0.4) * _bump(t2, 0.2, 0.6),
        ((0.1, 0.4), (0.2, 0.6)),
        lambda: (_one_dim_integral(lambda t: _bump(t, 0.1, 0.4), 0.1, 0.4)
                 * _one_dim_integral(lambda t: _bump(t, 0.2, 0.6), 0.2, 0.6)),
        True, "product of sin^2 bumps on (0.1, 0.4) x (0.2, 0.6)"),
}


def _prime_sum(cf: CatalogFunction, x: float) -> float:
    L = math.log(x)
    top = max(hi for _, hi in cf.support)
    table = sieve_primes(max(int(x ** top) + 1, 2))
    axes = []
    for lo, hi in cf.support:
        ps = table.between(math.floor(x ** lo), math.ceil(x ** hi)).astype(np.float64)
        axes.append((np.log(ps) / L, 1.0 / ps))
    if cf.dim == 1:
        t, w = axes[0]
        return math.fsum((cf.func(t) * w).tolist())
    (t1, w1), (t2, w2) = axes
    vals = cf.func(t1[:, None], t2[None, :]) * np.outer(w1, w2)
    return math.fsum(vals.ravel().tolist())


def prime_sum_integral_check(function_id: str, x: float) -> Tuple[float, float]:
    """``(sum over primes of f(log p / log x) / p, int f(t) dt / t)`` for a catalog entry."""
    try:
        cf = CATALOG[function_id]
    except KeyError:
        raise DomainError(
            f"unknown test function {function_id!r}; choose from {sorted(CATALOG)}"
        ) from None
    if x < 100:
        raise DomainError("x must be at least 100")
    return _prime_sum(cf, x), cf.integral()


# ---------------------------------------------------------------------------
# headline constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstantBundle:
    gamma: float
    pi2: float
    c_A1: float
    c_A2: float
    I45: float
    I55: float
    I55_error: float
    c_A3: float
    net: float

    def to_dict(self) -> dict:
        return asdict(self)


def headline_constants(tolerance: float = 1e-8, pi2_tolerance: float = 1e-6) -> ConstantBundle:
    """Constants of the lower-bound argument.

    ``c_A1 = 4 log 3`` and ``c_A2 = 4 log 6`` come from ``f(4)`` and the
    ``F``-weighted prime sum; ``c_A3 = 4 I55``; ``net = c_A1 - c_A2/2 - c_A3/2``.
    """
    i45 = integral_45()
    i55 = integral_55(tolerance)
    c1 = 4.0 * math.log(3.0)
    c2 = 4.0 * math.log(6.0)
    c3 = 4.0 * i55.value
    net = math.fsum([c1, -c2 / 2.0, -c3 / 2.0])
    return ConstantBundle(
        gamma=EULER_GAMMA,
        pi2=pi2_constant(pi2_tolerance),
        c_A1=c1,
        c_A2=c2,
        I45=i45,
        I55=i55.value,
        I55_error=i55.error,
        c_A3=c3,
        net=net,
    )
