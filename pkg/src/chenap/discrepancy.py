"""Empirical discrepancies of arithmetic weights in residue classes.

For a weight ``f`` supported on positive integers,

    Delta(f; a (d)) = sum_{n = a (d)} f(n) - 1/phi(d) sum_{(n, d) = 1} f(n).

Three weights are available: ``Lambda`` on ``[1, x]``, ``Lambda`` on the
window ``[x/2, x - 2]``, and the triple-product weight ``b`` on
``[x/2 + 2, x]``.  :func:`bv_sum` adds the per-modulus maxima over
``d <= D``, the quantity that the Bombieri-Vinogradov theorem (and its
analogue for ``b``) bounds by ``x / log^A x``.  Nothing here estimates the
implied constants; the module only measures.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from ._errors import DomainError, ResourceError
from .arith import euler_phi
from .decomp import SieveParams, b_weights
from .primes import DEFAULT_MAX_N, sieve_primes

# weights are split into a part on the grid 2^-20 and a small remainder;
# grid parts add exactly in float64 while totals stay below 2^33
_GRID = float(2**20)


class Weight(str, enum.Enum):
    MANGOLDT = "mangoldt"
    MANGOLDT_WINDOW = "mangoldt_window"
    B = "b"


@dataclass(frozen=True)
class DiscrepancyRow:
    d: int
    worst_a: int
    delta_abs: float


@dataclass(frozen=True)
class BVSummary:
    x: float
    D: float
    total: float
    weight: Weight
    rows: Tuple[DiscrepancyRow, ...] = field(default=(), repr=False)
    noncoprime_mass: float = 0.0

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "D": self.D,
            "total": self.total,
            "normalized_total": self.total / self.x,
            "weight": self.weight.value,
            "moduli": len(self.rows),
            "noncoprime_mass": self.noncoprime_mass,
        }

    def rows_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "worst_a", "delta_abs"])
        for r in self.rows:
            w.writerow([r.d, r.worst_a, repr(r.delta_abs)])
        return buf.getvalue()


def _mangoldt_support(lo: int, hi: int) -> Tuple[np.ndarray, np.ndarray]:
    if hi < max(lo, 2):
        return np.zeros(0, dtype=np.int64), np.zeros(0)
    ps = sieve_primes(hi).primes
    ns = [ps[ps >= lo]]
    ws = [np.log(ns[0].astype(np.float64))]
    for p in ps[: int(np.searchsorted(ps, math.isqrt(hi), side="right"))].tolist():
        pk = p * p
        while pk <= hi:
            if pk >= lo:
                ns.append(np.array([pk], dtype=np.int64))
                ws.append(np.array([math.log(p)]))
            pk *= p
    n = np.concatenate(ns)
    w = np.concatenate(ws)
    order = np.argsort(n, kind="stable")
    return n[order], w[order]


@lru_cache(maxsize=16)
def weight_support(weight: Weight, x: float, max_n: int = DEFAULT_MAX_N):
    """``(n, f(n))`` for every ``n`` where the weight is non-zero."""
    weight = Weight(weight)
    if x > max_n:
        raise ResourceError(f"x = {x:g} exceeds the configured maximum {max_n}")
    if weight is Weight.MANGOLDT:
        n, w = _mangoldt_support(1, math.floor(x))
    elif weight is Weight.MANGOLDT_WINDOW:
        params = SieveParams(x, max_n)
        n, w = _mangoldt_support(params.n_lo, params.n_hi)
    else:
        n, c = b_weights(SieveParams(x, max_n))
        w = c.astype(np.float64)
    n.setflags(write=False)
    w.setflags(write=False)
    return n, w


def _class_sums(n: np.ndarray, w: np.ndarray, d: int) -> np.ndarray:
    """Sum of ``w`` over each residue class mod ``d``, each nearly correctly rounded."""
    r = n % d
    coarse = np.round(w * _GRID) / _GRID
    fine = w - coarse
    return (np.bincount(r, weights=coarse, minlength=d)
            + np.bincount(r, weights=fine, minlength=d))


def _coprime_mask(d: int) -> np.ndarray:
    return np.gcd(np.arange(d), d) == 1


def _deltas(n, w, d: int) -> Tuple[np.ndarray, np.ndarray]:
    sums = _class_sums(n, w, d)
    mask = _coprime_mask(d)
    phi = int(mask.sum())
    total = math.fsum(sums[mask].tolist())
    return sums - total / phi, mask


def delta(weight, x: float, a: int, d: int) -> float:
    """Signed discrepancy ``Delta(f; a (d))`` of the chosen weight."""
    if d < 1 or not 1 <= a <= d:
        raise DomainError(f"need d >= 1 and 1 <= a <= d, got a={a}, d={d}")
    if math.gcd(a, d) != 1:
        raise DomainError(f"gcd({a}, {d}) != 1")
    n, w = weight_support(Weight(weight), x)
    deltas, _ = _deltas(n, w, d)
    return float(deltas[a % d])


def row(weight, x: float, d: int) -> DiscrepancyRow:
    n, w = weight_support(Weight(weight), x)
    deltas, mask = _deltas(n, w, d)
    mag = np.where(mask, np.abs(deltas), -1.0)
    r = int(np.argmax(mag))
    return DiscrepancyRow(d, r if r else d, float(mag[r]))


def bv_level(x: float, A: float = 0.0) -> float:
    """Level ``x^(1/2) / log^A x``."""
    return math.sqrt(x) / math.log(x) ** A


def bv_sum(x: float, D: float, weight=Weight.MANGOLDT, max_work: int = 10**11) -> BVSummary:
    """``sum_{d <= D} max_{(a, d) = 1} |Delta(f; a (d))|``."""
    weight = Weight(weight)
    if D < 1:
        raise DomainError(f"D must be at least 1, got {D}")
    n, w = weight_support(weight, x)
    top = math.floor(D)
    if top * max(n.size, 1) > max_work:
        raise ResourceError(f"bv_sum with D = {D:g} over {n.size} terms exceeds the work cap")
    rows: List[DiscrepancyRow] = []
    excluded = 0.0
    for d in range(1, top + 1):
        deltas, mask = _deltas(n, w, d)
        mag = np.where(mask, np.abs(deltas), -1.0)
        r = int(np.argmax(mag))
        rows.append(DiscrepancyRow(d, r if r else d, float(mag[r])))
        if weight is Weight.B and d > 1:
            excluded += float(w[np.gcd(n, d) > 1].sum())
    total = math.fsum(r.delta_abs for r in rows)
    return BVSummary(x, float(D), total, weight, tuple(rows), excluded)


def psi(x: float, a: int, d: int) -> float:
    """Chebyshev ``psi(x; d, a) = sum_{n <= x, n = a (d)} Lambda(n)``."""
    n, w = weight_support(Weight.MANGOLDT, x)
    sel = (n % d) == (a % d)
    return math.fsum(w[sel].tolist())


def sw_residual(x: float, a: int, d: int, A: Optional[float] = None) -> float:
    """``|psi(x; d, a) - x / phi(d)|``.

    When ``A`` is given the modulus must satisfy ``d <= log^A x``.
    """
    if d < 1 or math.gcd(a, d) != 1:
        raise DomainError(f"gcd({a}, {d}) != 1")
    if A is not None and d > math.log(x) ** A:
        raise DomainError(f"d = {d} exceeds log^A x = {math.log(x) ** A:.3g}")
    return abs(psi(x, a, d) - x / euler_phi(d))


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """The residue mod ``m1 * m2`` congruent to ``r1 (m1)`` and ``r2 (m2)``; moduli coprime."""
    if math.gcd(m1, m2) != 1:
        raise DomainError(f"moduli {m1} and {m2} are not coprime")
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


def combined_residue(a: int, q: int, d: int) -> int:
    """Residue ``c`` mod ``q d`` of the ``n`` with ``n = a (q)`` and ``n = -2 (d)``."""
    return crt_pair(a % q, q, (-2) % d, d)


def q_conditioned_delta(weight, x: float, a: int, q: int, d: int) -> float:
    """Discrepancy of the weight in the combined class ``c (q d)``."""
    c = combined_residue(a, q, d)
    m = q * d
    return delta(weight, x, c if c else m, m)


def to_json_rows(rows) -> list:
    return [asdict(r) for r in rows]
