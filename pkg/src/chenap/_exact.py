"""Exact comparisons of integers against real powers such as ``x^(1/8)``.

Floating eighth and cube roots misplace boundary cases, so thresholds are
converted once into integer cut-offs using exact rational arithmetic.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def iroot_floor(x, k: int) -> int:
    """Largest integer ``m >= 0`` with ``m**k <= x``."""
    x = as_fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    m = int(math.floor(float(x) ** (1.0 / k)))
    while m > 0 and m**k > x:
        m -= 1
    while (m + 1) ** k <= x:
        m += 1
    return m


def iroot_ceil(x, k: int) -> int:
    """Smallest integer ``m >= 0`` with ``m**k >= x``."""
    m = iroot_floor(x, k)
    return m if m**k == as_fraction(x) else m + 1


def power_ge(base: np.ndarray, value: np.ndarray, exponent: Fraction) -> np.ndarray:
    """Elementwise ``base >= value**exponent`` for positive integer arrays, exactly.

    Decided in floating point where the margin is wide and by exact integer
    arithmetic (``base**den >= value**num``) near ties.
    """
    exponent = as_fraction(exponent)
    num, den = exponent.numerator, exponent.denominator
    b = np.asarray(base, dtype=np.int64)
    v = np.asarray(value, dtype=np.int64)
    margin = den * np.log(b.astype(np.float64)) - num * np.log(v.astype(np.float64))
    out = margin >= 0
    close = np.flatnonzero(np.abs(margin) < 1e-7)
    for i in close.tolist():
        out[i] = int(b[i]) ** den >= int(v[i]) ** num
    return out
