"""
Mertens-type limits
===================

Two classical limits feed the constants: the product ``V(z)`` over the sieve
density against ``2 Pi2 / (e^gamma log z)``, and prime sums
``sum f(log p / log x) / p`` against ``int f(t) dt / t``.  The first converges
fast.  The second converges like ``1 / log x`` and, for indicator-type ``f``,
jumps every time a prime crosses an endpoint of the support.
"""
from chenap.sieve_theory import CATALOG, mertens_asymptotic_ratio, prime_sum_integral_check

###############################################################################
# The Mertens ratio, with and without the correction for ``q = 15``.
for z in (1e2, 1e3, 1e4, 1e5, 1e6):
    print(f"z={z:7.0e}  ratio q=1: {mertens_asymptotic_ratio(z, 1):.6f}   "
          f"q=15: {mertens_asymptotic_ratio(z, 15):.6f}")

###############################################################################
# Prime sums against integrals.  Smooth bumps settle down steadily; the box
# and the triple region wobble with the primes near ``x^(1/8)`` and
# ``x^(1/3)``.
xs = (1e3, 1e4, 1e5, 1e6, 1e7)
print("\n" + " " * 14 + "".join(f"{x:>10.0e}" for x in xs))
for name, cf in CATALOG.items():
    errs = [abs(l - r) for l, r in (prime_sum_integral_check(name, x) for x in xs)]
    print(f"{name:14s}" + "".join(f"{e:10.5f}" for e in errs))
