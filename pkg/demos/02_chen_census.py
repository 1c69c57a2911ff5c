"""
Counting Chen primes in progressions
====================================

A prime ``p`` counts when ``p + 2`` is prime (the twin branch) or a product of
two primes each at least ``p^(1/8)``.  We count them in every admissible class
``a mod q`` and compare with the natural normalisation ``x / (phi2(q) log^2 x)``.
"""
import math
from fractions import Fraction

from chenap.arith import phi2, valid_classes
from chenap.chen import chen_census, is_chen_prime

###############################################################################
# A few individual verdicts first.  ``7`` is the smallest prime that needs the
# semiprime branch: 9 = 3 * 3 and 3^8 >= 7.
for p in (2, 3, 5, 7, 13, 23, 89):
    v = is_chen_prime(p)
    print(f"p={p:3d}  {v.branch.value:20s} witness={v.witness}")

###############################################################################
# Census at x = 10^6 for small moduli.  The density column should be roughly
# flat in ``a`` for each ``q`` -- that is the equidistribution the theorem is
# about.
x = 10**6
print(f"\n{'q':>3} {'a':>3} {'count':>7} {'twin':>6} {'semi':>6}  density")
for q in (1, 3, 5, 7, 15):
    for ap in valid_classes(q):
        c = chen_census(x, ap)
        dens = c.total * float(phi2(q)) * math.log(x) ** 2 / x
        print(f"{q:3d} {ap.a:3d} {c.total:7d} {c.twin:6d} {c.qualified_semiprime:6d}  {dens:.3f}")

###############################################################################
# Chen's original threshold was ``p^(1/10)``; loosening the exponent can only
# add primes.
for e in (Fraction(1, 10), Fraction(1, 8), Fraction(1, 4), Fraction(1, 3)):
    print(f"exponent {str(e):>5s}: {chen_census(x, valid_classes(1)[0], e).total}")
