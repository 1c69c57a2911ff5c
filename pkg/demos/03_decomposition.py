"""
The four-term decomposition
===========================

Summing the pointwise almost-prime inequality against ``Lambda_{a,q}`` gives

    LHS >= A1 - A2/2 - A3/2 - A4,

where LHS weights primes ``n`` with ``n + 2`` an almost prime free of small
factors.  Here we evaluate every term exactly, normalised by
``x / (phi2(q) log x)``, and watch how slowly the picture settles: the
asymptotic constants are only lower/upper bounds for these ratios, and the
``o(1)`` terms are large at desk scale.
"""
from chenap.arith import APClass
from chenap.decomp import SieveParams, decompose

###############################################################################
# The table: ratios for the class 2 mod 3 as x grows.  ``lhs >= comb`` holds
# at every size; positivity of ``comb`` is only an asymptotic statement.
ap = APClass(2, 3)
print(f"\n{'x':>8} {'A1':>7} {'A2':>7} {'A3':>7} {'A4':>7} {'comb':>7} {'lhs':>7}")
for x in (10**4, 10**5, 10**6, 10**7):
    r = decompose(SieveParams(x), ap)
    e = r.extras
    a4 = r.A4_sum / r.normalizer
    print(f"{x:8.0e} {e['A1_ratio']:7.3f} {e['A2_sum_ratio']:7.3f} {e['A3_ratio']:7.3f} "
          f"{a4:7.3f} {e['combination_ratio']:7.3f} {e['lhs_ratio']:7.3f}  holds={r.lemma_holds}")
