"""
Distribution in residue classes
===============================

The sieve needs primes (and the triple products ``p1 p2 p3``) to be well
distributed in classes modulo ``d`` on average over ``d <= D``.  We measure the
discrepancy

    Delta(f; a (d)) = sum_{n = a (d)} f(n) - 1/phi(d) sum_{(n, d) = 1} f(n)

for three weights and add up the worst classes.
"""
import math

from chenap.discrepancy import Weight, bv_level, bv_sum, delta, row, sw_residual

###############################################################################
# Per-class discrepancies of ``Lambda`` on ``[1, 10^5]`` modulo 12 sum to zero.
x = 1e5
vals = {a: delta(Weight.MANGOLDT, x, a, 12) for a in (1, 5, 7, 11)}
print({a: round(v, 3) for a, v in vals.items()}, "sum", math.fsum(vals.values()))

###############################################################################
# Worst classes for a few moduli, and the Siegel-Walfisz-type residuals.
for d in (3, 4, 5, 7, 30):
    r = row(Weight.MANGOLDT, x, d)
    print(f"d={d:3d} worst a={r.worst_a:3d} |Delta|={r.delta_abs:9.3f}")
for d in (3, 4, 5):
    print(f"|psi(1e6; {d}, 1) - x/phi({d})| / x = {sw_residual(1e6, 1, d) / 1e6:.2e}")

###############################################################################
# Averaged over moduli up to sqrt(x), normalised by x.  The decay is slow but
# visible for all three weights.
for w in Weight:
    series = [bv_sum(x, bv_level(x), w).total / x for x in (1e4, 1e5, 1e6)]
    print(f"{w.value:16s} " + "  ".join(f"{v:.4f}" for v in series))
