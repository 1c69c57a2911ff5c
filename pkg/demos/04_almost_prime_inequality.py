"""
Checking the almost-prime inequality exhaustively
=================================================

For ``x^(2/3) < n <= x`` the indicator of "at most two prime factors" is
bounded below by

    1 - 1/2 #{p <= x^(1/3): p | n} - 1/2 [n = p1 p2 p3, p1 <= x^(1/3) < p2]
      - #{p <= x^(1/3): p^2 | n}.

Both sides are exact halves, so the check is exact.
"""
from chenap.chen import lemma14_rhs, lemma14_window, p2_indicator, verify_lemma14

###############################################################################
# A handful of hand cases at x = 1000 (x^(1/3) = 10).
for n in (997, 961, 902, 990, 1000, 105 * 7):
    print(f"n={n:4d}  P2={p2_indicator(n, 1000)}  rhs={lemma14_rhs(n, 1000)}")

###############################################################################
# The full scan.  Every violation would be printed; there are none.
for x in (10**2, 10**3, 10**5, 10**6):
    lo, hi = lemma14_window(x)
    bad = verify_lemma14(x)
    print(f"x={x:8.0e}  window [{lo}, {hi}]  violations: {len(bad)}")
