"""Exponents of multiplicities on points of P^1."""

from freemult import p1_exponents
from freemult.restriction import points_on_line

# four points x, z, x + z, x + alpha*z with multiplicity [3, 3, 1, 1]
for alpha in (-1, 2, 3, 5):
    P = points_on_line([(1, 0), (0, 1), (1, 1), (1, alpha)], [3, 3, 1, 1])
    print(f"alpha = {alpha:>2}: exponents {p1_exponents(P)}")

# three points: balanced unless one multiplicity dominates
for m in [(2, 2, 1), (4, 4, 1), (1, 1, 6), (3, 4, 5)]:
    print(m, p1_exponents(points_on_line([(1, 0), (0, 1), (1, 1)], m)))
