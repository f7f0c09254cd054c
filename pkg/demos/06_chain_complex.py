"""The scalar complex S^3 -> S^6 -> S^3 behind the matrix M."""

from fractions import Fraction

from freemult import QQ, GF, verify_chain_exactness, x3_chain_complex
from freemult.homological import check_cokernel_presentation

cx = x3_chain_complex(Fraction(3, 2))
for row in cx.delta1:
    print([str(c) for c in row])
print("exact:", verify_chain_exactness(Fraction(3, 2)), "cokernel:", check_cokernel_presentation(cx))

for a in range(2, 11):
    assert verify_chain_exactness(a, GF(11))
print("exact for every admissible alpha in GF(11)")
