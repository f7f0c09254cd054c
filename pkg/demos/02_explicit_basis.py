"""An explicit basis of D(X3(-1), [2k,2k,2k,1,1,1]) and its Saito certificate."""

from freemult import QQ, MembershipError, canonical_basis, saito_check, x3

for k in (1, 2, 3):
    A = x3(-1, QQ, (2 * k,) * 3 + (1, 1, 1))
    basis = canonical_basis(k)
    res = saito_check(A, basis)
    print(f"k = {k}: degrees {[t.degree for t in basis]}, det = {res.k} * Q")
    if k == 1:
        for t in basis:
            print("   ", t)

# against a bigger multiplicity the same triple is caught before any determinant
A = x3(-1, QQ, (3, 2, 2, 1, 1, 1))
try:
    saito_check(A, canonical_basis(1))
except MembershipError as exc:
    print("rejected:", exc)
