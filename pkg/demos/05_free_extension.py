"""A rank-4 free arrangement whose restriction is (X3(alpha), [n,n,n,1,1,1])."""

from freemult import GF, QQ, ExtensionSpec, build_extension, terao_trace, verify_extension
from freemult.extension import find_w
from freemult.arrangement import ziegler_restriction

A4 = build_extension(ExtensionSpec(-1, (1,), QQ))
print(len(A4), "hyperplanes")
print(A4)

rep = verify_extension(A4, full_saito=True)
print("free:", rep.ok, "| full Saito:", rep.full_saito["status"], rep.full_saito["exponents"])
print("restriction onto w = 0:", ziegler_restriction(A4, find_w(A4)))

for step in terao_trace(A4):
    print(f"  [{'ok' if step.ok else 'FAIL'}] {step.name}")

# move one grid hyperplane: some localization stops being free
forms = list(A4.forms)
forms[0] = (1, 0, 0, -3)
B = type(A4)(QQ, forms, A4.mult, A4.vars)
rep = verify_extension(B)
print("perturbed free:", rep.ok, rep.notes)

# alpha of order 3 lives in GF(7)
print(len(build_extension(ExtensionSpec(2, (1, 3), GF(7)))), "hyperplanes over GF(7), t = 2")
