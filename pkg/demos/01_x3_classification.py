"""Which multiplicities on X3(alpha) are free?"""

from freemult import GF, QQ, Status, classify_predicted, decide_free_bruteforce, decide_free_homological, x3

# the six lines x, y, z, x - alpha*y, x + z, y + z with three triple points
A = x3(-1)
print(A)
print("triple points:", [(0, 1, 3), (0, 2, 4), (1, 2, 5)])

# three independent answers for a few multiplicities
for m in [(1, 1, 1, 1, 1, 1), (2, 2, 2, 1, 1, 1), (3, 3, 3, 1, 1, 1), (2, 2, 2, 2, 1, 1)]:
    homo = decide_free_homological(-1, m)
    brute = decide_free_bruteforce(x3(-1, QQ, m))
    pred = classify_predicted(-1, m)
    print(m, homo.status, brute.status, pred, homo.exponents or "")

# over GF(7), alpha = 2 has order 3: [n,n,n,1,1,1] fails exactly when 3 | n - 1
F = GF(7)
for n in range(2, 8):
    v = decide_free_homological(2, (n, n, n, 1, 1, 1), F)
    print(f"n = {n}: {v.status}", "(unit minor at columns %s)" % (v.witness.get("columns"),) if v.is_free else "")
