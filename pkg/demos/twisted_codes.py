"""
A tour of twisted Reed-Solomon codes
====================================

A twist (t, h, eta) adds eta * x^(k-1+t) to the basis monomial x^h.
"""

import random

from mdsforge import Field, grs_decide
from mdsforge.codes import is_mds, square_dim, systematic_form
from mdsforge.gtrs import (
    FAMILY_LAST_HOOK,
    GtrsParams,
    LambdaTable,
    dual_square_witness,
    gtrs_generator,
    gtrs_mds_test,
    gtrs_systematic,
    information_set_test,
)
from mdsforge.reproduce import subgroup_instance

F = Field(13)
alpha = [F(a) for a in (1, 2, 3, 4, 5, 6, 7)]

# one twist on the top monomial: x^2 + 5 x^3
p = GtrsParams.single(alpha, 3, 1, 2, F(5))
code = gtrs_generator(p)
print("generator of the twisted [7,3] code:")
print(code.gen.to_text())

# information sets through a k x k matrix built from power sums
ok, small = information_set_test(p, (0, 1, 2))
print("\n{0,1,2} is an information set:", ok, " reduced matrix:", small.to_text())

# this eta is unlucky: some 3-subset is dependent
mds, bad = gtrs_mds_test(p)
print("\nMDS by information sets:", mds, " by minors:", is_mds(code)[0], " first bad subset:", bad)

# power sums of the locators vanish below n - 1
lt = LambdaTable(alpha)
print("\nlambda_0 .. lambda_7:", [str(lt.lam(m)) for m in range(8)])

# closed-form systematic block on the order-6 subgroup of F_13
q = subgroup_instance(13, 3)
sys_ = gtrs_systematic(q)
print("\nsubgroup instance alpha =", [str(a) for a in q.alpha], " eta =", q.twists[0].eta)
print("r =", [str(row[0]) for row in sys_.r.tolist()])
print("d =", [str(x) for x in sys_.d.row(0)])
print("matches elimination:", sys_.block == systematic_form(gtrs_generator(q), [0, 1, 2])[1])

# the hook k-1 family: the square of the dual is too large to be GRS
rng = random.Random(3)
alpha10 = [F(a) for a in rng.sample(range(13), 10)]
p10 = GtrsParams.single(alpha10, 6, 1, 5, F(2))
w = dual_square_witness(p10, FAMILY_LAST_HOOK)
print(f"\n[10,6] hook 5: witness rank {w.rank}, measured dim {w.measured_dim},"
      f" a GRS dual would give {2 * (w.n - w.k) - 1}")
print("recipe vectors:", [label for label, _, _ in w.vectors])
print("grs_decide:", grs_decide(gtrs_generator(p10)).to_json()["verdict"],
      " dim C^2:", square_dim(gtrs_generator(p10)))
