"""Operator-valued version: pairs over the diagonal algebra B = C^2.

Word spaces are tensor products over B, built as quotients of ordinary
tensor products.  Expectations are B-valued; the mixed cumulants still vanish.
"""
from bifree.bimodule import AlgebraB, check_bb_axioms, default_bimodule, make_bifree_B_family
from bifree.cumulants import check_bifree, make_word

B = AlgebraB.diagonal(2)
X = default_bimodule(B)
print("reduced bimodule dimension:", X.dim)

family = make_bifree_B_family(B, n_pairs=2, max_len=4)
print("word space dimensions:", {w: q.dim for w, q in family.model.spaces.items() if len(w) <= 3 and w[0] == 1})
ctx = family.context()
E = ctx(make_word((1, 2, 1), "lrl"))
print("E(x1^l x2^r x1^l) =", [[str(v) for v in row] for row in E])
print("B-B axioms:", "ok" if check_bb_axioms(family).ok else "violated")
print(check_bifree(ctx, [1, 2], 3).summary())
