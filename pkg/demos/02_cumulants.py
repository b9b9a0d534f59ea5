"""Moments and (l, r)-cumulants.

Cumulants come from Möbius inversion over the bi-noncrossing lattice; the
inverse transform sums them back.  Everything stays in exact rationals.
"""
from fractions import Fraction

from bifree.colorings import enumerate_bnc
from bifree.cumulants import (
    BifreeCumulants,
    CumulantTable,
    MomentFunctional,
    all_words,
    format_word,
    make_word,
    moments_from_cumulants,
)
from bifree.partitions import one

# two letters by hand: kappa(x^l x^r) = phi(x^l x^r) - phi(x^l) phi(x^r)
a, b = make_word((1,), "l"), make_word((1,), "r")
ab = make_word((1, 1), "lr")
phi = MomentFunctional({a: Fraction(1, 2), b: Fraction(2, 3), ab: Fraction(5, 6)})
table = CumulantTable(phi)
for pi in enumerate_bnc("lr"):
    print(f"kappa_{pi}({format_word(ab)}) = {table[(ab, pi)]}")

# a random rational functional survives the round trip exactly
phi = MomentFunctional.random([1, 2], 4, seed=7)
table = CumulantTable(phi)
ok = all(moments_from_cumulants(table, w) == phi(w) for w in all_words([1, 2], 4))
print("round trip exact on all words of length <= 4:", ok)

# the first-block recursion gives the same full cumulants faster
fast = BifreeCumulants(phi)
word = make_word((1, 2, 2, 1), "lrrl")
print(f"full cumulant of {format_word(word)}: {table[(word, one(4))]} (definition) = {fast(word)} (recursion)")
