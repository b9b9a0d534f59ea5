"""Bi-noncrossing partitions: twist permutations, counts and pictures.

A partition is bi-noncrossing for a coloring when pulling the left points to
the left (in order) and the right points to the right (in reverse order)
makes it noncrossing.
"""
from bifree.colorings import enumerate_bnc, is_bnc, s_chi, untwist
from bifree.draw import draw_ascii
from bifree.partitions import Partition, enumerate_nc, is_noncrossing

chi = "lrllrrlrr"
pi = Partition([[1, 2], [3, 5, 9], [4, 7], [6, 8]])

print("coloring", chi, "has twist", s_chi(chi))
print(pi, "is noncrossing:", is_noncrossing(pi), "| bi-noncrossing:", is_bnc(pi, chi))
print("untwisted:", untwist(pi, chi))
print()
print(draw_ascii(pi, chi, twisted_panel=True))

# the twist is a bijection NC(n) -> BNC(chi), so every coloring has Catalan many
for n in range(1, 7):
    counts = {len(enumerate_bnc(c)) for c in ("l" * n, "r" * n, ("lr" * n)[:n], ("rrl" * n)[:n])}
    print(f"n = {n}: |NC| = {len(enumerate_nc(n))}, |BNC| over sample colorings = {counts}")
