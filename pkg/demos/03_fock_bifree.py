"""Bi-free pairs on a truncated free product of pointed spaces.

Left operators act on the leftmost tensor factor and right operators on the
rightmost one.  For such pairs every mixed (l, r)-cumulant vanishes, and the
expectation agrees with the formula that assumes bi-freeness.
"""
from bifree.cumulants import all_words, check_bifree, check_splitting, twisted_expectation_G
from bifree.fock import default_family, shared_left_family

family = default_family(n_copies=2, max_len=5)
print("basis dimension of the truncated model:", family.model.dim)
phi = family.moments(5)

report = check_bifree(phi, [1, 2], 5)
print(report.summary())
print("splitting on distinct indices:", check_splitting(phi, [1, 2], 2).ok)
print("G = E on all words of length <= 4:",
      all(twisted_expectation_G(w, phi) == phi(w) for n in range(1, 5) for w in all_words([1, 2], n)))

# a negative control: both pairs share their left operator
bad = shared_left_family(4).moments(4)
report = check_bifree(bad, [1, 2], 4)
print(report.summary())
chi, pi, J, value = report.violations[0]
print(f"first nonzero mixed cumulant: coloring {chi}, indices {J}, value {value}")
