"""Independent brute-force references used by several test modules."""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    """Catalan numbers by the convolution recurrence C_{n+1} = sum C_i C_{n-i}."""
    if n == 0:
        return 1
    return sum(catalan(i) * catalan(n - 1 - i) for i in range(n))


def all_set_partitions(n: int):
    """Set partitions of 1..n as sorted tuples of sorted tuples, by brute force over label maps."""
    seen = set()
    for labels in itertools.product(range(n), repeat=n):
        groups = {}
        for i, lab in enumerate(labels, 1):
            groups.setdefault(lab, []).append(i)
        key = tuple(sorted(tuple(g) for g in groups.values()))
        seen.add(key)
    return sorted(seen)


def crosses(blocks) -> bool:
    """Literal crossing test: a < b < c < d with a, c in one block and b, d in another."""
    for V, W in itertools.permutations(blocks, 2):
        for a, c in itertools.combinations(V, 2):
            for b, d in itertools.combinations(W, 2):
                if a < b < c < d:
                    return True
    return False


def refines(p, q) -> bool:
    return all(any(set(b) <= set(c) for c in q) for b in p)


def twist_literal(chi: str):
    """Lefts ascending, then rights descending."""
    lefts = [i for i, f in enumerate(chi, 1) if f == "l"]
    rights = [i for i, f in enumerate(chi, 1) if f == "r"]
    return tuple(lefts + rights[::-1])


def mobius_recursive(elements, leq, p, q):
    """mu(p, q) from mu(p, p) = 1 and sum over p <= r <= q of mu(p, r) = 0."""
    interval = sorted((r for r in elements if leq(p, r) and leq(r, q)), key=lambda r: -len(r))
    mu = {}
    for r in interval:
        mu[r] = Fraction(1) if r == p else -sum(mu[t] for t in mu if leq(t, r))
    return mu[q]
