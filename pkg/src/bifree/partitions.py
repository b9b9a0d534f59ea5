"""Set partitions of ``{1..n}``: refinement order, kernels, noncrossing
partitions and the Möbius function of the noncrossing lattice.

Indices are 1-based.  A :class:`Partition` is stored canonically (blocks
sorted internally, blocks sorted by their minimum), so equality and hashing
are structural.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

MAX_ENUMERATE = 14


class Partition:
    """A partition of ``{1..n}`` into nonempty disjoint blocks."""

    __slots__ = ("n", "blocks", "_labels", "_hash")

    def __init__(self, blocks: Iterable[Iterable[int]], n: int | None = None):
        bl = [tuple(sorted(int(i) for i in b)) for b in blocks]
        if any(len(b) == 0 for b in bl):
            raise ValueError("blocks must be nonempty")
        elements = [i for b in bl for i in b]
        if n is None:
            n = max(elements) if elements else 0
        if n < 1:
            raise ValueError("a partition needs n >= 1")
        if sorted(elements) != list(range(1, n + 1)):
            raise ValueError(f"blocks {bl} do not partition {{1..{n}}}")
        self.n = n
        self.blocks = tuple(sorted(bl))
        labels = [0] * n
        for k, b in enumerate(self.blocks):
            for i in b:
                labels[i - 1] = k
        self._labels = tuple(labels)
        self._hash = hash((n, self.blocks))

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        """Partition whose blocks are the level sets of ``labels`` (positions 1..n)."""
        groups: dict = {}
        for pos, lab in enumerate(labels, start=1):
            groups.setdefault(lab, []).append(pos)
        return cls(groups.values(), n=len(labels))

    @property
    def rgs(self) -> tuple[int, ...]:
        """Restricted growth string (0-based block labels by first appearance)."""
        return self._labels

    def block_of(self, i: int) -> tuple[int, ...]:
        return self.blocks[self._labels[i - 1]]

    def same_block(self, i: int, j: int) -> bool:
        return self._labels[i - 1] == self._labels[j - 1]

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.n == other.n and self.blocks == other.blocks

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Partition") -> bool:
        return (self.n, self.rgs) < (other.n, other.rgs)

    def to_list(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    def relabel(self, f: Sequence[int]) -> "Partition":
        """Image partition ``{f(V)}``; ``f`` is a 1-based image sequence of a permutation."""
        return Partition(([f[i - 1] for i in b] for b in self.blocks), n=self.n)

    def __repr__(self) -> str:
        return f"Partition({self.to_list()})"

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ", ".join(map(str, b)) + "}" for b in self.blocks) + "}"


def zero(n: int) -> Partition:
    return Partition(([i] for i in range(1, n + 1)), n=n)


def one(n: int) -> Partition:
    return Partition([range(1, n + 1)], n=n)


def _check_sizes(p: Partition, q: Partition) -> None:
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")


def leq(p: Partition, q: Partition) -> bool:
    """Refinement order: every block of ``p`` lies inside a block of ``q``."""
    _check_sizes(p, q)
    lab = q.rgs
    return all(len({lab[i - 1] for i in b}) == 1 for b in p.blocks)


def kernel(indices: Sequence) -> Partition:
    """``ker(J)``: positions ``k, k'`` share a block iff ``J[k] == J[k']``."""
    if len(indices) == 0:
        raise ValueError("kernel of an empty tuple")
    return Partition.from_labels(list(indices))


def is_noncrossing(p: Partition) -> bool:
    """No ``a < b < c < d`` with ``a, c`` in one block and ``b, d`` in another."""
    lab = p.rgs
    k = len(p.blocks)
    for x in range(k):
        for y in range(x + 1, k):
            # compress the label sequence restricted to {x, y}
            runs = 0
            last = None
            for v in lab:
                if v == x or v == y:
                    if v != last:
                        runs += 1
                        last = v
                        if runs >= 4:
                            return False
    return True


def set_partitions(n: int) -> list[Partition]:
    """All partitions of ``{1..n}`` in restricted-growth-string order."""
    if not 1 <= n <= MAX_ENUMERATE:
        raise ValueError(f"n must be in 1..{MAX_ENUMERATE}")
    out = []

    def rec(labels: list[int], top: int) -> None:
        if len(labels) == n:
            out.append(Partition.from_labels(labels))
            return
        for lab in range(top + 2):
            labels.append(lab)
            rec(labels, max(top, lab))
            labels.pop()

    rec([0], 0)
    return out


@lru_cache(maxsize=None)
def _nc_tuple(n: int) -> tuple[Partition, ...]:
    out = []

    # stack of blocks still open for new elements; joining block Y closes
    # every block opened after Y (otherwise a crossing would appear)
    def rec(labels: list[int], stack: list[int], top: int) -> None:
        if len(labels) == n:
            out.append(Partition.from_labels(labels))
            return
        for lab in sorted(stack) + [top + 1]:
            if lab <= top:
                depth = stack.index(lab)
                new_stack = stack[: depth + 1]
                new_top = top
            else:
                new_stack = stack + [lab]
                new_top = lab
            labels.append(lab)
            rec(labels, new_stack, new_top)
            labels.pop()

    rec([0], [0], 0)
    return tuple(out)


def enumerate_nc(n: int) -> list[Partition]:
    """All noncrossing partitions of ``{1..n}``, lexicographic in the RGS."""
    if not 1 <= n <= MAX_ENUMERATE:
        raise ValueError(f"n must be in 1..{MAX_ENUMERATE}")
    return list(_nc_tuple(n))


def nc_interval(p: Partition, q: Partition) -> list[Partition]:
    """Noncrossing ``r`` with ``p <= r <= q``."""
    return [r for r in _nc_tuple(p.n) if leq(p, r) and leq(r, q)]


@lru_cache(maxsize=None)
def _mobius(p: Partition, q: Partition) -> Fraction:
    if p == q:
        return Fraction(1)
    total = Fraction(0)
    for r in nc_interval(p, q):
        if r != p:
            total += _mobius(r, q)
    return -total


def mobius_nc(p: Partition, q: Partition) -> Fraction:
    """Möbius function of ``[p, q]`` in NC(n), by the defining recursion
    ``sum_{p <= r <= q} mu(r, q) = [p == q]``."""
    _check_sizes(p, q)
    if not (is_noncrossing(p) and is_noncrossing(q)):
        raise ValueError("mobius_nc needs noncrossing partitions")
    if not leq(p, q):
        raise ValueError(f"{p} is not below {q}")
    return _mobius(p, q)
