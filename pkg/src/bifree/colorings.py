"""Face colorings, the twist permutation s_chi and bi-noncrossing partitions.

Permutations are 1-based image sequences ``(s(1), ..., s(n))``.  The bi-free
rule lists the left positions in increasing order followed by the right
positions in decreasing order.  A :class:`TwistFamily` generalizes this to an
arbitrary face alphabet with a chosen permutation per coloring.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .partitions import (
    MAX_ENUMERATE,
    Partition,
    enumerate_nc,
    is_noncrossing,
    leq,
    mobius_nc,
)

LEFT = "l"
RIGHT = "r"
BIFREE_ALPHABET = (LEFT, RIGHT)


@dataclass(frozen=True)
class Coloring:
    faces: tuple
    alphabet: tuple = BIFREE_ALPHABET

    def __post_init__(self):
        if len(self.faces) < 1:
            raise ValueError("a coloring needs length >= 1")
        bad = [f for f in self.faces if f not in self.alphabet]
        if bad:
            raise ValueError(f"faces {bad} not in alphabet {self.alphabet}")

    @classmethod
    def parse(cls, text: str) -> "Coloring":
        """``"lrl"`` for bi-free colorings, ``"1,2,1"`` for integer alphabets."""
        text = text.strip()
        if "," in text or text.isdigit():
            faces = tuple(int(t) for t in text.split(","))
            return cls(faces, tuple(sorted(set(faces))))
        return cls(tuple(text))

    @property
    def n(self) -> int:
        return len(self.faces)

    def __len__(self) -> int:
        return len(self.faces)

    def __getitem__(self, i: int):
        """1-based face lookup."""
        return self.faces[i - 1]

    def restrict(self, positions: Sequence[int]) -> "Coloring":
        return Coloring(tuple(self.faces[i - 1] for i in positions), self.alphabet)

    def key(self) -> str:
        if self.alphabet == BIFREE_ALPHABET:
            return "".join(self.faces)
        return ",".join(str(f) for f in self.faces)

    def __str__(self) -> str:
        return self.key()


def as_coloring(chi) -> Coloring:
    if isinstance(chi, Coloring):
        return chi
    if isinstance(chi, str):
        return Coloring.parse(chi)
    faces = tuple(chi)
    if all(f in BIFREE_ALPHABET for f in faces):
        return Coloring(faces)
    return Coloring(faces, tuple(sorted(set(faces))))


def s_chi(chi) -> tuple[int, ...]:
    """Bi-free twist: left positions ascending, then right positions descending."""
    chi = as_coloring(chi)
    foreign = [f for f in chi.faces if f not in BIFREE_ALPHABET]
    if foreign:
        raise ValueError(f"bi-free rule needs faces in {{l, r}}, got {sorted(set(foreign))}")
    lefts = [i for i, f in enumerate(chi.faces, 1) if f == LEFT]
    rights = [i for i, f in enumerate(chi.faces, 1) if f == RIGHT]
    return tuple(lefts + rights[::-1])


def invert(s: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(s)
    for t, v in enumerate(s, 1):
        inv[v - 1] = t
    return tuple(inv)


def compose(s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    """``(s o t)(i) = s(t(i))``."""
    return tuple(s[t[i] - 1] for i in range(len(t)))


def _check_permutation(s: Sequence[int], n: int) -> tuple[int, ...]:
    s = tuple(int(v) for v in s)
    if sorted(s) != list(range(1, n + 1)):
        raise ValueError(f"{s} is not a permutation of 1..{n}")
    return s


@dataclass(frozen=True)
class TwistFamily:
    """A choice of permutation ``s_chi`` for every coloring ``chi``.

    ``kind`` is ``"bifree"``, ``"identity"`` or ``"table"``.  Tables reject
    colorings they do not list.
    """

    kind: str = "bifree"
    table: Mapping[tuple, tuple] = field(default_factory=dict)

    @classmethod
    def bifree(cls) -> "TwistFamily":
        return cls("bifree")

    @classmethod
    def identity(cls) -> "TwistFamily":
        return cls("identity")

    @classmethod
    def from_table(cls, table: Mapping) -> "TwistFamily":
        clean = {}
        for key, perm in table.items():
            chi = as_coloring(key)
            clean[chi.faces] = _check_permutation(perm, chi.n)
        return cls("table", clean)

    def perm(self, chi) -> tuple[int, ...]:
        chi = as_coloring(chi)
        if self.kind == "bifree":
            return s_chi(chi)
        if self.kind == "identity":
            return tuple(range(1, chi.n + 1))
        try:
            return self.table[chi.faces]
        except KeyError:
            raise KeyError(f"twist table has no entry for coloring {chi.key()!r}") from None

    @property
    def restricts(self) -> bool:
        """Whether ``s_{chi|S}`` is the restriction of ``s_chi`` to ``S`` for every ``S``."""
        return self.kind in ("bifree", "identity")


BIFREE = TwistFamily.bifree()
IDENTITY = TwistFamily.identity()


def apply_perm(p: Partition, s: Sequence[int]) -> Partition:
    """Replace every index ``i`` of ``p`` by ``s(i)``."""
    return p.relabel(s)


def _sizes(p: Partition, chi: Coloring) -> None:
    if p.n != chi.n:
        raise ValueError(f"size mismatch: partition of {p.n} vs coloring of length {chi.n}")


def untwist(p: Partition, chi, twist: TwistFamily = BIFREE) -> Partition:
    """``s_chi^{-1}(p)``."""
    chi = as_coloring(chi)
    _sizes(p, chi)
    return apply_perm(p, invert(twist.perm(chi)))


def is_bnc(p: Partition, chi, twist: TwistFamily = BIFREE) -> bool:
    return is_noncrossing(untwist(p, chi, twist))


@dataclass(frozen=True)
class BNCContext:
    chi: Coloring
    twist: TwistFamily = BIFREE

    @property
    def s(self) -> tuple[int, ...]:
        return self.twist.perm(self.chi)

    @property
    def s_inv(self) -> tuple[int, ...]:
        return invert(self.s)


_bnc_cache: dict = {}


def enumerate_bnc(chi, twist: TwistFamily = BIFREE) -> list[Partition]:
    """``{s_chi(p) : p in NC(n)}``, in the enumeration order of NC(n)."""
    chi = as_coloring(chi)
    if chi.n > MAX_ENUMERATE:
        raise ValueError(f"n must be <= {MAX_ENUMERATE}")
    s = twist.perm(chi)
    key = (s, chi.n)
    if key not in _bnc_cache:
        _bnc_cache[key] = tuple(apply_perm(p, s) for p in enumerate_nc(chi.n))
    return list(_bnc_cache[key])


def mobius_bnc(p: Partition, q: Partition, ctx: BNCContext | str | Coloring) -> Fraction:
    if not isinstance(ctx, BNCContext):
        ctx = BNCContext(as_coloring(ctx))
    s_inv = ctx.s_inv
    up, uq = apply_perm(p, s_inv), apply_perm(q, s_inv)
    if not (is_noncrossing(up) and is_noncrossing(uq)):
        raise ValueError(f"partitions must be bi-noncrossing for {ctx.chi}")
    if not leq(p, q):
        raise ValueError(f"{p} is not below {q}")
    return mobius_nc(up, uq)
