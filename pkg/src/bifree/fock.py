"""Truncated free products of pointed spaces with left and right representations.

Component ``j`` is ``C^{d_j}`` with distinguished vector ``e_0``; its reduced
space is spanned by ``e_1 .. e_{d_j - 1}``.  Basis vectors of the free product
are alternating words ``((i_1, a_1), ..., (i_k, a_k))`` with ``i_t != i_{t+1}``,
``a_t >= 1`` and ``k <= L``; the empty word is the vacuum.  ``lambda_j(T)``
acts on the leftmost tensor slot, ``rho_j(T)`` on the rightmost one, and any
output longer than ``L`` is cut.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .colorings import LEFT, RIGHT
from .cumulants import MomentFunctional
from .linalg import SparseMatrix, matrix

VACUUM = ()


@dataclass
class PointedSpace:
    dim: int
    operators: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("a pointed space needs dim >= 1")
        for name, op in self.operators.items():
            if np.shape(op) != (self.dim, self.dim):
                raise ValueError(f"operator {name!r} must be {self.dim}x{self.dim}")

    def vacuum_moment(self, ops: Sequence[np.ndarray]):
        """``<T_1 ... T_k e_0, e_0>`` computed directly in the component."""
        v = np.zeros(self.dim, dtype=object)
        v[:] = Fraction(0)
        v[0] = Fraction(1)
        for op in reversed(ops):
            v = op.dot(v)
        return v[0]


@dataclass
class RepresentedOperator:
    side: str
    component: int
    matrix: SparseMatrix
    name: str = ""

    def apply(self, vec: dict) -> dict:
        return self.matrix.apply(vec)

    def __str__(self) -> str:
        kind = "lambda" if self.side == LEFT else "rho"
        return f"{kind}_{self.component}({self.name or 'T'})"


class TruncatedFreeProduct:
    """Ordered basis of the truncated free product; components are 1-based."""

    def __init__(self, components: Sequence[PointedSpace], max_len: int):
        if not components:
            raise ValueError("need at least one component")
        if max_len < 1:
            raise ValueError("max_len must be >= 1")
        self.components = list(components)
        self.max_len = max_len
        basis = [VACUUM]
        layer = [VACUUM]
        for _ in range(max_len):
            nxt = []
            for w in layer:
                last = w[-1][0] if w else None
                for i, comp in enumerate(self.components, 1):
                    if i == last:
                        continue
                    for a in range(1, comp.dim):
                        nxt.append(w + ((i, a),))
            basis.extend(nxt)
            layer = nxt
        self.basis = basis
        self.index = {w: k for k, w in enumerate(basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _component(self, j: int) -> PointedSpace:
        if not 1 <= j <= len(self.components):
            raise ValueError(f"unknown component {j}")
        return self.components[j - 1]

    def _represent(self, j: int, T, side: str, name: str) -> RepresentedOperator:
        comp = self._component(j)
        T = np.asarray(T, dtype=object)
        if T.shape != (comp.dim, comp.dim):
            raise ValueError(f"operator must be {comp.dim}x{comp.dim} for component {j}")
        index, L = self.index, self.max_len
        cols = []
        for w in self.basis:
            slot = 0 if side == LEFT else -1
            if w and w[slot][0] == j:
                c = w[slot][1]
                rest = w[1:] if side == LEFT else w[:-1]
            else:
                c, rest = 0, w
            col = {}
            for a in range(comp.dim):
                v = T[a, c]
                if v == 0:
                    continue
                if a == 0:
                    out = rest
                elif side == LEFT:
                    out = ((j, a),) + rest
                else:
                    out = rest + ((j, a),)
                if len(out) > L:
                    continue
                k = index[out]
                col[k] = col.get(k, 0) + v
            cols.append({k: v for k, v in col.items() if v != 0})
        return RepresentedOperator(side, j, SparseMatrix((self.dim, self.dim), cols), name)

    def lam(self, j: int, T, name: str = "") -> RepresentedOperator:
        return self._represent(j, T, LEFT, name)

    def rho(self, j: int, T, name: str = "") -> RepresentedOperator:
        return self._represent(j, T, RIGHT, name)

    def commute_on_short_words(self, A: RepresentedOperator, B: RepresentedOperator, below: int) -> bool:
        """Whether ``AB = BA`` on every basis word of length < ``below``."""
        for k, w in enumerate(self.basis):
            if len(w) >= below:
                continue
            e = {k: Fraction(1)}
            ab = A.apply(B.apply(e))
            ba = B.apply(A.apply(e))
            keys = set(ab) | set(ba)
            if any(ab.get(i, 0) != ba.get(i, 0) for i in keys):
                return False
        return True

    def vacuum_expectation(self, ops: Sequence[RepresentedOperator]):
        """``<T_1 ... T_n Omega, Omega>``; words longer than ``L`` are rejected."""
        if len(ops) > self.max_len:
            raise ValueError(f"word length {len(ops)} exceeds truncation length {self.max_len}")
        v = {0: Fraction(1)}
        for op in reversed(ops):
            v = op.apply(v)
            if not v:
                return Fraction(0)
        return v.get(0, Fraction(0))


def build_model(components: Sequence[PointedSpace], max_len: int) -> TruncatedFreeProduct:
    return TruncatedFreeProduct(components, max_len)


@dataclass
class FockFamily:
    """A truncated model together with pairs ``(left operator, right operator)``."""

    model: TruncatedFreeProduct
    pairs: list

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    def operator(self, letter) -> RepresentedOperator:
        j, face = letter
        left, right = self.pairs[j - 1]
        return left if face == LEFT else right

    def expect(self, word) -> Fraction:
        return self.model.vacuum_expectation([self.operator(l) for l in word])

    def moments(self, n_max: int | None = None) -> MomentFunctional:
        """All vacuum moments up to ``n_max`` (default ``L``), by depth-first
        extension on the left so every suffix vector is computed once."""
        n_max = self.model.max_len if n_max is None else n_max
        if n_max > self.model.max_len:
            raise ValueError(f"n_max {n_max} exceeds truncation length {self.model.max_len}")
        letters = [(j, f) for j in range(1, self.n_pairs + 1) for f in (LEFT, RIGHT)]
        ops = {l: self.operator(l) for l in letters}
        values = {}

        def dfs(word: tuple, vec: dict) -> None:
            for l in letters:
                w = (l,) + word
                v = ops[l].apply(vec) if vec else {}
                values[w] = v.get(0, Fraction(0))
                if len(w) < n_max:
                    dfs(w, v)

        dfs((), {0: Fraction(1)})
        return MomentFunctional(values, n_max=n_max)


def make_bifree_family(Tl, Tr, n_copies: int, max_len: int, dim: int | None = None) -> FockFamily:
    """``n_copies`` identical components carrying the template pair;
    pair ``j`` is ``(lambda_j(Tl), rho_j(Tr))``."""
    Tl = np.asarray(Tl, dtype=object)
    Tr = np.asarray(Tr, dtype=object)
    dim = Tl.shape[0] if dim is None else dim
    comps = [PointedSpace(dim, {"Tl": Tl, "Tr": Tr}) for _ in range(n_copies)]
    model = build_model(comps, max_len)
    pairs = [(model.lam(j, Tl, "Tl"), model.rho(j, Tr, "Tr")) for j in range(1, n_copies + 1)]
    return FockFamily(model, pairs)


def family_from_components(components: Sequence[PointedSpace], max_len: int,
                           left: str = "Tl", right: str = "Tr") -> FockFamily:
    """One pair per component from its named operators (possibly different components)."""
    model = build_model(components, max_len)
    pairs = []
    for j, comp in enumerate(components, 1):
        if left not in comp.operators or right not in comp.operators:
            raise ValueError(f"component {j} needs operators {left!r} and {right!r}")
        pairs.append((model.lam(j, comp.operators[left], left), model.rho(j, comp.operators[right], right)))
    return FockFamily(model, pairs)


# default template: a generic integer pair on C^2
DEFAULT_TL = matrix([[1, 1], [1, 0]])
DEFAULT_TR = matrix([[2, 1], [1, -1]])


def default_family(n_copies: int, max_len: int) -> FockFamily:
    return make_bifree_family(DEFAULT_TL, DEFAULT_TR, n_copies, max_len)


def shared_left_family(max_len: int) -> FockFamily:
    """Two pairs sharing one left operator: ``x_1^l = x_2^l``, so the family is not bi-free."""
    fam = default_family(2, max_len)
    (l1, r1), (_, r2) = fam.pairs
    return FockFamily(fam.model, [(l1, r1), (l1, r2)])


def is_selfadjoint(T) -> bool:
    T = np.asarray(T)
    return bool(np.all(T == T.T.conj() if T.dtype != object else T == T.T))
