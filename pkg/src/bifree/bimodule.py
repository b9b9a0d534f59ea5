"""Operator-valued models: a matrix algebra B, B-B-bimodules, their truncated
free product with tensor-over-B quotients, and the left/right representations.

Vectors of a bimodule are coordinate columns; ``left[k]`` and ``right[k]`` are
the matrices of ``x -> b_k . x`` and ``x -> x . b_k`` for the k-th basis
element ``b_k`` of B.  The free product is ``B ⊕ (⊕_w W(w))`` over alternating
words ``w`` of length ``<= L``.  Each ``W(w)`` is the scalar tensor product of
the reduced spaces modulo every junction relation ``(x.b) ⊗ y - x ⊗ (b.y)``;
its basis is the set of non-pivot coordinates of the row-reduced relation
space, and a basis vector lifts to the corresponding pure tensor.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .colorings import LEFT
from .linalg import SparseMatrix, identity, is_zero, nullspace, rref, solve_coordinates, zeros


def _unit(d: int, i: int, j: int) -> np.ndarray:
    m = zeros((d, d))
    m[i, j] = Fraction(1)
    return m


class AlgebraB:
    """A unital subalgebra of ``d x d`` matrices given by a basis."""

    def __init__(self, basis: Sequence[np.ndarray], kind: str = "custom"):
        self.basis = [np.asarray(b, dtype=object) for b in basis]
        self.d = self.basis[0].shape[0]
        self.kind = kind
        self._coords: dict = {}
        n = len(self.basis)
        # structure constants: coords of b_k b_l
        self.mult = [[self.coords(self.basis[k].dot(self.basis[l])) for l in range(n)] for k in range(n)]
        self.unit_coords = self.coords(identity(self.d))

    @classmethod
    def diagonal(cls, d: int) -> "AlgebraB":
        return cls([_unit(d, i, i) for i in range(d)], "diagonal")

    @classmethod
    def full(cls, d: int) -> "AlgebraB":
        return cls([_unit(d, i, j) for i in range(d) for j in range(d)], "full")

    @classmethod
    def scalars(cls) -> "AlgebraB":
        return cls([identity(1)], "scalars")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, b: np.ndarray) -> tuple:
        key = tuple(np.asarray(b, dtype=object).flat)
        if key not in self._coords:
            self._coords[key] = tuple(solve_coordinates(self.basis, b))
        return self._coords[key]

    def element(self, coords: Sequence) -> np.ndarray:
        out = zeros((self.d, self.d))
        for c, b in zip(coords, self.basis):
            if c != 0:
                out = out + c * b
        return out

    def one(self) -> np.ndarray:
        return identity(self.d)

    def contains(self, b: np.ndarray) -> bool:
        try:
            solve_coordinates(self.basis, b)
        except ValueError:
            return False
        return True

    def random_element(self, rng: random.Random, bound: int = 3) -> np.ndarray:
        return self.element([Fraction(rng.randint(-bound, bound)) for _ in self.basis])

    def left_regular(self, k: int) -> np.ndarray:
        """Matrix of ``b -> b_k b`` on B-coordinates."""
        n = self.dim
        m = zeros((n, n))
        for l in range(n):
            for i, c in enumerate(self.mult[k][l]):
                m[i, l] = c
        return m

    def right_regular(self, k: int) -> np.ndarray:
        """Matrix of ``b -> b b_k`` on B-coordinates."""
        n = self.dim
        m = zeros((n, n))
        for l in range(n):
            for i, c in enumerate(self.mult[l][k]):
                m[i, l] = c
        return m


def _combine(mats: Sequence[np.ndarray], coords: Sequence) -> np.ndarray:
    out = zeros(mats[0].shape)
    for c, m in zip(coords, mats):
        if c != 0:
            out = out + c * m
    return out


@dataclass
class BBBimodule:
    B: AlgebraB
    left: list
    right: list

    @property
    def dim(self) -> int:
        return self.left[0].shape[0]

    def left_of(self, b: np.ndarray) -> np.ndarray:
        return _combine(self.left, self.B.coords(b))

    def right_of(self, b: np.ndarray) -> np.ndarray:
        return _combine(self.right, self.B.coords(b))

    def violations(self) -> list[str]:
        """Bimodule axioms that fail (empty when valid)."""
        B, out = self.B, []
        n = B.dim
        I = identity(self.dim)
        if not is_zero(_combine(self.left, B.unit_coords) - I):
            out.append("unit does not act as identity on the left")
        if not is_zero(_combine(self.right, B.unit_coords) - I):
            out.append("unit does not act as identity on the right")
        for k in range(n):
            for l in range(n):
                prod = B.mult[k][l]
                if not is_zero(self.left[k].dot(self.left[l]) - _combine(self.left, prod)):
                    out.append(f"left action not multiplicative at ({k}, {l})")
                if not is_zero(self.right[l].dot(self.right[k]) - _combine(self.right, prod)):
                    out.append(f"right action not anti-multiplicative at ({k}, {l})")
                if not is_zero(self.left[k].dot(self.right[l]) - self.right[l].dot(self.left[k])):
                    out.append(f"left and right actions do not commute at ({k}, {l})")
        return out

    @classmethod
    def regular(cls, B: AlgebraB) -> "BBBimodule":
        return cls(B, [B.left_regular(k) for k in range(B.dim)], [B.right_regular(k) for k in range(B.dim)])

    @classmethod
    def from_bidegrees(cls, B: AlgebraB, bidegrees: Sequence[tuple[int, int]]) -> "BBBimodule":
        """Diagonal B only: basis vector ``e`` of bidegree ``(a, c)`` has
        ``p_a . e = e = e . p_c`` for the minimal projections ``p``."""
        if B.kind != "diagonal":
            raise ValueError("bidegree bimodules need a diagonal algebra")
        m = len(bidegrees)
        left, right = [], []
        for k in range(B.dim):
            Lk, Rk = zeros((m, m)), zeros((m, m))
            for i, (a, c) in enumerate(bidegrees):
                if a - 1 == k:
                    Lk[i, i] = Fraction(1)
                if c - 1 == k:
                    Rk[i, i] = Fraction(1)
            left.append(Lk)
            right.append(Rk)
        return cls(B, left, right)

    @classmethod
    def trivial(cls, B: AlgebraB, m: int) -> "BBBimodule":
        """Scalars acting on ``C^m`` (only for B = scalars)."""
        if B.dim != 1:
            raise ValueError("trivial bimodules need B = scalars")
        return cls(B, [identity(m)], [identity(m)])


def _relations_rref(relations: list[np.ndarray], size: int):
    rows = [r for r in relations if any(v != 0 for v in r)]
    if not rows:
        return np.empty((0, size), dtype=object), []
    uniq = {tuple(r): r for r in rows}
    return rref(np.array(list(uniq.values()), dtype=object))


@dataclass
class QuotientSpace:
    """``scalar space / relations`` with coordinates at the non-pivot positions."""

    size: int
    reduced: np.ndarray
    pivots: list
    free: list
    projection: SparseMatrix

    @classmethod
    def build(cls, size: int, relations: list[np.ndarray]) -> "QuotientSpace":
        red, pivots = _relations_rref(relations, size)
        free = [c for c in range(size) if c not in set(pivots)]
        pos = {c: k for k, c in enumerate(free)}
        cols = []
        for c in range(size):
            if c in pos:
                cols.append({pos[c]: Fraction(1)})
                continue
            # e_c = e_c - r_c (pivot row) modulo relations, r_c has pivot at c
            row = red[pivots.index(c)]
            cols.append({pos[f]: -row[f] for f in free if row[f] != 0})
        return cls(size, red, pivots, free, SparseMatrix((len(free), size), cols))

    @property
    def dim(self) -> int:
        return len(self.free)

    def project(self, vec: dict) -> dict:
        return self.projection.apply(vec)


def tensor_over_B(M: BBBimodule, N: BBBimodule) -> tuple[BBBimodule, QuotientSpace]:
    """``M ⊗_B N`` with induced outer actions; also returns the quotient data."""
    if M.B is not N.B:
        raise ValueError("bimodules over different algebras")
    B = M.B
    m, n = M.dim, N.dim
    Im, In = identity(m), identity(n)
    rels = []
    for k in range(B.dim):
        K = np.kron(M.right[k], In) - np.kron(Im, N.left[k])
        rels.extend(K[:, c] for c in range(m * n))
    q = QuotientSpace.build(m * n, rels)

    def induced(op: np.ndarray) -> np.ndarray:
        out = zeros((q.dim, q.dim))
        for k, c in enumerate(q.free):
            col = {i: op[i, c] for i in range(m * n) if op[i, c] != 0}
            for i, v in q.project(col).items():
                out[i, k] = v
        return out

    left = [induced(np.kron(M.left[k], In)) for k in range(B.dim)]
    right = [induced(np.kron(Im, N.right[k])) for k in range(B.dim)]
    return BBBimodule(B, left, right), q


class BBFreeProduct:
    """Truncated free product of pointed bimodules ``X_j = B ⊕ X̊_j``."""

    def __init__(self, B: AlgebraB, reduced: Sequence[BBBimodule], max_len: int):
        if not reduced:
            raise ValueError("need at least one component")
        if max_len < 1:
            raise ValueError("max_len must be >= 1")
        for X in reduced:
            if X.B is not B:
                raise ValueError("component over a different algebra")
        self.B = B
        self.reduced = list(reduced)
        self.max_len = max_len
        self.words: list[tuple] = []
        layer = [()]
        for _ in range(max_len):
            nxt = [w + (i,) for w in layer for i in range(1, len(reduced) + 1) if not w or w[-1] != i]
            self.words.extend(nxt)
            layer = nxt
        self.spaces: dict = {}
        self.offset: dict = {(): 0}
        total = B.dim
        for w in self.words:
            q = self._word_space(w)
            self.spaces[w] = q
            self.offset[w] = total
            total += q.dim
        self.dim = total
        self._global_cache: dict = {}

    def _dims(self, w: tuple) -> list[int]:
        return [self.reduced[i - 1].dim for i in w]

    def _word_space(self, w: tuple) -> QuotientSpace:
        dims = self._dims(w)
        size = int(np.prod(dims))
        rels = []
        for t in range(len(w) - 1):
            pre = int(np.prod(dims[:t]))
            post = int(np.prod(dims[t + 2:]))
            X, Y = self.reduced[w[t] - 1], self.reduced[w[t + 1] - 1]
            for k in range(self.B.dim):
                K = np.kron(X.right[k], identity(Y.dim)) - np.kron(identity(X.dim), Y.left[k])
                full = np.kron(np.kron(identity(pre), K), identity(post)) if (pre > 1 or post > 1) else K
                rels.extend(full[:, c] for c in range(size))
        return QuotientSpace.build(size, rels)

    # -- helpers on scalar tensors -------------------------------------------

    def _place(self, w: tuple, vec: dict, out: dict) -> None:
        """Project a scalar-tensor vector of word ``w`` and add it to ``out``."""
        if len(w) > self.max_len:
            return
        if not w:
            for i, v in vec.items():
                out[i] = out.get(i, 0) + v
            return
        off = self.offset[w]
        for i, v in self.spaces[w].project(vec).items():
            out[off + i] = out.get(off + i, 0) + v

    def _first_factor(self, w: tuple, flat: int, mat: np.ndarray) -> dict:
        """``(mat ⊗ id) e_flat`` on the scalar tensor of ``w``."""
        rest = int(np.prod(self._dims(w[1:])))
        a, z = divmod(flat, rest)
        return {a2 * rest + z: mat[a2, a] for a2 in range(mat.shape[0]) if mat[a2, a] != 0}

    def _last_factor(self, w: tuple, flat: int, mat: np.ndarray) -> dict:
        m = self.reduced[w[-1] - 1].dim
        z, a = divmod(flat, m)
        return {z * m + a2: mat[a2, a] for a2 in range(mat.shape[0]) if mat[a2, a] != 0}

    def _vacuum_mult(self, coords: Sequence, k: int, side: str) -> dict:
        """B-coordinates of ``b . b_k`` (side left) or ``b_k . b`` (side right) for ``b`` with ``coords``."""
        out: dict = {}
        B = self.B
        for l, c in enumerate(coords):
            if c == 0:
                continue
            prod = B.mult[l][k] if side == LEFT else B.mult[k][l]
            for i, v in enumerate(prod):
                if v != 0:
                    out[i] = out.get(i, 0) + c * v
        return out

    def _basis_iter(self):
        for k in range(self.B.dim):
            yield (), k, None
        for w in self.words:
            q = self.spaces[w]
            for k, flat in enumerate(q.free):
                yield w, k, flat

    # -- operators --------------------------------------------------------------

    def component_dim(self, j: int) -> int:
        return self.B.dim + self.reduced[j - 1].dim

    def component_left_action(self, j: int, b: np.ndarray) -> np.ndarray:
        """Left action of ``b`` on ``X_j = B ⊕ X̊_j`` as a block matrix."""
        return self._component_action(j, b, "left")

    def component_right_action(self, j: int, b: np.ndarray) -> np.ndarray:
        return self._component_action(j, b, "right")

    def _component_action(self, j: int, b: np.ndarray, side: str) -> np.ndarray:
        B, X = self.B, self.reduced[j - 1]
        coords = B.coords(b)
        n = B.dim
        out = zeros((n + X.dim, n + X.dim))
        reg = [B.left_regular(k) if side == "left" else B.right_regular(k) for k in range(n)]
        out[:n, :n] = _combine(reg, coords)
        out[n:, n:] = _combine(X.left if side == "left" else X.right, coords)
        return out

    def left_operator_basis(self, j: int) -> list[np.ndarray]:
        """Basis of the operators on ``X_j`` commuting with the right action of B."""
        return self._commutant(j, "right")

    def right_operator_basis(self, j: int) -> list[np.ndarray]:
        """Basis of the operators on ``X_j`` commuting with the left action of B."""
        return self._commutant(j, "left")

    def _commutant(self, j: int, side: str) -> list[np.ndarray]:
        n = self.component_dim(j)
        eqs = []
        for b in self.B.basis:
            A = self._component_action(j, b, side)
            # vec(TA - AT) = (A^T ⊗ I - I ⊗ A) vec(T) with row-major vec
            eqs.append(np.kron(identity(n), A.T) - np.kron(A, identity(n)))
        M = np.vstack(eqs)
        return [v.reshape(n, n) for v in nullspace(M)]

    def random_left_operator(self, j: int, rng: random.Random, bound: int = 2) -> np.ndarray:
        return _combine(self.left_operator_basis(j), [Fraction(rng.randint(-bound, bound)) for _ in self.left_operator_basis(j)])

    def random_right_operator(self, j: int, rng: random.Random, bound: int = 2) -> np.ndarray:
        return _combine(self.right_operator_basis(j), [Fraction(rng.randint(-bound, bound)) for _ in self.right_operator_basis(j)])

    def _check_component_operator(self, j: int, T: np.ndarray, side: str) -> np.ndarray:
        if not 1 <= j <= len(self.reduced):
            raise ValueError(f"unknown component {j}")
        T = np.asarray(T, dtype=object)
        n = self.component_dim(j)
        if T.shape != (n, n):
            raise ValueError(f"operator must be {n}x{n} for component {j}")
        other = "right" if side == LEFT else "left"
        for b in self.B.basis:
            A = self._component_action(j, b, other)
            if not is_zero(T.dot(A) - A.dot(T)):
                kind = "left" if side == LEFT else "right"
                raise ValueError(f"operator does not commute with the {other} action of B, "
                                 f"so it is not a {kind} operator of component {j}")
        return T

    def lam(self, j: int, T: np.ndarray) -> SparseMatrix:
        """``lambda_j(T)``: ``T`` acts on the leftmost tensor factor."""
        return self._represent(j, self._check_component_operator(j, T, LEFT), LEFT)

    def rho(self, j: int, T: np.ndarray) -> SparseMatrix:
        """``rho_j(T)``: ``T`` acts on the rightmost tensor factor."""
        return self._represent(j, self._check_component_operator(j, T, "r"), "r")

    def _represent(self, j: int, T: np.ndarray, side: str) -> SparseMatrix:
        n = self.B.dim
        X = self.reduced[j - 1]
        left = side == LEFT
        reduced_of = (lambda w: w[1:]) if left else (lambda w: w[:-1])
        extend = (lambda w: (j,) + w) if left else (lambda w: w + (j,))
        touches = (lambda w: w[0] == j) if left else (lambda w: w[-1] == j)

        def split(column):
            beta = [column[i] for i in range(n)]
            xi = {a: column[n + a] for a in range(X.dim) if column[n + a] != 0}
            return beta, xi

        def action_of(beta, w):
            Y = self.reduced[(w[0] if left else w[-1]) - 1]
            return _combine(Y.left if left else Y.right, beta)

        t1_beta, t1_xi = split(T[:, [i for i in range(n)]].dot(np.array(self.B.unit_coords, dtype=object)))
        cols = []
        for w, k, flat in self._basis_iter():
            out: dict = {}
            if not w or w == (j,):
                idx = k if not w else n + flat
                beta, xi = split(T[:, idx])
                self._place((), {i: v for i, v in enumerate(beta) if v != 0}, out)
                self._place((j,), xi, out)
            elif touches(w):
                beta, xi = split(T[:, n + (self._first_index(w, flat) if left else self._last_index(w, flat))])
                rest_w = reduced_of(w)
                rest_flat = self._strip(w, flat, left)
                if xi:
                    vec: dict = {}
                    for a, v in xi.items():
                        key = self._join(w, a, rest_flat, left)
                        vec[key] = vec.get(key, 0) + v
                    self._place(w, vec, out)
                if any(c != 0 for c in beta):
                    mat = action_of(beta, rest_w)
                    vec = self._first_factor(rest_w, rest_flat, mat) if left else self._last_factor(rest_w, rest_flat, mat)
                    self._place(rest_w, vec, out)
            else:
                if any(c != 0 for c in t1_beta):
                    mat = action_of(t1_beta, w)
                    vec = self._first_factor(w, flat, mat) if left else self._last_factor(w, flat, mat)
                    self._place(w, vec, out)
                if t1_xi:
                    ew = extend(w)
                    vec = {}
                    size = int(np.prod(self._dims(w)))
                    for a, v in t1_xi.items():
                        key = a * size + flat if left else flat * X.dim + a
                        vec[key] = vec.get(key, 0) + v
                    self._place(ew, vec, out)
            cols.append({i: v for i, v in out.items() if v != 0})
        return SparseMatrix((self.dim, self.dim), cols)

    def _first_index(self, w: tuple, flat: int) -> int:
        return flat // int(np.prod(self._dims(w[1:])))

    def _last_index(self, w: tuple, flat: int) -> int:
        return flat % self.reduced[w[-1] - 1].dim

    def _strip(self, w: tuple, flat: int, left: bool) -> int:
        if left:
            return flat % int(np.prod(self._dims(w[1:])))
        return flat // self.reduced[w[-1] - 1].dim

    def _join(self, w: tuple, a: int, rest_flat: int, left: bool) -> int:
        if left:
            return a * int(np.prod(self._dims(w[1:]))) + rest_flat
        return rest_flat * self.reduced[w[-1] - 1].dim + a

    def L(self, b: np.ndarray) -> SparseMatrix:
        """Global left action of ``b``: left multiplication on B, first factor on words."""
        return self._global(b, LEFT)

    def R(self, b: np.ndarray) -> SparseMatrix:
        return self._global(b, "r")

    def _global(self, b: np.ndarray, side: str) -> SparseMatrix:
        key = (tuple(np.asarray(b, dtype=object).flat), side)
        if key in self._global_cache:
            return self._global_cache[key]
        coords = self.B.coords(b)
        left = side == LEFT
        cols = []
        for w, k, flat in self._basis_iter():
            out: dict = {}
            if not w:
                # left: b . b_k ; right: b_k . b
                prod = {}
                for l, c in enumerate(coords):
                    if c == 0:
                        continue
                    for i, v in enumerate(self.B.mult[l][k] if left else self.B.mult[k][l]):
                        if v != 0:
                            prod[i] = prod.get(i, 0) + c * v
                self._place((), prod, out)
            else:
                Y = self.reduced[(w[0] if left else w[-1]) - 1]
                mat = _combine(Y.left if left else Y.right, coords)
                vec = self._first_factor(w, flat, mat) if left else self._last_factor(w, flat, mat)
                self._place(w, vec, out)
            cols.append({i: v for i, v in out.items() if v != 0})
        op = SparseMatrix((self.dim, self.dim), cols)
        self._global_cache[key] = op
        return op

    def epsilon(self, b1: np.ndarray, b2: np.ndarray) -> SparseMatrix:
        """``epsilon(b1 ⊗ b2) = L_{b1} R_{b2}``."""
        for b in (b1, b2):
            if not self.B.contains(b):
                raise ValueError("element is not in B")
        return self.L(b1) @ self.R(b2)

    def vacuum(self) -> dict:
        return {i: v for i, v in enumerate(self.B.unit_coords) if v != 0}

    def E_B(self, T) -> np.ndarray:
        """``P(T(1_B ⊕ 0))`` as a matrix of the B realization."""
        v = T.apply(self.vacuum()) if isinstance(T, SparseMatrix) else T(self.vacuum())
        return self.P(v)

    def P(self, vec: dict) -> np.ndarray:
        return self.B.element([vec.get(i, Fraction(0)) for i in range(self.B.dim)])


def centered_trace(B: AlgebraB) -> Callable:
    """Normalized trace on the B realization; the default scalar functional."""
    return lambda b: sum(b[i, i] for i in range(B.d)) / B.d


@dataclass
class BBFamily:
    """A bimodule model with pairs ``(lambda_j(Tl_j), rho_j(Tr_j))``."""

    model: BBFreeProduct
    pairs: list
    templates: list = field(default_factory=list)

    def operator(self, letter) -> SparseMatrix:
        j, face = letter
        left, right = self.pairs[j - 1]
        return left if face == LEFT else right

    def context(self) -> "BimoduleContext":
        return BimoduleContext(self)


class BimoduleContext:
    """Operator-valued expectation context for :mod:`bifree.cumulants`."""

    def __init__(self, family: BBFamily, functional: Callable | None = None):
        self.family = family
        self.model = family.model
        self.B = self.model.B
        self.functional = functional or centered_trace(self.B)

    def one(self) -> np.ndarray:
        return self.B.one()

    def zero(self) -> np.ndarray:
        return zeros((self.B.d, self.B.d))

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return a.dot(b)

    def apply_items(self, word, items, vec: dict) -> dict:
        for kind, v in reversed(list(items)):
            if kind == "x":
                op = self.family.operator(word[v - 1])
            elif kind == "L":
                op = self.model.L(v)
            elif kind == "R":
                op = self.model.R(v)
            else:
                raise ValueError(f"unknown item kind {kind!r}")
            vec = op.apply(vec)
            if not vec:
                break
        return vec

    def expect(self, word, items) -> np.ndarray:
        if sum(1 for kind, _ in items if kind == "x") > self.model.max_len:
            raise ValueError(f"word length exceeds truncation length {self.model.max_len}")
        return self.model.P(self.apply_items(word, items, self.model.vacuum()))

    def __call__(self, word) -> np.ndarray:
        return self.expect(word, [("x", i) for i in range(1, len(word) + 1)])

    def phi(self, word):
        """Scalar state: the chosen functional on B composed with ``E_B``."""
        return self.functional(self(word))


def build_family(B: AlgebraB, reduced: Sequence[BBBimodule], operators: Sequence[tuple],
                 max_len: int) -> BBFamily:
    """``operators[j-1] = (Tl, Tr)`` on ``X_j`` (left resp. right operators)."""
    model = BBFreeProduct(B, reduced, max_len)
    pairs = [(model.lam(j, Tl), model.rho(j, Tr)) for j, (Tl, Tr) in enumerate(operators, 1)]
    return BBFamily(model, pairs, list(operators))


def default_bimodule(B: AlgebraB) -> BBBimodule:
    if B.kind == "diagonal":
        return BBBimodule.from_bidegrees(B, [(1, 2), (2, 1), (1, 1)] if B.d >= 2 else [(1, 1)])
    if B.kind == "scalars":
        return BBBimodule.trivial(B, 1)
    return BBBimodule.regular(B)


def make_bifree_B_family(B: AlgebraB, n_pairs: int, max_len: int, seed: int = 0,
                         reduced: BBBimodule | None = None) -> BBFamily:
    """Identical components with one random left and one random right operator."""
    rng = random.Random(seed)
    X = reduced or default_bimodule(B)
    probe = BBFreeProduct(B, [X], 1)
    Tl = probe.random_left_operator(1, rng)
    Tr = probe.random_right_operator(1, rng)
    return build_family(B, [X] * n_pairs, [(Tl, Tr)] * n_pairs, max_len)


@dataclass
class AxiomReport:
    violations: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def check_bb_axioms(family: BBFamily) -> AxiomReport:
    """``E(eps(b1⊗b2) T) = b1 E(T) b2`` for generators and basis elements of B,
    plus left operators commuting with ``R_b`` and right operators with ``L_b``."""
    model, B = family.model, family.model.B
    report = AxiomReport()
    gens = []
    for j, (l, r) in enumerate(family.pairs, 1):
        gens.append((f"x{j}^l", l, LEFT))
        gens.append((f"x{j}^r", r, "r"))
    identity_op = SparseMatrix.identity(model.dim)
    ops = [("1", identity_op, None)] + gens
    for b1 in B.basis:
        for b2 in B.basis:
            eps = model.epsilon(b1, b2)
            for name, T, _ in ops:
                report.checked += 1
                lhs = model.E_B(eps @ T)
                rhs = b1.dot(model.E_B(T)).dot(b2)
                if not is_zero(lhs - rhs):
                    report.violations.append(f"E(eps(b1⊗b2) {name}) != b1 E({name}) b2")
    for b in B.basis:
        for name, T, side in gens:
            other = model.R(b) if side == LEFT else model.L(b)
            report.checked += 1
            if not (T @ other - other @ T).is_zero():
                what = "R_b" if side == LEFT else "L_b"
                report.violations.append(f"{name} does not commute with {what}")
    return report
