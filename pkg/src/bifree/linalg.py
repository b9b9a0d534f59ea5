"""Exact (and optionally floating point) linear algebra helpers.

Dense matrices are numpy arrays of dtype ``object`` holding
:class:`fractions.Fraction` entries; float mode uses ordinary numpy dtypes.
Sparse matrices are column dictionaries, which keeps the truncated Fock and
bimodule operators cheap to apply to the vacuum.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable

import numpy as np

DEFAULT_TOL = 1e-10


def parse_scalar(value, mode: str = "exact"):
    """Parse ``"p/q"`` strings, ints, or floats into an exact or float scalar."""
    if mode == "float":
        if isinstance(value, str) and "/" in value:
            return float(Fraction(value))
        return complex(value) if isinstance(value, complex) else float(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    return Fraction(value)


def format_scalar(x) -> str:
    if isinstance(x, (Fraction, int)):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(x)


def matrix(rows, mode: str = "exact") -> np.ndarray:
    rows = [[parse_scalar(v, mode) for v in row] for row in rows]
    if mode == "float":
        return np.array(rows, dtype=complex if any(isinstance(v, complex) and v.imag for r in rows for v in r) else float)
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j] = v
    return out


def identity(n: int, like=None) -> np.ndarray:
    if like is not None and like.dtype != object:
        return np.eye(n, dtype=like.dtype)
    out = np.empty((n, n), dtype=object)
    out[:] = Fraction(0)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def zeros(shape, like=None) -> np.ndarray:
    if like is not None and like.dtype != object:
        return np.zeros(shape, dtype=like.dtype)
    out = np.empty(shape, dtype=object)
    out[...] = Fraction(0)
    return out


def is_exact(a) -> bool:
    if isinstance(a, np.ndarray):
        return a.dtype == object
    return isinstance(a, (int, Fraction))


def is_zero(x, tol: float | None = None) -> bool:
    """Exact zero test, or ``max|x| <= tol`` when a tolerance is given."""
    if tol is None:
        if isinstance(x, np.ndarray):
            return all(v == 0 for v in x.flat)
        return x == 0
    return max_norm(x) <= tol


def max_norm(x) -> float | Fraction:
    if isinstance(x, np.ndarray):
        if x.size == 0:
            return 0
        return max(abs(v) for v in x.flat)
    return abs(x)


def adjoint(a: np.ndarray) -> np.ndarray:
    if a.dtype == object:
        return a.T.copy()
    return a.conj().T


def common_denominator(values: Iterable) -> int:
    d = 1
    for v in values:
        if isinstance(v, Fraction):
            d = lcm(d, v.denominator)
    return d


def integerize(a: np.ndarray) -> tuple[np.ndarray, int]:
    """Return ``(a * D, D)`` with ``a * D`` holding python ints (exact input only)."""
    d = common_denominator(a.flat)
    out = np.empty(a.shape, dtype=object)
    flat_in, flat_out = a.reshape(-1), out.reshape(-1)
    for k, v in enumerate(flat_in):
        v = Fraction(v) * d
        flat_out[k] = v.numerator
    return out, d


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with leftmost pivoting (exact)."""
    a = np.array(m, dtype=object, copy=True)
    if a.size == 0:
        return a, []
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        pv = Fraction(a[r, c])
        a[r] = [Fraction(v) / pv for v in a[r]]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                a[i] = a[i] - f * a[r]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace(m: np.ndarray) -> list[np.ndarray]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    m = np.asarray(m, dtype=object)
    cols = m.shape[1]
    r, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(cols)
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -r[row, f]
        basis.append(v)
    return basis


def solve_coordinates(basis: list[np.ndarray], target: np.ndarray) -> list[Fraction]:
    """Coordinates of ``target`` in the span of ``basis`` (flattened); raises if outside."""
    a = np.array([np.asarray(b, dtype=object).reshape(-1) for b in basis], dtype=object).T
    t = np.asarray(target, dtype=object).reshape(-1, 1)
    r, pivots = rref(np.hstack([a, t]))
    k = len(basis)
    if k in pivots:
        raise ValueError("element is not in the span of the basis")
    coords = [Fraction(0)] * k
    for row, p in enumerate(pivots):
        coords[p] = r[row, k]
    return coords


class SparseMatrix:
    """Square or rectangular matrix stored as a list of ``{row: value}`` columns."""

    __slots__ = ("shape", "cols")

    def __init__(self, shape: tuple[int, int], cols: list[dict] | None = None):
        self.shape = shape
        self.cols = cols if cols is not None else [dict() for _ in range(shape[1])]

    @classmethod
    def from_dense(cls, a: np.ndarray) -> "SparseMatrix":
        rows, ncols = a.shape
        cols = []
        for j in range(ncols):
            cols.append({i: a[i, j] for i in range(rows) if a[i, j] != 0})
        return cls((rows, ncols), cols)

    @classmethod
    def identity(cls, n: int, one=Fraction(1)) -> "SparseMatrix":
        return cls((n, n), [{j: one} for j in range(n)])

    def to_dense(self) -> np.ndarray:
        out = zeros(self.shape)
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i, j] = v
        return out

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        cols = self.cols
        for j, x in vec.items():
            for i, v in cols[j].items():
                out[i] = out.get(i, 0) + v * x
        return {i: v for i, v in out.items() if v != 0}

    def row(self, i: int) -> dict:
        return {j: col[i] for j, col in enumerate(self.cols) if i in col}

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            return SparseMatrix((self.shape[0], other.shape[1]), [self.apply(c) for c in other.cols])
        return NotImplemented

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, v in b.items():
                c[i] = c.get(i, 0) + v
            cols.append({i: v for i, v in c.items() if v != 0})
        return SparseMatrix(self.shape, cols)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(-1)

    def scale(self, s) -> "SparseMatrix":
        if s == 0:
            return SparseMatrix(self.shape)
        return SparseMatrix(self.shape, [{i: s * v for i, v in c.items()} for c in self.cols])

    def is_zero(self, tol: float | None = None) -> bool:
        if tol is None:
            return all(v == 0 for c in self.cols for v in c.values())
        return all(abs(v) <= tol for c in self.cols for v in c.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseMatrix) and self.shape == other.shape and (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        nnz = sum(len(c) for c in self.cols)
        return f"SparseMatrix(shape={self.shape}, nnz={nnz})"


def sparse_add(u: dict, v: dict, scale=1) -> dict:
    out = dict(u)
    for i, x in v.items():
        out[i] = out.get(i, 0) + scale * x
    return {i: x for i, x in out.items() if x != 0}
