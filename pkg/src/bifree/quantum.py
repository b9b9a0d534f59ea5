"""Magic-unitary representations and the quantum invariance identities.

A representation stores ``u_{ij}`` (1-based in the API) as an array of shape
``(N, N, d, d)``.  Exact representations hold Fractions; all identity checks
scale entries to integers first (multiplying by the common denominator) and
then run tensor contractions, which keeps exact checks fast.

The twisted monomial is ``u^chi_{IJ} = prod_t u_{i_{s(t)} j_{s(t)}}`` with the
product taken in increasing ``t``.  A zero deviation in a representation is
evidence for an identity of the universal algebra, not a proof of it.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .colorings import BIFREE, BIFREE_ALPHABET, LEFT, RIGHT, Coloring, TwistFamily, as_coloring, invert
from .cumulants import make_word
from .linalg import identity, is_zero, max_norm, zeros
from .partitions import Partition, kernel, leq

INT64_SAFE = 2**62


class MagicUnitaryRep:
    def __init__(self, entries, label: str = "", tol: float | None = None, validate: bool = True):
        arr = np.asarray(entries)
        if arr.ndim != 4 or arr.shape[0] != arr.shape[1] or arr.shape[2] != arr.shape[3]:
            raise ValueError("entries must have shape (N, N, d, d)")
        self.array = arr
        self.N, self.d = arr.shape[0], arr.shape[2]
        self.label = label
        self.tol = tol
        if validate:
            problems = self.violations()
            if problems:
                raise ValueError("not a magic unitary: " + "; ".join(problems[:3]))

    @property
    def exact(self) -> bool:
        return self.array.dtype == object

    def u(self, i: int, j: int) -> np.ndarray:
        return self.array[i - 1, j - 1]

    def violations(self) -> list[str]:
        out = []
        N, d, tol = self.N, self.d, self.tol
        I = identity(d) if self.exact else np.eye(d)
        for i in range(N):
            for j in range(N):
                p = self.array[i, j]
                if not is_zero(p.dot(p) - p, tol):
                    out.append(f"u[{i + 1},{j + 1}] is not idempotent")
                adj = p.T if self.exact else p.conj().T
                if not is_zero(adj - p, tol):
                    out.append(f"u[{i + 1},{j + 1}] is not self-adjoint")
        for k in range(N):
            if not is_zero(sum(self.array[i, k] for i in range(N)) - I, tol):
                out.append(f"column {k + 1} does not sum to the identity")
            if not is_zero(sum(self.array[k, j] for j in range(N)) - I, tol):
                out.append(f"row {k + 1} does not sum to the identity")
        for i in range(N):
            for j in range(N):
                s = sum(self.array[k, i].dot(self.array[k, j]) for k in range(N))
                if not is_zero(s - (I if i == j else 0 * I), tol):
                    out.append(f"columns {i + 1},{j + 1} are not orthogonal")
        return out

    def integer(self) -> tuple[np.ndarray, int]:
        """``(D * u, D)`` with integer entries (exact reps only)."""
        if not self.exact:
            return self.array, 1
        D = 1
        for v in self.array.flat:
            D = math.lcm(D, Fraction(v).denominator)
        ints = np.empty(self.array.shape, dtype=object)
        for idx, v in np.ndenumerate(self.array):
            ints[idx] = int(Fraction(v) * D)
        return ints, D

    def padded(self, d_other: int, side: str) -> "MagicUnitaryRep":
        """``u ⊗ Id`` (side ``"first"``) or ``Id ⊗ u`` (side ``"second"``)."""
        I = identity(d_other) if self.exact else np.eye(d_other)
        out = np.empty((self.N, self.N, self.d * d_other, self.d * d_other), dtype=self.array.dtype)
        for i in range(self.N):
            for j in range(self.N):
                out[i, j] = np.kron(self.array[i, j], I) if side == "first" else np.kron(I, self.array[i, j])
        return MagicUnitaryRep(out, self.label + "⊗pad", self.tol, validate=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MagicUnitaryRep) and self.array.shape == other.array.shape
                and is_zero(self.array - other.array, self.tol))

    __hash__ = None

    def __repr__(self) -> str:
        return f"MagicUnitaryRep(N={self.N}, d={self.d}, label={self.label!r})"


def rep_classical(sigma: Sequence[int], N: int | None = None) -> MagicUnitaryRep:
    """``u_{ij} = [i = sigma(j)]`` for a permutation given as a 1-based image sequence."""
    sigma = tuple(int(v) for v in sigma)
    N = len(sigma) if N is None else N
    if sorted(sigma) != list(range(1, N + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{N}")
    arr = np.empty((N, N, 1, 1), dtype=object)
    for i in range(N):
        for j in range(N):
            arr[i, j, 0, 0] = Fraction(1 if i + 1 == sigma[j] else 0)
    return MagicUnitaryRep(arr, "classical:" + "".join(map(str, sigma)) if N < 10 else "classical")


def rep_block_projective(projections: Sequence[np.ndarray], label: str = "block") -> MagicUnitaryRep:
    """Block-diagonal magic unitary with ``2x2`` blocks ``((p, 1-p), (1-p, p))``; ``N = 2m``."""
    projections = [np.asarray(p, dtype=object) for p in projections]
    d = projections[0].shape[0]
    for k, p in enumerate(projections):
        if p.shape != (d, d) or not is_zero(p.dot(p) - p) or not is_zero(p.T - p):
            raise ValueError(f"projection {k + 1} is not a self-adjoint idempotent of size {d}")
    m = len(projections)
    N = 2 * m
    arr = np.empty((N, N, d, d), dtype=object)
    arr[...] = Fraction(0)
    I = identity(d)
    for k, p in enumerate(projections):
        a, b = 2 * k, 2 * k + 1
        arr[a, a] = arr[b, b] = p
        arr[a, b] = arr[b, a] = I - p
    return MagicUnitaryRep(arr, label)


def rational_projection(a: Fraction) -> np.ndarray:
    """Rank-one projection ``[[a, c], [c, 1-a]]`` with ``c = sqrt(a(1-a))``, which must be rational."""
    a = Fraction(a)
    if not 0 <= a <= 1:
        raise ValueError("projection parameter must lie in [0, 1]")
    c2 = a * (1 - a)
    num, den = math.isqrt(c2.numerator), math.isqrt(c2.denominator)
    if Fraction(num * num, den * den) != c2:
        raise ValueError(f"sqrt({a} * (1 - {a})) is irrational; no rational rank-one projection")
    c = Fraction(num, den)
    out = np.empty((2, 2), dtype=object)
    out[0, 0], out[0, 1], out[1, 0], out[1, 1] = a, c, c, 1 - a
    return out


def projection_from_vector(v: Sequence[int]) -> np.ndarray:
    """``v v^T / (v . v)`` for an integer vector."""
    v = [Fraction(x) for x in v]
    n2 = sum(x * x for x in v)
    out = np.empty((len(v), len(v)), dtype=object)
    for i in range(len(v)):
        for j in range(len(v)):
            out[i, j] = v[i] * v[j] / n2
    return out


DEFAULT_P = rational_projection(Fraction(4, 5))
DEFAULT_Q = projection_from_vector([1, 0])


def default_block_rep() -> MagicUnitaryRep:
    """N = 4, d = 2, with noncommuting projections ``p = [[4/5, 2/5], [2/5, 1/5]]`` and ``q = diag(1, 0)``."""
    return rep_block_projective([DEFAULT_P, DEFAULT_Q], "block:p=4/5")


def parse_rep_spec(spec: str) -> MagicUnitaryRep:
    """``"classical:3142"``, ``"classical:1,3,2"``, ``"block"`` or ``"block:p=4/5[,a2,...]"``.

    A single ``p`` value is completed by ``diag(1, 0)`` to give the default
    N = 4 shape.
    """
    kind, _, arg = spec.partition(":")
    if kind == "classical":
        if not arg:
            raise ValueError("classical rep needs a permutation, e.g. classical:3142")
        sigma = [int(t) for t in arg.split(",")] if "," in arg else [int(c) for c in arg]
        return rep_classical(sigma)
    if kind == "block":
        if not arg:
            return default_block_rep()
        key, _, values = arg.partition("=")
        if key != "p" or not values:
            raise ValueError("block rep spec must look like block:p=4/5")
        projs = [rational_projection(Fraction(v)) for v in values.split(",")]
        if len(projs) == 1:
            projs.append(DEFAULT_Q)
        return rep_block_projective(projs, spec)
    raise ValueError(f"unknown rep spec {spec!r}")


def coproduct_rep(rep: MagicUnitaryRep) -> MagicUnitaryRep:
    """``Delta(u_{ij}) = sum_k u_{ik} ⊗ u_{kj}``, a rep of dimension ``d^2``."""
    N, d = rep.N, rep.d
    arr = np.empty((N, N, d * d, d * d), dtype=rep.array.dtype)
    for i in range(N):
        for j in range(N):
            arr[i, j] = sum(np.kron(rep.array[i, k], rep.array[k, j]) for k in range(N))
    return MagicUnitaryRep(arr, f"coproduct({rep.label})", rep.tol)


# --------------------------------------------------------------------------
# contractions


def _maybe_int64(a: np.ndarray, bound: int) -> np.ndarray:
    if a.dtype == object and bound < INT64_SAFE:
        return a.astype(np.int64)
    return a


def _abs_max(a: np.ndarray) -> int:
    return int(max((abs(v) for v in a.flat), default=0))


def _integer_values(values: np.ndarray) -> tuple[np.ndarray, int]:
    if values.dtype != object:
        return values, 1
    D = 1
    for v in values.flat:
        if isinstance(v, Fraction):
            D = math.lcm(D, v.denominator)
    out = np.empty(values.shape, dtype=object)
    for idx, v in np.ndenumerate(values):
        out[idx] = int(Fraction(v) * D)
    return out, D


def _contract(values: np.ndarray, Us: Sequence[np.ndarray], s: Sequence[int]) -> np.ndarray:
    """``R[J] = sum_I values[I] ⊗ prod_t Us[t][i_{s(t)}, j_{s(t)}]``.

    ``values`` has natural index axes ``(N,)*n`` followed by one flattened
    value axis; ``Us[t]`` is the rep used at twisted position ``t`` (shape
    ``(N, N, d, d)``).  Returns natural axes ``(N,)*n`` + ``(X, d, d)``.
    """
    n = len(s)
    d = Us[0].shape[2]
    # twisted axes: axis t carries i_{s(t)}
    psi = np.transpose(values, [s[t] - 1 for t in range(n)] + [n])
    eye = np.eye(d, dtype=psi.dtype if psi.dtype != object else np.int64).astype(psi.dtype)
    A = np.einsum("...x,ef->...xef", psi, eye)
    for t in range(n):
        A = np.einsum("k...xae,kjef->...jxaf", A, Us[t])
    # twisted result axes -> natural: natural position s(t) gets axis t
    inv = invert(s)
    return np.transpose(A, [inv[i] - 1 for i in range(n)] + [n, n + 1, n + 2])


def _scaled_reps(reps: Sequence[MagicUnitaryRep]) -> tuple[list[np.ndarray], int]:
    """Common-denominator integer arrays for several reps."""
    ints = [r.integer() for r in reps]
    D = 1
    for _, Dr in ints:
        D = math.lcm(D, Dr)
    out = []
    for (a, Dr), r in zip(ints, reps):
        if r.exact:
            out.append(a * (D // Dr) if D != Dr else a)
        else:
            out.append(a)
    return out, D


def _prepare(values: np.ndarray, reps: Sequence[MagicUnitaryRep], n: int):
    """Integerize values and reps and pick int64 when no overflow can occur."""
    vals, Dv = _integer_values(values)
    Us, Du = _scaled_reps(reps)
    exact = values.dtype == object and all(r.exact for r in reps)
    if exact:
        N, d = reps[0].N, reps[0].d
        umax = max(_abs_max(u) for u in Us)
        bound = max(_abs_max(vals), 1) * (N * d * max(umax, 1)) ** n
        vals = _maybe_int64(vals, bound)
        Us = [_maybe_int64(u, bound) for u in Us]
    else:
        vals = vals.astype(complex if np.iscomplexobj(vals) else float)
        Us = [np.asarray(u, dtype=float) for u in Us]
    return vals, Dv, Us, Du, exact


# --------------------------------------------------------------------------
# twisted monomials and vanishing sums


def _face_reps(chi: Coloring, reps) -> list[MagicUnitaryRep]:
    if isinstance(reps, MagicUnitaryRep):
        return [reps] * chi.n
    return [reps[f] for f in chi.faces]


def twisted_monomial(I: Sequence[int], J: Sequence[int], chi, reps, twist: TwistFamily = BIFREE) -> np.ndarray:
    """``prod_t u^{(chi(s(t)))}_{i_{s(t)} j_{s(t)}}``; ``reps`` is one rep or a face -> rep mapping."""
    chi = as_coloring(chi)
    s = twist.perm(chi)
    per_pos = _face_reps(chi, reps)
    out = None
    for t in s:
        m = per_pos[t - 1].u(I[t - 1], J[t - 1])
        out = m if out is None else out.dot(m)
    return out


def _block_mask(p: Partition, N: int) -> np.ndarray:
    """``mask[I] = [p <= ker(I)]`` over natural axes ``(N,)*n``."""
    n = p.n
    mask = np.zeros((N,) * n, dtype=np.int64)
    for assignment in itertools.product(range(N), repeat=len(p.blocks)):
        idx = [0] * n
        for b, v in zip(p.blocks, assignment):
            for i in b:
                idx[i - 1] = v
        mask[tuple(idx)] = 1
    return mask


def _to_fraction(a: np.ndarray, D: int) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = Fraction(int(v), D)
    return out


def vanishing_sum_deviations(p: Partition, rep: MagicUnitaryRep, chi=None,
                             twist: TwistFamily = BIFREE, reps=None) -> dict:
    """All ``J``: ``sum_{I : p <= ker(I)} u^chi_{IJ} - delta_p(J) Id`` (nonzero ones only).

    Without ``chi`` the product is in natural order.
    """
    n = p.n
    if chi is None:
        s = tuple(range(1, n + 1))
        per_pos = [rep] * n
    else:
        chi = as_coloring(chi)
        if chi.n != n:
            raise ValueError("coloring and partition differ in size")
        s = twist.perm(chi)
        per = _face_reps(chi, reps if reps is not None else rep)
        per_pos = [per[s[t] - 1] for t in range(n)]
    N, d = per_pos[0].N, per_pos[0].d
    mask = _block_mask(p, N)[..., None].astype(object)
    vals, _, Us, Du, exact = _prepare(mask, per_pos, n)
    R = _contract(vals, Us, s)[..., 0, :, :]
    scale = Du**n
    out = {}
    I = np.eye(d, dtype=R.dtype) * scale if exact else np.eye(d)
    for J in itertools.product(range(1, N + 1), repeat=n):
        target = I if leq(p, kernel(J)) else 0 * I
        dev = R[tuple(j - 1 for j in J)] - target
        if exact:
            if np.any(dev != 0):
                out[J] = _to_fraction(dev, scale)
        elif max_norm(dev) > (rep.tol or 1e-10):
            out[J] = dev
    return out


def check_vanishing_sum(p: Partition, J: Sequence[int], rep: MagicUnitaryRep, chi=None,
                        twist: TwistFamily = BIFREE) -> np.ndarray:
    """Deviation matrix ``sum_{I : p <= ker(I)} u^chi_{IJ} - delta_p(J) Id`` for one ``J``."""
    if len(J) != p.n:
        raise ValueError("index tuple and partition differ in size")
    devs = vanishing_sum_deviations(p, rep, chi, twist)
    J = tuple(int(j) for j in J)
    if J in devs:
        return devs[J]
    return zeros((rep.d, rep.d)) if rep.exact else np.zeros((rep.d, rep.d))


def _twisted_products(U: np.ndarray, s: Sequence[int]) -> np.ndarray:
    """``X[K, I] = prod_t U[k_{s(t)}, i_{s(t)}]``, axes natural K then natural I."""
    n = len(s)
    A = U
    for _ in range(n - 1):
        A = np.einsum("...ab,kibc->...kiac", A, U)
    # axes: (k'_1, i'_1, ..., k'_n, i'_n, a, c) in twisted order
    inv = invert(s)
    k_axes = [2 * (inv[i] - 1) for i in range(n)]
    i_axes = [2 * (inv[i] - 1) + 1 for i in range(n)]
    return np.transpose(A, k_axes + i_axes + [2 * n, 2 * n + 1])


def check_coassociativity(rep: MagicUnitaryRep, chi, J: Sequence[int] | None = None,
                          phi: Callable | None = None, twist: TwistFamily = BIFREE) -> bool:
    """``(beta ⊗ id) beta = (id ⊗ Delta) beta`` on ``x_J^chi`` for every ``J``
    (or the given one): for each output monomial ``x_K`` compare
    ``sum_I u^chi_{KI} ⊗ u^chi_{IJ}`` with ``Delta(u^chi_{KJ})``.  With ``phi``
    the ``phi``-weighted sums over ``K`` are compared as well.
    """
    chi = as_coloring(chi)
    n = chi.n
    s = twist.perm(chi)
    N, d = rep.N, rep.d
    Uint, D = rep.integer()
    cop = coproduct_rep(rep)
    Cint = np.empty(cop.array.shape, dtype=object)
    for i in range(N):
        for j in range(N):
            Cint[i, j] = sum(np.kron(Uint[i, k], Uint[k, j]) for k in range(N))
    bound = (N * d * max(_abs_max(Uint), 1)) ** (2 * n) * N**n
    Uint = _maybe_int64(Uint, bound)
    Cint = _maybe_int64(Cint, bound)
    X = _twisted_products(Uint, s).reshape(N**n, N**n, d, d)
    Y = _twisted_products(Cint, s).reshape(N**n, N**n, d * d, d * d)
    lhs = np.einsum("kiab,ijce->kjacbe", X, X).reshape(N**n, N**n, d * d, d * d)
    if J is not None:
        col = int(np.ravel_multi_index(tuple(j - 1 for j in J), (N,) * n))
        lhs, Y = lhs[:, col:col + 1], Y[:, col:col + 1]
    if np.any(lhs != Y):
        return False
    if phi is not None:
        weights = [phi(make_word([k + 1 for k in K], chi)) for K in itertools.product(range(N), repeat=n)]
        wl = sum(w * lhs[k].astype(object) for k, w in enumerate(weights))
        wr = sum(w * Y[k].astype(object) for k, w in enumerate(weights))
        if not is_zero(wl - wr):
            return False
    return True


# --------------------------------------------------------------------------
# invariance reports


@dataclass
class InvarianceReport:
    n_max: int
    mode: str = "exact"
    deviations: list = field(default_factory=list)
    checked: int = 0
    max_deviation: float = 0.0
    note: str = "zero deviation in a representation is evidence, not proof"

    @property
    def ok(self) -> bool:
        return not self.deviations

    @property
    def first(self):
        return self.deviations[0] if self.deviations else None

    def summary(self) -> str:
        status = "invariant" if self.ok else "NOT invariant"
        extra = "" if self.mode == "exact" else f", max deviation {self.max_deviation:.3g}"
        return (f"{status} up to order {self.n_max}: {len(self.deviations)} nonzero deviation(s) "
                f"over {self.checked} (chi, J) [{self.mode}{extra}]")


def _tensor_of(fn: Callable, N: int, n: int, X: int) -> np.ndarray:
    out = np.empty((N,) * n + (X,), dtype=object)
    for I in itertools.product(range(N), repeat=n):
        v = fn(tuple(i + 1 for i in I))
        flat = np.asarray(v, dtype=object).reshape(-1) if isinstance(v, np.ndarray) else [v]
        out[I] = flat
    return out


def _compare(R: np.ndarray, values: np.ndarray, Dv: int, Du: int, n: int, d: int, exact: bool,
             tol: float | None, key_prefix, report: InvarianceReport) -> None:
    """Record ``R[J] / (Dv Du^n) - values[J] ⊗ Id`` per ``J``."""
    N = values.shape[0] if n else 1
    eye = np.eye(d, dtype=np.int64)
    for J in itertools.product(range(N), repeat=n):
        report.checked += 1
        r = R[J]
        v = values[J]
        if exact:
            target = np.einsum("x,ef->xef", v.astype(object), eye.astype(object)) * (Du**n)
            dev = r.astype(object) - target
            if np.any(dev != 0):
                report.deviations.append((key_prefix, tuple(j + 1 for j in J), _to_fraction(dev, Dv * Du**n)))
        else:
            dev = r / (Dv * Du**n) - np.einsum("x,ef->xef", v.astype(float) / Dv, eye)
            m = float(np.max(np.abs(dev))) if dev.size else 0.0
            report.max_deviation = max(report.max_deviation, m)
            if m > (tol if tol is not None else 1e-10):
                report.deviations.append((key_prefix, tuple(j + 1 for j in J), dev))


def _biexchange_one(phi: Callable, rep, chi_faces: tuple, twist: TwistFamily, mode: str,
                    tol: float | None) -> InvarianceReport:
    chi = as_coloring(chi_faces)
    n = chi.n
    part = InvarianceReport(n, "exact" if mode == "exact" else f"float(tol={tol or 1e-10})")
    sample = rep if isinstance(rep, MagicUnitaryRep) else next(iter(rep.values()))
    s = twist.perm(chi)
    per = _face_reps(chi, rep)
    per_pos = [per[s[t] - 1] for t in range(n)]
    raw = _tensor_of(lambda I: phi(make_word(I, chi)), sample.N, n, 1)
    if mode == "float":
        raw = raw.astype(float)
    vals, Dv, Us, Du, exact = _prepare(raw, per_pos, n)
    R = _contract(vals, Us, s)
    _compare(R, vals, Dv, Du, n, sample.d, exact, tol, chi.key(), part)
    return part


def check_quantum_biexchangeable(phi: Callable, rep, n_max: int, faces: Sequence = BIFREE_ALPHABET,
                                 twist: TwistFamily = BIFREE, mode: str = "exact",
                                 tol: float | None = None, stop_at_first: bool = False,
                                 jobs: int = 1) -> InvarianceReport:
    """Deviations ``sum_I phi(x_I^chi) u^chi_{IJ} - phi(x_J^chi) Id`` for all ``(chi, J)``, ``n <= n_max``.

    ``rep`` is one representation or a face -> representation mapping.  With
    ``jobs > 1`` colorings are spread over worker processes; the report is
    assembled in the canonical (length, coloring) order either way.
    """
    report = InvarianceReport(n_max, "exact" if mode == "exact" else f"float(tol={tol or 1e-10})")
    tasks = [c for n in range(1, n_max + 1) for c in itertools.product(faces, repeat=n)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_biexchange_one, *zip(*[(phi, rep, c, twist, mode, tol) for c in tasks])))
    else:
        parts = []
        for c in tasks:
            parts.append(_biexchange_one(phi, rep, c, twist, mode, tol))
            if stop_at_first and parts[-1].deviations:
                break
    for part in parts:
        report.deviations.extend(part.deviations)
        report.checked += part.checked
        report.max_deviation = max(report.max_deviation, part.max_deviation)
    return report


def _insertion_patterns(B, n: int, rng: random.Random, samples: int | None):
    """``(side, b)`` sequences of length ``n + 1``; exhaustive over B's basis and 1 unless sampled."""
    choices = [(side, b) for side in ("L", "R") for b in [B.one()] + list(B.basis)]
    if samples is None:
        yield from itertools.product(choices, repeat=n + 1)
        return
    for _ in range(samples):
        yield tuple((rng.choice("LR"), B.random_element(rng)) for _ in range(n + 1))


def check_strong_invariance(ctx, rep: MagicUnitaryRep, n_max: int, faces: Sequence = BIFREE_ALPHABET,
                            twist: TwistFamily = BIFREE, seed: int = 0, exhaustive_up_to: int = 2,
                            samples: int = 6) -> InvarianceReport:
    """B-valued deviations ``sum_I E(T_{b_1} x_{i_1} ... T_{b_{n+1}}) ⊗ u^chi_{IJ} - E(...x_J...) ⊗ Id``.

    ``T`` ranges over ``L``/``R`` and ``b`` over ``1`` and the basis of B
    exhaustively for ``n <= exhaustive_up_to``; longer words use ``samples``
    seeded random insertion patterns per coloring.
    """
    rng = random.Random(seed)
    B = ctx.B
    report = InvarianceReport(n_max)
    N, d = rep.N, rep.d
    for n in range(1, n_max + 1):
        for chi_faces in itertools.product(faces, repeat=n):
            chi = as_coloring(chi_faces)
            s = twist.perm(chi)
            patterns = _insertion_patterns(B, n, rng, None if n <= exhaustive_up_to else samples)
            for pattern in patterns:
                def value(I):
                    items = [pattern[0]]
                    for t in range(n):
                        items.append(("x", t + 1))
                        items.append(pattern[t + 1])
                    return ctx.expect(make_word(I, chi), items)

                raw = _tensor_of(value, N, n, B.d * B.d)
                vals, Dv, Us, Du, exact = _prepare(raw, [rep] * n, n)
                R = _contract(vals, Us, s)
                _compare(R, vals, Dv, Du, n, d, exact, None, (chi.key(), "".join(t for t, _ in pattern)), report)
    return report


# --------------------------------------------------------------------------
# several faces, identification, alpha obstruction


def common_dimension(rep1: MagicUnitaryRep, rep2: MagicUnitaryRep) -> tuple[MagicUnitaryRep, MagicUnitaryRep]:
    """Tensor-pad two reps to a common dimension (``u ⊗ Id`` and ``Id ⊗ v``)."""
    if rep1.N != rep2.N:
        raise ValueError("representations of different size N")
    if rep1.d == rep2.d:
        return rep1, rep2
    return rep1.padded(rep2.d, "first"), rep2.padded(rep1.d, "second")


def check_nfree_relation(C: Sequence[tuple], reps: dict, twist: TwistFamily = BIFREE,
                         J: Sequence[int] | None = None) -> list:
    """For decorated partitions ``(pi, chi_pi)`` in ``C``, the deviations of
    ``sum_{I : pi <= ker(I)} u^{chi_pi}_{IJ} - delta_pi(J) Id`` where the face of
    each position selects its representation.  Returns ``(pi, chi, J, deviation)``
    for every nonzero deviation (all ``J`` unless one is given).
    """
    dims = {r.d for r in reps.values()}
    if len(dims) != 1:
        raise ValueError("representations must share a dimension (tensor-pad first)")
    if len({r.N for r in reps.values()}) != 1:
        raise ValueError("representations must share N")
    out = []
    for pi, chi in C:
        chi = as_coloring(chi)
        devs = vanishing_sum_deviations(pi, next(iter(reps.values())), chi, twist, reps=reps)
        for Jd, dev in devs.items():
            if J is None or tuple(J) == Jd:
                out.append((pi, chi.key(), Jd, dev))
    return out


@dataclass
class IdentificationResult:
    relation_holds: bool
    equal: bool | None
    trace: list = field(default_factory=list)
    witness: tuple | None = None


def _pair_relation(rep1: MagicUnitaryRep, rep2: MagicUnitaryRep) -> dict:
    N, d = rep1.N, rep1.d
    I = identity(d) if rep1.exact else np.eye(d)
    devs = {}
    for i in range(N):
        for j in range(N):
            s = sum(rep1.array[k, i].dot(rep2.array[k, j]) for k in range(N))
            dev = s - (I if i == j else 0 * I)
            if not is_zero(dev, rep1.tol):
                devs[(i + 1, j + 1)] = dev
    return devs


def check_identification(rep1: MagicUnitaryRep, rep2: MagicUnitaryRep) -> IdentificationResult:
    """If ``sum_k u1_{ki} u2_{kj} = delta_ij Id`` for all ``i, j`` then ``u1 = u2``.

    The trace follows ``u1_{ij} = sum_l u1_{il} delta_{lj}
    = sum_l u1_{il} sum_k u1_{kl} u2_{kj} = sum_k (sum_l u1_{il} u1_{kl}) u2_{kj} = u2_{ij}``.
    """
    rep1, rep2 = common_dimension(rep1, rep2)
    devs = _pair_relation(rep1, rep2)
    if devs:
        first = next(iter(devs))
        return IdentificationResult(False, None, ["relation not satisfied"], (first, devs[first]))
    N = rep1.N
    trace = ["pair relation holds for all (i, j)"]
    u1, u2 = rep1.array, rep2.array
    equal = True
    for i in range(N):
        for j in range(N):
            step1 = sum(u1[i, l].dot(sum(u1[k, l].dot(u2[k, j]) for k in range(N))) for l in range(N))
            rows = [sum(u1[i, l].dot(u1[k, l]) for l in range(N)) for k in range(N)]
            step2 = sum(rows[k].dot(u2[k, j]) for k in range(N))
            ok = is_zero(step1 - u1[i, j], rep1.tol) and is_zero(step2 - step1, rep1.tol) \
                and is_zero(step2 - u2[i, j], rep1.tol)
            if not ok:
                equal = False
                trace.append(f"chain breaks at ({i + 1}, {j + 1})")
    if equal:
        trace.append("u1_ij = u2_ij for all (i, j)")
    return IdentificationResult(True, equal, trace)


@dataclass
class AlphaReport:
    alpha: Fraction
    alpha_zero: bool
    consistent: bool
    deviations: list = field(default_factory=list)

    def summary(self) -> str:
        if self.alpha_zero:
            return "alpha = 0: no obstruction, both representations admissible"
        if self.consistent:
            return f"alpha = {self.alpha}: invariance under the pair of representations is consistent"
        return (f"alpha = {self.alpha}: inconsistent, {len(self.deviations)} deviation(s); "
                "invariance would force the representations to coincide")


def check_alpha_obstruction(phi: Callable, rep1: MagicUnitaryRep, rep2: MagicUnitaryRep,
                            pair: int = 1) -> AlphaReport:
    """Invariance of the centered covariances ``c(a, b) = phi(x_a^l x_b^r) - phi(x_a^l) phi(x_b^r)``
    under left entries from ``rep1`` and right entries from ``rep2``:
    ``c(j1, j2) Id = sum_{m1, m2} c(m1, m2) u1_{m1 j1} u2_{m2 j2}``.

    For bi-free identically distributed pairs ``c(a, b) = alpha delta_ab``, and the
    identity reads ``delta_{j1 j2} alpha Id = alpha sum_m u1_{m j1} u2_{m j2}``.
    """
    rep1, rep2 = common_dimension(rep1, rep2)
    N = rep1.N

    def c(a: int, b: int):
        return phi(((a, LEFT), (b, RIGHT))) - phi(((a, LEFT),)) * phi(((b, RIGHT),))

    alpha = c(pair, pair)
    if alpha == 0:
        return AlphaReport(Fraction(0), True, True)
    cov = [[c(a, b) for b in range(1, N + 1)] for a in range(1, N + 1)]
    I = identity(rep1.d) if rep1.exact else np.eye(rep1.d)
    devs = []
    for j1 in range(N):
        for j2 in range(N):
            rhs = sum(cov[m1][m2] * rep1.array[m1, j1].dot(rep2.array[m2, j2])
                      for m1 in range(N) for m2 in range(N))
            dev = rhs - cov[j1][j2] * I
            if not is_zero(dev, rep1.tol):
                devs.append(((j1 + 1, j2 + 1), dev))
    return AlphaReport(Fraction(alpha), False, not devs, devs)
