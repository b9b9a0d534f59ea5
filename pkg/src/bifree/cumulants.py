"""Bi-moment functions, (l, r)-cumulants and bi-freeness predicates.

A *word* is a tuple of letters ``(pair, face)``; position ``i`` (1-based) of
the word carries the variable ``x_pair^face``.  A *source* of moments is
either a scalar functional (any callable ``word -> scalar``, typically a
:class:`MomentFunctional`) or an operator-valued context exposing
``expect(word, items)``, ``mul``, ``one`` and ``zero`` (see
:class:`ScalarContext` and :class:`bifree.bimodule.BimoduleContext`).

Nested expectations are described by *items*: ``("x", i)`` is the letter at
natural position ``i``; ``("L", b)`` / ``("R", b)`` are the left and right
actions of an inner B-value ``b``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .colorings import (
    BIFREE,
    BIFREE_ALPHABET,
    LEFT,
    BNCContext,
    Coloring,
    TwistFamily,
    apply_perm,
    enumerate_bnc,
    invert,
)
from .linalg import is_zero
from .partitions import Partition, is_noncrossing, kernel, leq, mobius_nc

Letter = tuple
Word = tuple


class IncompleteFunctionalError(KeyError):
    """A moment needed by a computation is missing from the functional."""

    def __init__(self, word):
        super().__init__(word)
        self.word = word

    def __str__(self) -> str:
        return f"moment functional has no value for word {format_word(self.word)}"


def format_word(word: Word) -> str:
    return " ".join(f"x{j}^{f}" for j, f in word) if word else "(empty)"


def coloring(word: Word) -> Coloring:
    faces = tuple(f for _, f in word)
    if all(f in BIFREE_ALPHABET for f in faces):
        return Coloring(faces)
    return Coloring(faces, tuple(sorted(set(faces))))


def indices(word: Word) -> tuple:
    return tuple(j for j, _ in word)


def subword(word: Word, positions: Iterable[int]) -> Word:
    """Letters at the given 1-based positions, in increasing position order."""
    return tuple(word[i - 1] for i in sorted(positions))


def make_word(J: Sequence[int], chi) -> Word:
    faces = chi.faces if isinstance(chi, Coloring) else tuple(chi)
    if len(J) != len(faces):
        raise ValueError("index tuple and coloring differ in length")
    return tuple(zip(J, faces))


def all_words(pairs: Sequence[int], n: int, faces: Sequence = BIFREE_ALPHABET):
    letters = [(j, f) for j in pairs for f in faces]
    return itertools.product(letters, repeat=n)


class MomentFunctional:
    """A table of scalar moments ``word -> value`` (the empty word has moment 1)."""

    def __init__(self, values: dict, alphabet: Sequence = BIFREE_ALPHABET, n_max: int | None = None):
        self.values = {tuple(tuple(l) for l in w): v for w, v in values.items()}
        self.alphabet = tuple(alphabet)
        self.n_max = n_max if n_max is not None else max((len(w) for w in self.values), default=0)

    def __call__(self, word: Word):
        if len(word) == 0:
            return Fraction(1)
        try:
            return self.values[word]
        except KeyError:
            raise IncompleteFunctionalError(word) from None

    def __contains__(self, word) -> bool:
        return len(word) == 0 or word in self.values

    def __len__(self) -> int:
        return len(self.values)

    def pairs(self) -> list:
        return sorted({j for w in self.values for j, _ in w})

    @classmethod
    def from_callable(cls, phi: Callable, pairs: Sequence[int], n_max: int,
                      alphabet: Sequence = BIFREE_ALPHABET) -> "MomentFunctional":
        values = {}
        for n in range(1, n_max + 1):
            for w in all_words(pairs, n, alphabet):
                values[w] = phi(w)
        return cls(values, alphabet, n_max)

    @classmethod
    def random(cls, pairs: Sequence[int], n_max: int, seed: int | random.Random = 0,
               alphabet: Sequence = BIFREE_ALPHABET, bound: int = 5) -> "MomentFunctional":
        """Arbitrary rational moments with small numerators and denominators."""
        rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        values = {}
        for n in range(1, n_max + 1):
            for w in all_words(pairs, n, alphabet):
                values[w] = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        return cls(values, alphabet, n_max)


# --------------------------------------------------------------------------
# expectation contexts


class ScalarContext:
    """B = scalars: ``L_b = R_b = b`` and nested values factor out."""

    def __init__(self, phi: Callable):
        self.phi = phi

    def one(self):
        return Fraction(1)

    def zero(self):
        return Fraction(0)

    def mul(self, a, b):
        return a * b

    def expect(self, word: Word, items: Sequence):
        value = Fraction(1)
        positions = []
        for kind, v in items:
            if kind == "x":
                positions.append(v)
            else:
                value = value * v
        return value * self.phi(tuple(word[i - 1] for i in positions))


class SymbolicContext:
    """Renders nested bi-moments as strings such as ``E(T1 L[E(T2)] T3)``."""

    def one(self):
        return ""

    def zero(self):
        return "0"

    def mul(self, a, b):
        return b if a == "" else a + " " + b

    def expect(self, word: Word, items: Sequence) -> str:
        parts = [f"T{v}" if kind == "x" else f"{kind}[{v}]" for kind, v in items]
        return "E(" + " ".join(parts) + ")"


def _as_context(source):
    if hasattr(source, "expect"):
        return source
    return ScalarContext(source)


def _is_scalar_source(source) -> bool:
    return not hasattr(source, "expect") or isinstance(source, ScalarContext)


def _scalar_phi(source):
    return source.phi if isinstance(source, ScalarContext) else source


# --------------------------------------------------------------------------
# bi-moment functions


def _check_bnc(pi: Partition, word: Word, twist: TwistFamily) -> tuple[tuple[int, ...], Partition]:
    chi = coloring(word)
    if pi.n != chi.n:
        raise ValueError(f"size mismatch: partition of {pi.n} vs word of length {chi.n}")
    s = twist.perm(chi)
    p = apply_perm(pi, invert(s))
    if not is_noncrossing(p):
        raise ValueError(f"{pi} is not bi-noncrossing relative to {chi}")
    return s, p


def bimoment_scalar(pi: Partition, word: Word, phi: Callable, twist: TwistFamily = BIFREE):
    """Scalar bi-moment: product over blocks of ``phi`` of the block subword."""
    _check_bnc(pi, word, twist)
    value = Fraction(1)
    for block in pi.blocks:
        value = value * phi(subword(word, block))
    return value


def _natural_items(block_tw: Sequence[int], gaps: Sequence[list], s: Sequence[int],
                   faces: Sequence) -> list:
    """Reorder one block from twisted to natural order, inserting inner values.

    ``block_tw`` are twisted positions of the block, ``gaps[a]`` the inner
    values ``(tag, b)`` sitting after ``block_tw[a]`` in twisted order.  Left
    items keep their twisted order, right items are reversed; left-type and
    right-type items commute, so only those two subsequences matter.
    """
    keyed = []
    for a, t in enumerate(block_tw):
        nat = s[t - 1]
        keyed.append(((nat, 0, 0), ("x", nat)))
    for a, inner in enumerate(gaps):
        if not inner:
            continue
        before = [s[t - 1] for t in block_tw[: a + 1]]
        after = [s[t - 1] for t in block_tw[a + 1:]]
        lefts_before = [nat for nat in before if faces[nat - 1] == LEFT]
        rights_after = [nat for nat in after if faces[nat - 1] != LEFT]
        for rank, (tag, b) in enumerate(inner):
            if tag == "L":
                anchor = lefts_before[-1] if lefts_before else 0
                keyed.append(((anchor, 1, a, rank), ("L", b)))
            else:
                # right items run backwards: R_b goes just after the first
                # right letter that follows it in twisted order
                anchor = rights_after[0] if rights_after else len(s) + 1
                keyed.append(((anchor, 2, -a, -rank), ("R", b)))
    keyed.sort(key=lambda kv: kv[0])
    return [item for _, item in keyed]


def bimoment(pi: Partition, word: Word, source, twist: TwistFamily = BIFREE):
    """Bi-moment function ``E_pi(word)``.

    Follows the three-step recipe: permute by ``s_chi``, take the nested
    noncrossing expectation of ``s_chi^{-1}(pi)``, then permute every block
    back to natural order and turn inner values into ``L_b`` (block starts
    with a left letter) or ``R_b`` (block starts with a right letter).
    """
    ctx = _as_context(source)
    s, p = _check_bnc(pi, word, twist)
    faces = coloring(word).faces
    n = len(word)
    lab = p.rgs

    def block_value(block_tw: tuple[int, ...]):
        gaps = []
        for a in range(len(block_tw) - 1):
            gaps.append(segment(block_tw[a] + 1, block_tw[a + 1] - 1, tagged=True))
        gaps.append([])
        items = _natural_items(block_tw, gaps, s, faces)
        return ctx.expect(word, items)

    def segment(lo: int, hi: int, tagged: bool):
        out = []
        t = lo
        while t <= hi:
            blk = p.blocks[lab[t - 1]]
            value = block_value(blk)
            if tagged:
                first = min(s[u - 1] for u in blk)
                out.append(("L" if faces[first - 1] == LEFT else "R", value))
            else:
                out.append(value)
            t = blk[-1] + 1
        return out

    result = ctx.one()
    for v in segment(1, n, tagged=False):
        result = ctx.mul(result, v)
    return result


# --------------------------------------------------------------------------
# cumulants


class CumulantTable:
    """Lazily memoized ``(word, pi) -> kappa_pi(word)`` for one moment source."""

    def __init__(self, source, twist: TwistFamily = BIFREE):
        self.source = source
        self.twist = twist
        self._moments: dict = {}
        self._cumulants: dict = {}

    def moment(self, pi: Partition, word: Word):
        key = (word, pi)
        if key not in self._moments:
            if _is_scalar_source(self.source):
                self._moments[key] = bimoment_scalar(pi, word, _scalar_phi(self.source), self.twist)
            else:
                self._moments[key] = bimoment(pi, word, self.source, self.twist)
        return self._moments[key]

    def __getitem__(self, key):
        word, pi = key
        if key not in self._cumulants:
            ctx = BNCContext(coloring(word), self.twist)
            s_inv = ctx.s_inv
            up = apply_perm(pi, s_inv)
            if not is_noncrossing(up):
                raise ValueError(f"{pi} is not bi-noncrossing relative to {ctx.chi}")
            total = None
            for sigma in enumerate_bnc(ctx.chi, self.twist):
                if not leq(sigma, pi):
                    continue
                mu = mobius_nc(apply_perm(sigma, s_inv), up)
                term = mu * self.moment(sigma, word)
                total = term if total is None else total + term
            self._cumulants[key] = total
        return self._cumulants[key]

    def __contains__(self, key) -> bool:
        return key in self._cumulants

    def items(self):
        return self._cumulants.items()

    def fill(self, words: Iterable[Word]) -> "CumulantTable":
        for w in words:
            for pi in enumerate_bnc(coloring(w), self.twist):
                self[(w, pi)]
        return self


def cumulant(pi: Partition, word: Word, source, twist: TwistFamily = BIFREE):
    """``kappa_pi(word) = sum_{sigma <= pi in BNC(chi)} mu(sigma, pi) E_sigma(word)``."""
    return CumulantTable(source, twist)[(word, pi)]


def moments_from_cumulants(table, word: Word, twist: TwistFamily = BIFREE):
    """``E(word) = sum_{sigma in BNC(chi)} kappa_sigma(word)``.

    ``table`` is a :class:`CumulantTable` or a plain mapping ``(word, pi) -> value``.
    """
    total = None
    for sigma in enumerate_bnc(coloring(word), twist):
        key = (word, sigma)
        if isinstance(table, CumulantTable):
            v = table[key]
        else:
            try:
                v = table[key]
            except KeyError:
                raise IncompleteFunctionalError(word) from None
        total = v if total is None else total + v
    return total


def _proper_first_blocks(order: Sequence[int]):
    """Subsets ``V`` of ``order`` containing ``order[0]``, as (V, gaps) in that order."""
    first, rest = order[0], order[1:]
    for mask in range(1 << len(rest)):
        chosen = [first] + [rest[k] for k in range(len(rest)) if mask >> k & 1]
        gaps = []
        current: list = []
        for k, t in enumerate(rest):
            if mask >> k & 1:
                if current:
                    gaps.append(tuple(current))
                current = []
            else:
                current.append(t)
        if current:
            gaps.append(tuple(current))
        yield tuple(chosen), gaps


class BifreeCumulants:
    """Full cumulants ``kappa_{1_chi}`` of a scalar functional, memoized by word.

    Uses the first-block expansion of the moment-cumulant formula along the
    twisted order, which needs ``s_{chi|S}`` to be the restriction of
    ``s_chi``.  Only sums and products of moments appear, so integer moments
    stay integers.
    """

    def __init__(self, phi: Callable, twist: TwistFamily = BIFREE):
        if not twist.restricts:
            raise ValueError("first-block expansion needs a restriction-compatible twist")
        self.phi = phi
        self.twist = twist
        self._memo: dict = {}
        self._splits: dict = {}

    def _splits_for(self, chi_faces: tuple):
        if chi_faces not in self._splits:
            s = self.twist.perm(Coloring(chi_faces) if all(f in BIFREE_ALPHABET for f in chi_faces)
                                else Coloring(chi_faces, tuple(sorted(set(chi_faces)))))
            order = list(s)
            out = []
            for chosen, gaps in _proper_first_blocks(order):
                if len(chosen) == len(order):
                    continue
                out.append((tuple(sorted(chosen)), [tuple(sorted(g)) for g in gaps]))
            self._splits[chi_faces] = out
        return self._splits[chi_faces]

    def __call__(self, word: Word):
        memo = self._memo
        if word in memo:
            return memo[word]
        phi = self.phi
        total = phi(word)
        for chosen, gaps in self._splits_for(tuple(f for _, f in word)):
            k = self(tuple(word[i - 1] for i in chosen))
            if k == 0:
                continue
            for g in gaps:
                k = k * phi(tuple(word[i - 1] for i in g))
                if k == 0:
                    break
            total = total - k
        memo[word] = total
        return total

    def partition_cumulant(self, pi: Partition, word: Word):
        """``kappa_pi`` as the product of full cumulants over blocks (scalar case)."""
        value = 1
        for block in pi.blocks:
            value = value * self(subword(word, block))
        return value


# --------------------------------------------------------------------------
# bi-freeness certificate


@dataclass
class BifreeReport:
    n_max: int
    pairs: list
    method: str
    violations: list = field(default_factory=list)
    n_words: int = 0
    truncated: bool = False
    mode: str = "exact"

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "bi-free up to order" if self.ok else "NOT bi-free at order"
        return (f"{status} {self.n_max}: {len(self.violations)} violation(s) over "
                f"{self.n_words} words [{self.method}, {self.mode}]")


def check_bifree(source, pairs: Sequence[int], n_max: int, faces: Sequence = BIFREE_ALPHABET,
                 twist: TwistFamily = BIFREE, method: str = "auto", tol: float | None = None,
                 max_violations: int = 50) -> BifreeReport:
    """Report every ``(chi, pi, J)`` with ``pi`` not below ``ker(J)`` and
    ``kappa_pi(x_J^chi) != 0``, for words up to length ``n_max``.

    ``method="multiplicative"`` (scalar only) evaluates full cumulants of all
    subwords once and multiplies over blocks; ``method="definition"`` runs the
    Möbius sum for every triple.  ``"auto"`` picks the former when possible.
    """
    scalar = _is_scalar_source(source)
    if method == "auto":
        method = "multiplicative" if scalar and twist.restricts else "definition"
    if method == "multiplicative" and not scalar:
        raise ValueError("multiplicative evaluation only applies to scalar functionals")
    report = BifreeReport(n_max, list(pairs), method, mode="exact" if tol is None else f"float(tol={tol})")

    def add(chi, pi, J, value) -> bool:
        report.violations.append((chi.key(), pi, tuple(J), value))
        if len(report.violations) >= max_violations:
            report.truncated = True
            return True
        return False

    if method == "multiplicative":
        kappa = BifreeCumulants(_scalar_phi(source), twist)
        nonzero_mixed = False
        for n in range(1, n_max + 1):
            for w in all_words(pairs, n, faces):
                report.n_words += 1
                if len(set(indices(w))) > 1 and not is_zero(kappa(w), tol):
                    nonzero_mixed = True
        if not nonzero_mixed:
            return report
        for n in range(2, n_max + 1):
            for w in all_words(pairs, n, faces):
                J = indices(w)
                if len(set(J)) == 1:
                    continue
                kJ = kernel(J)
                chi = coloring(w)
                for pi in enumerate_bnc(chi, twist):
                    if leq(pi, kJ):
                        continue
                    v = kappa.partition_cumulant(pi, w)
                    if not is_zero(v, tol) and add(chi, pi, J, v):
                        return report
        return report

    table = CumulantTable(source, twist)
    for n in range(1, n_max + 1):
        for w in all_words(pairs, n, faces):
            report.n_words += 1
            J = indices(w)
            if len(set(J)) == 1:
                continue
            kJ = kernel(J)
            chi = coloring(w)
            for pi in enumerate_bnc(chi, twist):
                if leq(pi, kJ):
                    continue
                v = table[(w, pi)]
                if not is_zero(v, tol) and add(chi, pi, J, v):
                    return report
    return report


# --------------------------------------------------------------------------
# ordinary free calculus (used for the twisted expectation)


def free_cumulant(order: tuple, moment: Callable, memo: dict | None = None):
    """Free cumulant of the tuple ``order`` (positions, in their given order)
    from ``moment(subtuple)``, by first-block expansion over NC."""
    memo = {} if memo is None else memo
    if order in memo:
        return memo[order]
    total = moment(order)
    for chosen, gaps in _proper_first_blocks(list(order)):
        if len(chosen) == len(order):
            continue
        term = free_cumulant(chosen, moment, memo)
        for g in gaps:
            term = term * moment(g)
        total = total - term
    memo[order] = total
    return total


def free_moment(order: tuple, cumulant_fn: Callable, memo: dict | None = None):
    """Inverse transform: moment of ``order`` from free cumulants of its subtuples."""
    memo = {} if memo is None else memo
    if len(order) == 0:
        return Fraction(1)
    if order in memo:
        return memo[order]
    total = 0
    for chosen, gaps in _proper_first_blocks(list(order)):
        term = cumulant_fn(chosen)
        for g in gaps:
            term = term * free_moment(g, cumulant_fn, memo)
        total = total + term
    memo[order] = total
    return total


def free_product_expectation(order: tuple, labels: dict, moment: Callable):
    """Expectation of a product of elements from free algebras.

    ``labels[t]`` names the algebra of position ``t``; ``moment(sub)`` gives
    the joint moment of a single-algebra subtuple.  Mixed free cumulants are
    zero, so only labelled-constant first blocks contribute.
    """
    kmemo: dict = {}
    emem: dict = {}

    def expect(sub: tuple):
        if len(sub) == 0:
            return Fraction(1)
        if sub in emem:
            return emem[sub]
        lab = labels[sub[0]]
        total = 0
        for chosen, gaps in _proper_first_blocks(list(sub)):
            if any(labels[t] != lab for t in chosen):
                continue
            term = free_cumulant(chosen, moment, kmemo)
            for g in gaps:
                term = term * expect(g)
            total = total + term
        emem[sub] = total
        return total

    return expect(tuple(order))


def twisted_expectation_G(word: Word, source, twist: TwistFamily = BIFREE):
    """Expectation of ``word`` computed as if the pairs were bi-free.

    Scalar sources: permute by ``s_chi``, evaluate the free-product
    expectation of the twisted tuple (each pair is one free algebra), where
    the moment of a single-pair subtuple is read back in natural order.
    Operator-valued sources: the moment-cumulant sum restricted to
    ``pi <= ker(J)``, i.e. with every mixed (l, r)-cumulant dropped.
    """
    if len(word) == 0:
        return _as_context(source).one()
    J = indices(word)
    if not _is_scalar_source(source):
        table = CumulantTable(source, twist)
        kJ = kernel(J)
        total = None
        for pi in enumerate_bnc(coloring(word), twist):
            if leq(pi, kJ):
                v = table[(word, pi)]
                total = v if total is None else total + v
        return total
    phi = _scalar_phi(source)
    s = twist.perm(coloring(word))
    labels = {t: J[s[t - 1] - 1] for t in range(1, len(word) + 1)}

    def moment(sub: tuple):
        return phi(subword(word, (s[t - 1] for t in sub)))

    return free_product_expectation(tuple(range(1, len(word) + 1)), labels, moment)


# --------------------------------------------------------------------------
# splitting and factorization


def _expect_word(source, word: Word):
    if hasattr(source, "expect"):
        return source.expect(word, [("x", i) for i in range(1, len(word) + 1)])
    return source(word)


def _mul(source, a, b):
    if hasattr(source, "mul"):
        return source.mul(a, b)
    return a @ b if hasattr(a, "shape") and getattr(a, "ndim", 0) == 2 else a * b


@dataclass
class SplittingReport:
    n_max: int
    violations: list = field(default_factory=list)
    n_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def check_splitting(source, pairs: Sequence[int], n_max: int, faces: Sequence = BIFREE_ALPHABET,
                    twist: TwistFamily = BIFREE, tol: float | None = None) -> SplittingReport:
    """For words with pairwise distinct indices compare ``E(x_J^chi)`` against
    the product of single-letter expectations taken in ``s_chi`` order.

    ``source`` may be a scalar functional, an operator-valued context, or any
    callable returning B-values (matrices) for words.
    """
    report = SplittingReport(n_max)
    for n in range(1, min(n_max, len(pairs)) + 1):
        for J in itertools.permutations(pairs, n):
            for chi_faces in itertools.product(faces, repeat=n):
                word = make_word(J, chi_faces)
                s = twist.perm(coloring(word))
                lhs = _expect_word(source, word)
                rhs = None
                for t in s:
                    v = _expect_word(source, (word[t - 1],))
                    rhs = v if rhs is None else _mul(source, rhs, v)
                report.n_checked += 1
                if not is_zero(lhs - rhs, tol):
                    report.violations.append(("".join(map(str, chi_faces)), J, lhs - rhs))
    return report


def check_factorization(source, word: Word, k: int, tol: float | None = None) -> bool:
    """``E(X_1 .. X_n) == E(X_1 .. E(X_k) .. X_n)`` for an isolated index at position ``k``.

    For operator-valued contexts the inserted value acts as ``L_b`` on a left
    letter and as ``R_b`` on a right letter.
    """
    J = indices(word)
    if not 1 <= k <= len(word):
        raise ValueError("position out of range")
    if J.count(J[k - 1]) != 1:
        raise ValueError(f"index {J[k - 1]} at position {k} is not isolated")
    if len(word) == 1:
        return True
    ctx = _as_context(source)
    lhs = ctx.expect(word, [("x", i) for i in range(1, len(word) + 1)])
    inner = ctx.expect(word, [("x", k)])
    tag = "L" if word[k - 1][1] == LEFT else "R"
    items = [("x", i) if i != k else (tag, inner) for i in range(1, len(word) + 1)]
    rhs = ctx.expect(word, items)
    return is_zero(lhs - rhs, tol)


bimoment_opvalued = bimoment
