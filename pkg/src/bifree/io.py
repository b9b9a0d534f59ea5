"""JSON formats for partitions, colorings, twist tables, moment and cumulant
tables, Fock and bimodule model specs, and magic-unitary representations.

Rationals are written as ``"p/q"`` strings; indices are 1-based.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .bimodule import AlgebraB, BBBimodule, build_family
from .colorings import BIFREE_ALPHABET, Coloring, TwistFamily, as_coloring
from .cumulants import MomentFunctional
from .fock import PointedSpace, family_from_components
from .linalg import format_scalar, matrix, parse_scalar
from .partitions import Partition
from .quantum import MagicUnitaryRep, parse_rep_spec


class FormatError(ValueError):
    """Input that does not match a documented schema."""


def load_json(path) -> object:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def scalar_out(x):
    if isinstance(x, np.ndarray):
        return [[scalar_out(v) for v in row] for row in x]
    return format_scalar(x)


# -- partitions, colorings, twists -----------------------------------------


def partition_from_json(data) -> Partition:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, list) or not all(isinstance(b, list) for b in data):
        raise FormatError("a partition is a list of lists of integers, e.g. [[1,2],[3]]")
    try:
        return Partition(data)
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from None


def partition_to_json(p: Partition) -> list:
    return p.to_list()


def coloring_from_json(data) -> Coloring:
    try:
        if isinstance(data, str):
            return Coloring.parse(data)
        if isinstance(data, list):
            return as_coloring([int(v) for v in data] if all(isinstance(v, int) for v in data) else data)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    raise FormatError("a coloring is a string over l/r or a list of integers")


def twist_from_json(data) -> TwistFamily:
    if not isinstance(data, dict):
        raise FormatError('a twist table maps coloring strings to image sequences, e.g. {"lr": [2, 1]}')
    try:
        return TwistFamily.from_table(data)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# -- moments and cumulants -------------------------------------------------


def _word_from_json(entry) -> tuple:
    try:
        return tuple((int(j), str(f)) for j, f in entry)
    except (TypeError, ValueError):
        raise FormatError(f"bad word {entry!r}; expected [[pair, face], ...]") from None


def _word_to_json(word) -> list:
    return [[j, f] for j, f in word]


def moments_from_json(data, mode: str = "exact") -> MomentFunctional:
    if not isinstance(data, dict) or "moments" not in data:
        raise FormatError('moment functional JSON needs a "moments" list')
    alphabet = tuple(data.get("alphabet", BIFREE_ALPHABET))
    values = {}
    for entry in data["moments"]:
        word = _word_from_json(entry["word"])
        if any(f not in alphabet for _, f in word):
            raise FormatError(f"word {entry['word']} uses faces outside {list(alphabet)}")
        try:
            values[word] = parse_scalar(entry["value"], mode)
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"bad value {entry['value']!r}") from None
    return MomentFunctional(values, alphabet, data.get("n_max"))


def moments_to_json(phi: MomentFunctional) -> dict:
    words = sorted(phi.values, key=lambda w: (len(w), w))
    return {
        "alphabet": list(phi.alphabet),
        "n_max": phi.n_max,
        "moments": [{"word": _word_to_json(w), "value": scalar_out(phi.values[w])} for w in words],
    }


def cumulants_to_json(rows, alphabet=BIFREE_ALPHABET, n_max: int | None = None) -> dict:
    """``rows`` are ``(word, partition, value)`` triples."""
    rows = list(rows)
    n_max = n_max if n_max is not None else max((len(w) for w, _, _ in rows), default=0)
    return {
        "alphabet": list(alphabet),
        "n_max": n_max,
        "cumulants": [{"word": _word_to_json(w), "partition": p.to_list(), "value": scalar_out(v)}
                      for w, p, v in rows],
    }


def cumulants_from_json(data, mode: str = "exact") -> dict:
    """``(word, partition) -> value`` mapping of a cumulant table.

    Rows live under ``"cumulants"``; a ``"moments"`` list whose rows carry a
    ``"partition"`` field is accepted too.
    """
    if not isinstance(data, dict):
        raise FormatError('cumulant table JSON needs a "cumulants" list')
    rows = data.get("cumulants")
    if rows is None and all("partition" in r for r in data.get("moments", [{}])):
        rows = data.get("moments")
    if rows is None:
        raise FormatError('cumulant table JSON needs a "cumulants" list')
    out = {}
    for entry in rows:
        word = _word_from_json(entry["word"])
        pi = partition_from_json(entry["partition"])
        if pi.n != len(word):
            raise FormatError(f"partition {entry['partition']} does not match word length {len(word)}")
        out[(word, pi)] = parse_scalar(entry["value"], mode)
    return out


# -- models ------------------------------------------------------------------


def _matrix(rows, mode: str, what: str) -> np.ndarray:
    try:
        m = matrix(rows, mode)
    except (TypeError, ValueError, ZeroDivisionError):
        raise FormatError(f"bad matrix for {what}") from None
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise FormatError(f"{what} must be a square matrix")
    return m


def is_bimodule_spec(data) -> bool:
    return isinstance(data, dict) and "algebraB" in data


def fock_from_json(data, mode: str = "exact", max_len: int | None = None):
    """Fock model spec -> :class:`bifree.fock.FockFamily` (one pair ``(Tl, Tr)`` per component)."""
    if not isinstance(data, dict) or "components" not in data:
        raise FormatError('model JSON needs a "components" list')
    comps = []
    for k, c in enumerate(data["components"], 1):
        ops = {name: _matrix(m, mode, f"component {k} operator {name}") for name, m in c.get("operators", {}).items()}
        try:
            comps.append(PointedSpace(int(c["dim"]), ops))
        except (KeyError, ValueError) as exc:
            raise FormatError(f"component {k}: {exc}") from None
    L = max_len if max_len is not None else int(data.get("maxLen", 6))
    try:
        return family_from_components(comps, L)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def bimodule_from_json(data, max_len: int | None = None):
    """Bimodule model spec -> :class:`bifree.bimodule.BBFamily` (exact only).

    Each component gives ``dim`` = dimension of ``X_j = B ⊕ X̊_j`` (the size of
    its operators), ``leftAction``/``rightAction`` = one matrix on ``X̊_j`` per
    basis element of B, and operators ``Tl``/``Tr``.
    """
    spec = data.get("algebraB", {})
    kind, d = spec.get("kind", "diagonal"), int(spec.get("d", 2))
    if kind == "diagonal":
        B = AlgebraB.diagonal(d)
    elif kind == "full":
        B = AlgebraB.full(d)
    elif kind == "scalars":
        B = AlgebraB.scalars()
    else:
        raise FormatError(f"unknown algebraB kind {kind!r}")
    reduced, operators = [], []
    for k, c in enumerate(data.get("components", []), 1):
        try:
            left = [_matrix(m, "exact", f"component {k} leftAction") for m in c["leftAction"]]
            right = [_matrix(m, "exact", f"component {k} rightAction") for m in c["rightAction"]]
            ops = c["operators"]
            Tl = _matrix(ops["Tl"], "exact", f"component {k} Tl")
            Tr = _matrix(ops["Tr"], "exact", f"component {k} Tr")
        except KeyError as exc:
            raise FormatError(f"component {k} is missing {exc}") from None
        if len(left) != B.dim or len(right) != B.dim:
            raise FormatError(f"component {k}: need one action matrix per basis element of B ({B.dim})")
        X = BBBimodule(B, left, right)
        if X.violations():
            raise FormatError(f"component {k}: {X.violations()[0]}")
        if "dim" in c and int(c["dim"]) != B.dim + X.dim:
            raise FormatError(f"component {k}: dim must equal dim B + dim of the reduced bimodule")
        reduced.append(X)
        operators.append((Tl, Tr))
    if not reduced:
        raise FormatError("model needs at least one component")
    L = max_len if max_len is not None else int(data.get("maxLen", 4))
    try:
        return build_family(B, reduced, operators, L)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def bimodule_to_json(family) -> dict:
    model = family.model
    B = model.B
    comps = []
    for X, (Tl, Tr) in zip(model.reduced, family.templates):
        comps.append({
            "dim": B.dim + X.dim,
            "leftAction": [scalar_out(m) for m in X.left],
            "rightAction": [scalar_out(m) for m in X.right],
            "operators": {"Tl": scalar_out(Tl), "Tr": scalar_out(Tr)},
        })
    return {"algebraB": {"kind": B.kind, "d": B.d}, "components": comps, "maxLen": model.max_len}


def fock_to_json(components, max_len: int) -> dict:
    return {
        "components": [{"dim": c.dim, "operators": {k: scalar_out(m) for k, m in c.operators.items()}}
                       for c in components],
        "maxLen": max_len,
    }


# -- representations ---------------------------------------------------------


def rep_from_json(data, mode: str = "exact", tol: float | None = None) -> MagicUnitaryRep:
    try:
        N, d = int(data["N"]), int(data["d"])
        rows = data["entries"]
    except (KeyError, TypeError, ValueError):
        raise FormatError('rep JSON needs "N", "d" and "entries"') from None
    dtype = object if mode == "exact" else float
    arr = np.empty((N, N, d, d), dtype=dtype)
    if len(rows) != N or any(len(r) != N for r in rows):
        raise FormatError("entries must be an N x N array of matrices")
    for i in range(N):
        for j in range(N):
            m = _matrix(rows[i][j], mode, f"entry ({i + 1}, {j + 1})")
            if m.shape != (d, d):
                raise FormatError(f"entry ({i + 1}, {j + 1}) must be {d}x{d}")
            arr[i, j] = m
    try:
        return MagicUnitaryRep(arr, "json", tol)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def rep_to_json(rep: MagicUnitaryRep) -> dict:
    return {"N": rep.N, "d": rep.d,
            "entries": [[scalar_out(rep.array[i, j]) for j in range(rep.N)] for i in range(rep.N)]}


def load_rep(spec: str, mode: str = "exact", tol: float | None = None) -> MagicUnitaryRep:
    """A built-in spec string (``classical:3142``, ``block:p=4/5``) or a JSON file path."""
    if spec.endswith(".json") or Path(spec).is_file():
        return rep_from_json(load_json(spec), mode, tol)
    try:
        return parse_rep_spec(spec)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
