"""Command-line front end.

Exit codes: 0 success, 2 usage or parse error, 3 incomplete input (the
missing word is named), 4 an asserted identity fails.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import io
from .bimodule import BBFamily, check_bb_axioms
from .colorings import BIFREE, Coloring, enumerate_bnc, untwist
from .cumulants import (
    CumulantTable,
    IncompleteFunctionalError,
    check_bifree,
    check_splitting,
    coloring,
    format_word,
    moments_from_cumulants,
    twisted_expectation_G,
    all_words,
)
from .draw import draw_ascii, draw_svg
from .linalg import DEFAULT_TOL, format_scalar, is_zero
from .partitions import MAX_ENUMERATE, enumerate_nc, one
from .quantum import (
    check_coassociativity,
    check_quantum_biexchangeable,
    check_strong_invariance,
    vanishing_sum_deviations,
)

EXIT_OK, EXIT_USAGE, EXIT_INCOMPLETE, EXIT_VIOLATION = 0, 2, 3, 4

CHECKS = ("biexchangeable", "strong-invariance", "vanishing-sum", "coassociativity",
          "bifree", "splitting", "g-equals-e", "bb-axioms")


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--n-max", type=int, default=S, help="largest word length")
    p.add_argument("--max-len", type=int, default=S, help="truncation length L of model spaces (default 6)")
    p.add_argument("--mode", choices=("exact", "float"), default=S)
    p.add_argument("--tol", type=float, default=S, help="comparison tolerance (float mode only)")
    p.add_argument("--format", choices=("text", "json", "svg"), default=S)
    p.add_argument("--seed", type=int, default=S)
    p.add_argument("--jobs", type=int, default=S)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="bifree", description="bi-free combinatorics and invariance checks",
                                     parents=[common])
    parser.set_defaults(n_max=None, max_len=None, mode="exact", tol=None, format="text", seed=0, jobs=1)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bnc", parents=[common], help="bi-noncrossing partitions of a coloring")
    b.add_argument("chi", help='coloring string, e.g. "lrllrrlrr"')
    b.add_argument("--sigma", help="JSON twist table (coloring -> image sequence)")
    b.add_argument("--list", action="store_true", help="list every partition with its untwisted image")

    c = sub.add_parser("cumulants", parents=[common], help="moment <-> (l, r)-cumulant transform")
    c.add_argument("input", help="moment functional JSON (or cumulant table for --direction to-moments)")
    c.add_argument("--chi", help="only words of this coloring")
    c.add_argument("--direction", choices=("to-cumulants", "to-moments"), default="to-cumulants")
    c.add_argument("--partitions", choices=("all", "full"), default="all",
                   help="all bi-noncrossing partitions, or only the full block")
    c.add_argument("--sigma", help="JSON twist table")

    f = sub.add_parser("fock", parents=[common], help="vacuum moments of a Fock model spec")
    f.add_argument("model", help="model JSON")
    f.add_argument("--certify", action="store_true", help="also run the vanishing-cumulant certificate")

    k = sub.add_parser("check", parents=[common], help="run an identity check")
    k.add_argument("model", nargs="?", help="model JSON (Fock or bimodule); not needed for rep-only checks")
    k.add_argument("--rep", default="block", help='"classical:3142", "block", "block:p=4/5" or a rep JSON file')
    k.add_argument("--check", required=True, choices=CHECKS, dest="check_name")

    d = sub.add_parser("draw", parents=[common], help="partition diagram")
    d.add_argument("partition", help="JSON partition literal, e.g. [[1,2],[3]]")
    d.add_argument("chi", help="coloring string")
    d.add_argument("--twisted", action="store_true", help="add the s_chi panel")
    d.add_argument("--sigma", help="JSON twist table")
    return parser


def _twist(path):
    return io.twist_from_json(io.load_json(path)) if path else BIFREE


def _coloring(text: str) -> Coloring:
    return io.coloring_from_json(text)


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(io.dump(data))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- commands ------------------------------------------------------------------


def cmd_bnc(args) -> int:
    chi = _coloring(args.chi)
    if chi.n > MAX_ENUMERATE:
        raise UsageError(f"colorings longer than {MAX_ENUMERATE} are not enumerated")
    twist = _twist(args.sigma)
    s = twist.perm(chi)
    parts = enumerate_bnc(chi, twist)
    lines = [f"coloring: {chi.key()}", f"s_chi: {' '.join(map(str, s))}", f"|BNC(chi)|: {len(parts)}"]
    data = {"coloring": chi.key(), "s_chi": list(s), "count": len(parts)}
    if args.list:
        listing = [(p, untwist(p, chi, twist)) for p in parts]
        lines += [f"{p}  untwisted {q}" for p, q in listing]
        data["partitions"] = [{"partition": p.to_list(), "untwisted": q.to_list()} for p, q in listing]
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


def _words_of(keys, chi: Coloring | None, n_max: int | None):
    words = sorted({w for w in keys}, key=lambda w: (len(w), w))
    if chi is not None:
        words = [w for w in words if tuple(f for _, f in w) == chi.faces]
    if n_max is not None:
        words = [w for w in words if len(w) <= n_max]
    return words


def cmd_cumulants(args) -> int:
    chi = _coloring(args.chi) if args.chi else None
    twist = _twist(args.sigma)
    data = io.load_json(args.input)
    rows = []
    if args.direction == "to-cumulants":
        phi = io.moments_from_json(data, args.mode)
        table = CumulantTable(phi, twist)
        for w in _words_of(phi.values, chi, args.n_max):
            parts = [one(len(w))] if args.partitions == "full" else enumerate_bnc(coloring(w), twist)
            for pi in parts:
                rows.append((w, pi, table[(w, pi)]))
        text = "\n".join(f"{format_word(w)} | {pi} | {format_scalar(v)}" for w, pi, v in rows)
        out = io.cumulants_to_json(rows, phi.alphabet, phi.n_max)
    else:
        table = io.cumulants_from_json(data, args.mode)
        values = {}
        for w in _words_of({w for w, _ in table}, chi, args.n_max):
            for sigma in enumerate_bnc(coloring(w), twist):
                if (w, sigma) not in table:
                    raise IncompleteFunctionalError(w) from KeyError(f"partition {sigma}")
            values[w] = moments_from_cumulants(table, w, twist)
        from .cumulants import MomentFunctional

        phi = MomentFunctional(values, tuple(data.get("alphabet", ("l", "r"))))
        text = "\n".join(f"{format_word(w)} = {format_scalar(v)}" for w, v in values.items())
        out = io.moments_to_json(phi)
    text = f"mode: {args.mode}\n" + text
    _emit(args, text, out)
    return EXIT_OK


class _TabulatedModel:
    """A moment-table JSON posing as a scalar model."""

    def __init__(self, phi):
        self.phi = phi
        self.pairs = sorted({j for w in phi.values for j, _ in w})
        top = max((len(w) for w in phi.values), default=0)
        self.max_len = phi.n_max if phi.n_max is not None else top
        self.model = self

    def moments(self, n_max=None):
        return self.phi


def _load_model(path: str, args):
    data = io.load_json(path)
    if isinstance(data, dict) and "moments" in data:
        return _TabulatedModel(io.moments_from_json(data, args.mode))
    if io.is_bimodule_spec(data):
        if args.mode != "exact":
            raise UsageError("bimodule models support exact arithmetic only")
        return io.bimodule_from_json(data, args.max_len)
    return io.fock_from_json(data, args.mode, args.max_len)


def _n_max(args, L: int, default: int) -> int:
    n = args.n_max if args.n_max is not None else min(default, L)
    if n > L:
        raise UsageError(f"--n-max {n} exceeds the truncation length {L}")
    if n < 1:
        raise UsageError("--n-max must be >= 1")
    return n


def cmd_fock(args) -> int:
    family = _load_model(args.model, args)
    if isinstance(family, (BBFamily, _TabulatedModel)):
        raise UsageError("the fock command takes a scalar Fock model spec")
    L = family.model.max_len
    n = _n_max(args, L, L)
    phi = family.moments(n)
    lines = [f"mode: {args.mode}", f"components: {family.n_pairs}", f"maxLen: {L}",
             f"basis dimension: {family.model.dim}", f"moments: {len(phi)} words up to length {n}"]
    lines += [f"{format_word(w)} = {format_scalar(v)}" for w, v in sorted(phi.values.items(), key=lambda kv: (len(kv[0]), kv[0]))]
    out = io.moments_to_json(phi)
    code = EXIT_OK
    if args.certify:
        report = check_bifree(phi, list(range(1, family.n_pairs + 1)), n, tol=args.tol)
        lines.append(report.summary())
        out = {"moments": out, "certificate": _bifree_json(report)}
        if not report.ok:
            code = EXIT_VIOLATION
    _emit(args, "\n".join(lines), out)
    return code


def _bifree_json(report) -> dict:
    return {
        "ok": report.ok, "n_max": report.n_max, "method": report.method, "mode": report.mode,
        "words": report.n_words, "truncated": report.truncated,
        "violations": [{"coloring": c, "partition": p.to_list(), "J": list(J), "value": io.scalar_out(v)}
                       for c, p, J, v in report.violations],
    }


def _report(args, name: str, ok: bool, lines: list[str], data: dict) -> int:
    data = {"check": name, "mode": args.mode, "ok": ok, **data}
    if args.mode == "float":
        data.setdefault("max_deviation", 0.0)
    _emit(args, "\n".join([f"check: {name}", f"mode: {args.mode}"] + lines + ["PASS" if ok else "FAIL"]), data)
    return EXIT_OK if ok else EXIT_VIOLATION


def _invariance_data(report) -> dict:
    out = {"checked": report.checked, "deviations": len(report.deviations), "note": report.note,
           "max_deviation": float(report.max_deviation)}
    if report.deviations:
        key, J, _ = report.first
        out["first_violation"] = {"coloring": key if isinstance(key, str) else list(key), "J": list(J)}
    return out


def cmd_check(args) -> int:
    tol = args.tol
    rep = io.load_rep(args.rep, args.mode, tol)
    name = args.check_name
    if name in ("vanishing-sum", "coassociativity"):
        n = args.n_max or (4 if name == "vanishing-sum" else 3)
        if name == "vanishing-sum":
            bad = []
            for m in range(1, n + 1):
                for p in enumerate_nc(m):
                    for J, dev in vanishing_sum_deviations(p, rep).items():
                        bad.append((p, J))
            lines = [f"rep: {rep.label} (N={rep.N}, d={rep.d})", f"noncrossing partitions up to n = {n}",
                     f"nonzero deviations: {len(bad)}"]
            if bad:
                lines.append(f"first violation: p = {bad[0][0]}, J = {bad[0][1]}")
            return _report(args, name, not bad, lines, {"n_max": n, "deviations": len(bad)})
        import itertools

        bad = [c for m in range(1, n + 1) for c in itertools.product("lr", repeat=m)
               if not check_coassociativity(rep, "".join(c))]
        lines = [f"rep: {rep.label}", f"colorings up to n = {n}", f"failures: {len(bad)}"]
        return _report(args, name, not bad, lines, {"n_max": n, "failures": ["".join(c) for c in bad]})

    if not args.model:
        raise UsageError(f"check {name} needs a model JSON")
    family = _load_model(args.model, args)
    operator_valued = isinstance(family, BBFamily)
    L = family.model.max_len
    n_pairs = len(family.pairs)
    pairs = list(family.pairs) if isinstance(family, _TabulatedModel) else list(range(1, n_pairs + 1))

    if name == "bb-axioms":
        if not operator_valued:
            raise UsageError("bb-axioms needs a bimodule model")
        r = check_bb_axioms(family)
        return _report(args, name, r.ok, [f"checked: {r.checked}"] + r.violations[:5],
                       {"checked": r.checked, "violations": r.violations})

    if name in ("biexchangeable", "strong-invariance"):
        if rep.N != n_pairs:
            raise UsageError(f"rep has N = {rep.N} but the model has {n_pairs} pairs")
    if name == "biexchangeable":
        n = _n_max(args, L, 4)
        phi = family.context().phi if operator_valued else family.moments(n)
        r = check_quantum_biexchangeable(phi, rep, n, mode=args.mode, tol=tol, jobs=args.jobs)
        lines = [f"rep: {rep.label}", r.summary()]
        if r.deviations:
            key, J, _ = r.first
            lines.append(f"first violation: chi = {key}, J = {J}")
        return _report(args, name, r.ok, lines, _invariance_data(r))
    if name == "strong-invariance":
        if not operator_valued:
            raise UsageError("strong-invariance needs a bimodule model")
        n = _n_max(args, L, 2)
        r = check_strong_invariance(family.context(), rep, n, seed=args.seed)
        lines = [f"rep: {rep.label}", r.summary()]
        if r.deviations:
            key, J, _ = r.first
            lines.append(f"first violation: chi = {key[0]}, insertions = {key[1]}, J = {J}")
        return _report(args, name, r.ok, lines, _invariance_data(r))

    source = family.context() if operator_valued else family.moments(_n_max(args, L, 4))
    if name == "bifree":
        n = _n_max(args, L, 4)
        r = check_bifree(source, pairs, n, tol=tol)
        lines = [r.summary()]
        if r.violations:
            c, p, J, _ = r.violations[0]
            lines.append(f"first violation: chi = {c}, pi = {p}, J = {J}")
        return _report(args, name, r.ok, lines, _bifree_json(r))
    if name == "splitting":
        n = _n_max(args, L, 4)
        r = check_splitting(source, pairs, n, tol=tol)
        lines = [f"all-distinct words checked: {r.n_checked}", f"violations: {len(r.violations)}"]
        if r.violations:
            lines.append(f"first violation: chi = {r.violations[0][0]}, J = {r.violations[0][1]}")
        return _report(args, name, r.ok, lines, {"checked": r.n_checked, "violations": len(r.violations)})
    if name == "g-equals-e":
        n = _n_max(args, L, 4)
        bad, count = [], 0
        for m in range(1, n + 1):
            for w in all_words(pairs, m):
                count += 1
                g = twisted_expectation_G(w, source)
                e = source(w)
                if not is_zero(g - e, tol):
                    bad.append(w)
        lines = [f"words checked: {count}", f"mismatches: {len(bad)}"]
        if bad:
            lines.append(f"first mismatch: {format_word(bad[0])}")
        return _report(args, name, not bad, lines, {"checked": count, "mismatches": len(bad)})
    raise UsageError(f"unknown check {name}")


def cmd_draw(args) -> int:
    p = io.partition_from_json(args.partition)
    chi = _coloring(args.chi)
    twist = _twist(args.sigma)
    if args.format == "json":
        raise UsageError("draw supports --format text or svg")
    renderer = draw_svg if args.format == "svg" else draw_ascii
    sys.stdout.write(renderer(p, chi, twist, args.twisted))
    return EXIT_OK


COMMANDS = {"bnc": cmd_bnc, "cumulants": cmd_cumulants, "fock": cmd_fock, "check": cmd_check, "draw": cmd_draw}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tol is not None and args.mode != "float":
            raise UsageError("--tol is only legal with --mode float")
        if args.mode == "float" and args.tol is None:
            args.tol = DEFAULT_TOL
        if args.format == "svg" and args.command != "draw":
            raise UsageError("--format svg is only available for draw")
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        return COMMANDS[args.command](args)
    except IncompleteFunctionalError as exc:
        detail = f" ({exc.__cause__.args[0]})" if exc.__cause__ is not None else ""
        print(f"error: incomplete input: missing word {format_word(exc.word)}{detail}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except (UsageError, io.FormatError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
