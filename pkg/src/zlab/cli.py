"""Command-line entry point: ``zlab <command> INPUT [options]``.

INPUT is ``corpus:NAME`` or a path to an arrangement in the text or JSON
format.  Output is JSON on stdout unless ``--table`` is given.

Exit codes: 0 success, 2 an identity check failed, 3 invalid input or
request, 1 an internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus
from .arrangement import Arrangement, mask_of, parse_arrangement, tutte
from .checks import SUITES, run_suite
from .errors import (
    ContractLoop,
    InputError,
    LoopOrColoop,
    NotAPolymatroid,
    ParseError,
    PositiveKUnsupported,
    UnsupportedCombination,
    UnsupportedK,
    ZlabError,
)
from .invariants import euler_char_LM
from .power_ideal import (
    cardinality_polymatroid,
    dual_rank_polymatroid,
    polymatroid_span_check,
    rank_polymatroid,
)
from .super_zonotopal import (
    d_complex_homology,
    default_splitting,
    super_algebra,
    super_deletion_contraction,
    super_hilbert_formula,
)
from .zonotopal import (
    OrderFilter,
    deletion_contraction_sequence,
    truncation_sequence,
    tutte_formula_hilbert,
    zonotopal_ideal,
)

EXIT_OK, EXIT_INTERNAL, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2, 3

# errors caused by what the user asked for, as opposed to internal failures
REQUEST_ERRORS = (InputError, PositiveKUnsupported, UnsupportedK, LoopOrColoop, ContractLoop, NotAPolymatroid)


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def load_input(spec: str) -> Arrangement:
    if spec.startswith("corpus:"):
        return corpus.load(spec[len("corpus:"):])
    path = Path(spec)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc.strerror}") from None
    return parse_arrangement(text)


def _read_json(path: str, what: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {what} {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise ParseError(f"bad {what} JSON: {exc}") from None


def load_filter(arr: Arrangement, path: str) -> OrderFilter:
    """JSON ``{"flats": [[1, 2], [1, 2, 3], ...]}`` with 1-based members."""
    data = _read_json(path, "order filter")
    try:
        masks = [mask_of(e - 1 for e in members) for members in data["flats"]]
        return OrderFilter.build(arr, masks)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad order filter: {exc}") from None
    except ValueError as exc:
        raise UnsupportedCombination(f"invalid order filter: {exc}") from None


POLYMATROID_PRESETS = {
    "rank": lambda arr: rank_polymatroid(arr),
    "2*rank": lambda arr: rank_polymatroid(arr, 2),
    "dual-rank": dual_rank_polymatroid,
    "cardinality": lambda arr: cardinality_polymatroid(arr.n),
}


def load_polymatroid(arr: Arrangement, spec: str) -> dict:
    """A preset name, or JSON ``{"values": [f(S) for S = 0 .. 2^n - 1]}`` indexed by bitmask."""
    if spec in POLYMATROID_PRESETS:
        return POLYMATROID_PRESETS[spec](arr)
    data = _read_json(spec, "polymatroid")
    try:
        values = [int(v) for v in data["values"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad polymatroid: {exc}") from None
    if len(values) != 1 << arr.n:
        raise ParseError(f"polymatroid needs {1 << arr.n} values, got {len(values)}")
    return dict(enumerate(values))


def emit(obj, table: str | None, as_table: bool) -> None:
    if as_table and table is not None:
        print(table)
    else:
        print(json.dumps(obj, sort_keys=True))


# -- commands -----------------------------------------------------------------


def cmd_tutte(args) -> int:
    arr = load_input(args.input)
    T = tutte(arr)
    emit(T.to_json(), str(T), args.table)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    arr = load_input(args.input)
    if args.filter and args.polymatroid:
        raise UnsupportedCombination("--filter and --polymatroid are mutually exclusive")
    if args.polymatroid:
        if args.k is not None:
            raise UnsupportedCombination("--k does not apply to --polymatroid")
        rep = polymatroid_span_check(arr, load_polymatroid(arr, args.polymatroid))
        out = {**rep.quotient.to_json(), "span_dims": rep.span_dims, "formula_match": rep.match,
               "contained": rep.contained}
        emit(out, " ".join(map(str, rep.quotient.dims)), args.table)
        return EXIT_OK
    if args.k is None:
        raise UnsupportedCombination("--k is required unless --polymatroid is given")
    J = load_filter(arr, args.filter) if args.filter else None
    hf = zonotopal_ideal(arr, args.k, J, "cocircuit" if args.cocircuit else "all").hilbert()
    out = hf.to_json()
    if J is None and args.k in (0, -1, -2):
        out["formula_match"] = hf.dims == tutte_formula_hilbert(arr, args.k).dims
    emit(out, " ".join(map(str, hf.dims)), args.table)
    return EXIT_OK


def cmd_super(args) -> int:
    arr = load_input(args.input)
    sz = super_algebra(arr, args.k)
    tab = sz.table()
    hom = d_complex_homology(arr, args.k)
    out = {"table": tab.to_json(), "homology": hom.to_json()}
    if args.k == -1:
        out["formula_match"] = tab == super_hilbert_formula(arr)
    emit(out, tab.render() + "\nhomology:\n" + hom.render(), args.table)
    return EXIT_OK


def cmd_inverse_system(args) -> int:
    arr = load_input(args.input)
    var = "x"
    if args.super:
        sz = super_algebra(arr, args.k)
        slots = sz.slots()
        if args.degree is not None:
            slots = [s for s in slots if s[0] == args.degree]
        blocks = [{"i": i, "j": j, "basis": [g.format(var) for g in sz.inverse_system_basis(i, j)]}
                  for (i, j) in slots]
    else:
        ideal = zonotopal_ideal(arr, args.k)
        degrees = range(len(ideal.hilbert().dims)) if args.degree is None else [args.degree]
        blocks = [{"degree": d, "basis": [g.format(var) for g in ideal.inverse_system_basis(d).elements]}
                  for d in degrees]
    lines = []
    for b in blocks:
        head = f"({b['i']},{b['j']})" if "i" in b else f"degree {b['degree']}"
        lines.append(f"{head}: " + ", ".join(b["basis"]))
    emit({"blocks": blocks}, "\n".join(lines), args.table)
    return EXIT_OK


def _sequence_table(rep) -> str:
    js = rep.to_json()
    slots = [str(tuple(s)) if isinstance(s, tuple) else str(s) for s in rep.slots]
    width = max(len(s) for s in slots + ["right"]) + 1
    rows = [("slot", slots)]
    rows += [(t["name"], [str(x) for x in t["dims"]]) for t in js["terms"]]
    rows += [(m["name"], [str(x) for x in m["ranks"]]) for m in js["maps"]]
    rows += [(k, ["y" if v else "n" for v in vs]) for k, vs in js["verdicts"].items()]
    label = max(len(r[0]) for r in rows) + 1
    return "\n".join(f"{name:<{label}}" + "".join(f"{c:>{width}}" for c in cells) for name, cells in rows)


def cmd_sequence(args) -> int:
    arr = load_input(args.input)
    if args.type == "truncation":
        if args.super or args.element is not None:
            raise UnsupportedCombination("truncation takes neither --super nor --element")
        rep = truncation_sequence(arr, args.k, args.seed)
    else:
        if args.element is None:
            raise UnsupportedCombination("deletion sequences need --element")
        i = args.element - 1
        if not 0 <= i < arr.n:
            raise InputError(f"element must lie in 1..{arr.n}")
        if args.super:
            rep = super_deletion_contraction(arr, i, args.k, default_splitting(arr, i))
        else:
            J = load_filter(arr, args.filter) if args.filter else None
            rep = deletion_contraction_sequence(arr, i, args.k, J)
    emit(rep.to_json(), _sequence_table(rep), args.table)
    return EXIT_OK


def cmd_euler(args) -> int:
    arr = load_input(args.input)
    order = None
    if args.order:
        try:
            order = [int(x) - 1 for x in args.order.split(",")]
        except ValueError:
            raise InputError("--order must be comma-separated element labels") from None
        if any(not 0 <= e < arr.n for e in order):
            raise InputError(f"--order labels must lie in 1..{arr.n}")
    chi = euler_char_LM(arr, args.k, order)
    emit(chi.to_json(), str(chi), args.table)
    return EXIT_OK


def cmd_check(args) -> int:
    if args.input == "all":
        arrs = corpus.all_arrangements()
        full = True
    else:
        arrs = [(args.input, load_input(args.input))]
        full = False
    results = run_suite(args.suite, arrs, args.seed, full)
    ok = all(r.passed for r in results)
    out = {"suite": args.suite, "seed": args.seed, "passed": ok, "checks": [r.to_json() for r in results]}
    width = max((len(r.name) for r in results), default=4) + 2
    lines = [f"{r.name:<{width}}{'PASS' if r.passed else 'FAIL'}"
             + ("  (expected failure reproduced)" if r.passed and r.expected != 'holds' else "")
             for r in results]
    emit(out, "\n".join(lines), args.table)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = ArgumentParser(prog="zlab", description="Zonotopal algebras, power ideals and their identities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("input", help="corpus:NAME or an arrangement file")
        sp.add_argument("--table", action="store_true", help="aligned text instead of JSON")
        sp.set_defaults(func=fn)
        return sp

    add("tutte", cmd_tutte, "Tutte polynomial coefficients")

    sp = add("hilbert", cmd_hilbert, "Hilbert function of a zonotopal or polymatroid quotient")
    sp.add_argument("--k", type=int)
    sp.add_argument("--filter", help="order filter JSON for the hierarchical variant")
    sp.add_argument("--polymatroid", help="preset (rank, 2*rank, dual-rank, cardinality) or JSON file")
    sp.add_argument("--cocircuit", action="store_true", help="generate by cocircuit flats only")

    sp = add("super", cmd_super, "bigraded Hilbert table and d-homology of the superspace algebra")
    sp.add_argument("--k", type=int, required=True)

    sp = add("inverse-system", cmd_inverse_system, "basis of the inverse system")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--degree", type=int)
    sp.add_argument("--super", action="store_true")

    sp = add("sequence", cmd_sequence, "deletion-contraction or truncation sequence report")
    sp.add_argument("--type", choices=["deletion", "truncation"], default="deletion")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--element", type=int, help="1-based element to delete and contract")
    sp.add_argument("--filter", help="order filter JSON for the hierarchical variant")
    sp.add_argument("--super", action="store_true")
    sp.add_argument("--seed", type=int, default=0)

    sp = add("euler", cmd_euler, "graded Euler characteristic by deletion-contraction")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--order", help="comma-separated preference order of elements")

    sp = add("check", cmd_check, "run identity check suites; INPUT may be 'all' for the corpus")
    sp.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except REQUEST_ERRORS as exc:
        print(f"zlab: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ZlabError as exc:
        print(f"zlab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
