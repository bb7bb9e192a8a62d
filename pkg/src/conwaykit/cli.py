"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch or axiom violation, 2 input
that does not parse, 3 a partial algebra undefined somewhere on the tree.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import algsearch, catalog
from .conway import (FiniteAlgebra, FiniteAlgebraTable, UndefinedOperationError, check_axioms, conway_poly,
                     evaluate, global_linking, homfly, jones, three_var_invariant)
from .diagram import DiagramError, LinkDiagram, braid_closure, parse_braid
from .kauffman import (homfly_regular, jck, jck_tilde, jones_from_kauffman, kauffman_F, kauffman_L,
                       q_polynomial)
from .poly import LaurentPoly, PolyError
from .supersig import AxisDriftError, BaseOrderMismatchError, NumericallyAmbiguousError, supersignature

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_UNDEFINED = 0, 1, 2, 3

POLY_INVARIANTS = {
    "homfly": homfly,
    "conway": conway_poly,
    "jones": jones,
    "three-var": three_var_invariant,
    "q": q_polynomial,
    "kauffman": kauffman_F,
    "kauffman-l": kauffman_L,
    "homfly-regular": homfly_regular,
    "jck": jck,
    "jck-tilde": jck_tilde,
    "jones-from-kauffman": jones_from_kauffman,
}
OTHER_INVARIANTS = ("supersig", "lk", "components", "writhe", "crossings", "finite")
ALL_INVARIANTS = tuple(POLY_INVARIANTS) + OTHER_INVARIANTS


class InputError(Exception):
    """Unparseable user input (exit code 2)."""


def _number(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conwaykit", description="Skein-theoretic link invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute invariants of one diagram")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--braid", help='braid word such as "s1^2 s2^-1" (may be empty)')
    src.add_argument("--diagram", metavar="FILE", help="diagram file of X/O lines")
    c.add_argument("--strands", type=int, help="strand count (needed for words that skip the top strand)")
    c.add_argument("--invariant", action="append", choices=ALL_INVARIANTS, help="repeatable; default homfly")
    c.add_argument("--u", type=_number, help="supersignature parameter u")
    c.add_argument("--v", type=_number, help="supersignature parameter v")
    c.add_argument("--algebra", metavar="FILE", help="finite algebra table file for --invariant finite")
    c.add_argument("--epsilon", type=float, help="use floating supersignature arithmetic with this zero band")
    c.add_argument("--cache", action="store_true", help="memoize subdiagrams in the resolving tree")
    c.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="recompute catalog expectations")
    v.add_argument("--all", action="store_true")
    v.add_argument("--entry", action="append", default=[], metavar="NAME")
    v.add_argument("--json", action="store_true")

    s = sub.add_parser("census", help="enumerate finite Conway algebras")
    s.add_argument("--census-size", type=int, required=True)
    s.add_argument("--convention", choices=algsearch.CONVENTIONS, default="sequence")
    s.add_argument("--summary", action="store_true", help="omit the tables")
    s.add_argument("--json", action="store_true")

    k = sub.add_parser("catalog", help="list or show catalog entries")
    k.add_argument("action", choices=("list", "show"))
    k.add_argument("name", nargs="?")
    k.add_argument("--json", action="store_true")

    a = sub.add_parser("axioms", help="check C1-C7 on an algebra table file")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")
    return p


# ---------------------------------------------------------------- helpers

def _load_diagram(args) -> LinkDiagram:
    try:
        if args.diagram is not None:
            with open(args.diagram) as fh:
                return LinkDiagram.from_text(fh.read())
        return braid_closure(parse_braid(args.braid, args.strands))
    except OSError as exc:
        raise InputError(str(exc)) from None
    except DiagramError as exc:
        raise InputError(str(exc)) from None


def _load_table(path: str) -> FiniteAlgebraTable:
    try:
        with open(path) as fh:
            return FiniteAlgebraTable.from_text(fh.read())
    except (OSError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _poly_value(p: LaurentPoly, as_json: bool):
    return p.to_json_obj() if as_json else p.to_text()


def _emit(out, args, text_lines, obj):
    if getattr(args, "json", False):
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        out.write("".join(line + "\n" for line in text_lines))


# ---------------------------------------------------------------- subcommands

def _compute(args, out) -> int:
    d = _load_diagram(args)
    names = args.invariant or ["homfly"]
    text, obj = [], {}
    for name in names:
        if name in POLY_INVARIANTS:
            fn = POLY_INVARIANTS[name]
            val = fn(d, cache=True) if args.cache and name in ("homfly", "conway", "jones", "three-var") else fn(d)
            text.append(f"{name}: {val.pretty()}")
            obj[name] = _poly_value(val, True)
        elif name == "supersig":
            if args.u is None or args.v is None:
                raise InputError("supersig needs --u and --v")
            if not args.u * args.v > 0:
                raise InputError("supersig needs u*v > 0")
            kw = {"exact": True} if args.epsilon is None else {"exact": False, "epsilon": args.epsilon}
            u, v = (args.u, args.v) if args.epsilon is None else (float(args.u), float(args.v))
            val = supersignature(d, u, v, **kw)
            z = "inf" if val.z is None else val.z
            text.append(f"supersig({args.u},{args.v}): r={val.r} sigma={z}")
            obj[f"supersig({args.u},{args.v})"] = {"r": str(val.r), "sigma": z}
        elif name == "lk":
            n, lk = global_linking(d)
            text.append(f"lk: {lk}")
            obj["lk"] = lk
        elif name == "components":
            text.append(f"components: {d.n_components}")
            obj["components"] = d.n_components
        elif name == "writhe":
            text.append(f"writhe: {d.writhe}")
            obj["writhe"] = d.writhe
        elif name == "crossings":
            text.append(f"crossings: {d.n_crossings}")
            obj["crossings"] = d.n_crossings
        elif name == "finite":
            if not args.algebra:
                raise InputError("--invariant finite needs --algebra FILE")
            t = _load_table(args.algebra)
            val = evaluate(d, FiniteAlgebra(t), cache=args.cache)
            text.append(f"finite: {val}")
            obj["finite"] = val
    _emit(out, args, text, obj)
    return EXIT_OK


def _verify(args, out) -> int:
    entries = catalog.load_catalog()
    if not args.all:
        if not args.entry:
            raise InputError("verify needs --all or --entry NAME")
        try:
            entries = [catalog.get_entry(n) for n in args.entry]
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    failed = False
    text, obj = [], {}
    for e in entries:
        rows = catalog.verify_entry(e)
        obj[e.name] = {}
        for inv, ok, expected, got in rows:
            failed |= not ok
            text.append(f"{e.name} {inv}: {'pass' if ok else 'FAIL'}")
            if not ok:
                text.append(f"  expected: {expected}")
                text.append(f"  computed: {got}")
            obj[e.name][inv] = {"ok": ok, "expected": expected, "computed": got}
        if e.jck_tilde_printed is not None and e.jck_tilde is not None:
            printed = e.printed_polynomial()
            if printed == e.jck_tilde:
                status = "matches after corrections" if e.corrections else "matches"
            elif catalog.mirror_a(printed) == e.jck_tilde:
                status = "matches the mirror image only (documented)"
            else:
                status = "differs"
            text.append(f"{e.name} printed: {status}")
            obj[e.name]["printed"] = status
    text.append("all pass" if not failed else "mismatches found")
    _emit(out, args, text, obj)
    return EXIT_MISMATCH if failed else EXIT_OK


def _census(args, out) -> int:
    try:
        res = algsearch.enumerate_algebras(args.census_size, convention=args.convention)
        rep = algsearch.census_report(args.census_size)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    text = [] if args.summary else [res.to_text().rstrip("\n")]
    if args.summary:
        text.append(res.summary_line())
    others = " ".join(f"{c}={n}" for c, n in rep["counts"].items())
    text.append(f"conventions: {others}")
    obj = {
        "size": res.size,
        "count": res.count,
        "convention": res.convention,
        "counts": rep["counts"],
        "representatives": [t.to_text() for t in res.representatives],
        "pair_only": [t.to_text() for t in rep["pair_only"]],
    }
    _emit(out, args, text, obj)
    return EXIT_OK


def _catalog(args, out) -> int:
    if args.action == "list":
        entries = catalog.load_catalog()
        text = [f"{e.name}\t{e.kind}\t{e.braid if e.braid is not None else '(diagram)'}" for e in entries]
        obj = [{"name": e.name, "kind": e.kind, "braid": e.braid} for e in entries]
        _emit(out, args, text, obj)
        return EXIT_OK
    if not args.name:
        raise InputError("catalog show needs an entry name")
    try:
        e = catalog.get_entry(args.name)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    obj = {"name": e.name, "kind": e.kind, "provenance": e.provenance}
    text = [f"name: {e.name}", f"kind: {e.kind}"]
    if e.braid is not None:
        text.append(f"braid: {e.braid}")
        obj["braid"] = e.braid
    if e.braid_printed:
        text.append(f"braid as printed: {e.braid_printed}")
        obj["braid_printed"] = e.braid_printed
    if e.diagram_text:
        text.append("diagram:")
        text += ["  " + ln for ln in e.diagram_text.strip().splitlines()]
        obj["diagram"] = e.diagram_text
    for key in ("homfly", "q", "jck_tilde"):
        p = getattr(e, key)
        if p is not None:
            text.append(f"{key}: {p.pretty()}")
            obj[key] = p.to_json_obj()
    if e.signatures is not None:
        sig = ["inf" if z is None else z for z in e.signatures]
        text.append("signatures: " + " ".join(map(str, sig)))
        obj["signatures"] = sig
    for old, new in e.corrections:
        text.append(f"correction: {old} => {new}")
    obj["corrections"] = e.corrections
    text.append(f"provenance: {e.provenance}")
    _emit(out, args, text, obj)
    return EXIT_OK


def _axioms(args, out) -> int:
    t = _load_table(args.file)
    rep = check_axioms(t)
    obj = {"ok": rep.ok, "violations": {k: list(v) for k, v in rep.violations.items()}}
    _emit(out, args, rep.summary().splitlines() + ["ok" if rep.ok else "violations found"], obj)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    handler = {"compute": _compute, "verify": _verify, "census": _census,
               "catalog": _catalog, "axioms": _axioms}[args.command]
    try:
        return handler(args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except PolyError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except UndefinedOperationError as exc:
        err.write(f"undefined: {exc}\n")
        return EXIT_UNDEFINED
    except (AxisDriftError, NumericallyAmbiguousError, BaseOrderMismatchError) as exc:
        err.write(f"undefined: {exc}\n")
        return EXIT_UNDEFINED


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
