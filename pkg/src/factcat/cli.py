"""Command-line interface.

Exit codes: 0 success or yes, 1 a no/false verdict, 2 unknown or a guard or
bound exceeded, 3 malformed input.  Output is canonical JSON on stdout
unless the command writes DOT.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import serialize as ser
from .constructions import (
    arrow_category,
    comma,
    core,
    groth,
    pseudopullback,
    slice_over,
    slice_under,
    validate_pseudofunctor,
)
from .dot import to_dot
from .errors import BoundExceeded, GuardExceeded, MalformedInput, WitnessFailure
from .factorize import check_fs1, comprehensive_factorize, ultimate_factorize
from .fib import (
    is_cartesian,
    is_discrete_fibration,
    is_final,
    is_groupoid_fibration,
    is_opfibration_gfib,
    ultimate_report,
)
from .fincat import (
    DEFAULT_GUARD,
    FinCat,
    compute_left_adjoint,
    compute_right_adjoint,
    is_equivalence,
    validate_category,
    validate_functor,
)
from .gpd import default_bound, letter_name, normalize, pi1
from .poly import compose_polynomials, eval_polynomial, is_abstract_polynomial_functor, polynomial_violations
from .suites import Corpus, run_all

OK, NO, UNKNOWN, MALFORMED = 0, 1, 2, 3


def emit(doc, out=None):
    text = ser.dumps(doc)
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def verdict_code(v) -> int:
    if isinstance(v, bool):
        return OK if v else NO
    return {"yes": OK, "no": NO}.get(v.value, UNKNOWN)


def verdict_str(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    return v.value


# -- commands -----------------------------------------------------------------


def cmd_validate(args):
    kind, obj = ser.load(args.file)
    if kind == "category":
        problems = validate_category(obj)
    elif kind == "functor":
        problems = validate_category(obj.dom) + validate_category(obj.cod) + validate_functor(obj)
    elif kind == "pseudofunctor":
        problems = validate_pseudofunctor(obj)
    else:
        problems = polynomial_violations(obj)
    emit({"kind": kind, "valid": not problems, "violations": [str(v) for v in problems]})
    return OK if not problems else NO


def _functor(path):
    return ser.load(path, "functor")[1]


def _category(path):
    return ser.load(path, "category")[1]


def cmd_construct(args):
    what = args.what
    if what in ("comma", "pspb"):
        f, g = _functor(args.left), _functor(args.right)
        if f.cod != g.cod:
            raise MalformedInput("functors do not form a cospan")
        cone = comma(f, g) if what == "comma" else pseudopullback(f, g)
        emit(ser.category_doc(cone.apex), args.out)
    elif what == "arrow":
        emit(ser.category_doc(arrow_category(_category(args.category)).apex), args.out)
    elif what == "core":
        emit(ser.category_doc(core(_category(args.category))[0]), args.out)
    elif what == "slice":
        j = _functor(args.functor)
        if args.object not in j.cod.objects:
            raise MalformedInput(f"unknown object {args.object!r}")
        cone = slice_over(j, args.object) if args.over else slice_under(args.object, j)
        emit(ser.category_doc(cone.apex), args.out)
    elif what == "groth":
        T = ser.load(args.pseudofunctor, "pseudofunctor")[1]
        problems = validate_pseudofunctor(T)
        if problems:
            raise MalformedInput("; ".join(map(str, problems)))
        emit(ser.functor_doc(groth(T)), args.out)
    return OK


def cmd_check(args):
    F = _functor(args.functor)
    what = args.what
    witnesses = []
    if what == "gfib":
        r = is_groupoid_fibration(F)
        verdict, witnesses = r.verdict, r.witnesses
    elif what == "dfib":
        r = is_discrete_fibration(F)
        verdict, witnesses = r.verdict, r.witnesses
    elif what == "opfib":
        r = is_opfibration_gfib(F)
        verdict, witnesses = r.verdict, r.witnesses
    elif what == "final":
        r = is_final(F)
        verdict, witnesses = r.verdict, r.witnesses
    elif what == "ultimate":
        r = ultimate_report(F, args.bound)
        verdict, witnesses = r.verdict, r.witnesses
    elif what == "radj":
        verdict = compute_left_adjoint(F) is not None
    elif what == "ladj":
        verdict = compute_right_adjoint(F) is not None
    elif what == "equiv":
        verdict = is_equivalence(F)
    else:
        if args.morphism not in F.dom.morphisms:
            raise MalformedInput(f"unknown morphism {args.morphism!r}")
        verdict = is_cartesian(F, args.morphism)
    doc = {"check": what, "verdict": verdict_str(verdict), "witnesses": [list(w) for w in witnesses]}
    if not isinstance(verdict, bool) and verdict.reason:
        doc["reason"] = verdict.reason
    emit(doc)
    return verdict_code(verdict)


def _word(word):
    return [letter_name(c) for c in word]


def cmd_pi1(args):
    A = _category(args.category)
    res = normalize(pi1(A), args.bound)
    doc = {"status": res.status, "engine": res.engine, "effort": dict(res.effort)}
    if res.is_finite:
        doc["category"] = ser.category_doc(res.category)
    if res.certificate is not None:
        cert = res.certificate
        doc["certificate"] = {
            "src": cert.src,
            "tgt": cert.tgt,
            "stem": _word(cert.stem),
            "loop": _word(cert.loop),
            "rules": [[_word(l), _word(r)] for l, r in cert.rules],
        }
    emit(doc)
    return UNKNOWN if res.status == "unknown" else OK


def cmd_factorize(args):
    f = _functor(args.functor)
    if args.system == "comprehensive":
        fact = comprehensive_factorize(f)
    else:
        try:
            fact = ultimate_factorize(f, args.bound)
        except BoundExceeded as exc:
            status = "InfiniteDetected" if exc.result.status == "infinite" else "Unknown"
            emit({"system": args.system, "status": status, "note": exc.note, "effort": dict(exc.result.effort)})
            return UNKNOWN
    doc = {
        "system": args.system,
        "status": "Finite",
        "left": ser.functor_doc(fact.left),
        "right": ser.functor_doc(fact.right),
        "comparison": dict(fact.comparison.components),
    }
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        ser.write(d / "mid.json", ser.category_doc(fact.mid))
        ser.write(d / "left.json", ser.functor_doc(fact.left, cod="mid.json"))
        ser.write(d / "right.json", ser.functor_doc(fact.right, dom="mid.json"))
    emit(doc)
    return OK


def cmd_fs1(args):
    e, m = _functor(args.left), _functor(args.right)
    ok = check_fs1(e, m, args.guard)
    emit({"check": "fs1", "verdict": verdict_str(ok)})
    return verdict_code(ok)


def cmd_poly(args):
    if args.what == "compose":
        P1 = ser.load(args.first, "polynomial")[1]
        P2 = ser.load(args.second, "polynomial")[1]
        emit(ser.polynomial_doc(compose_polynomials(P1, P2, args.guard)), args.out)
        return OK
    if args.what == "eval":
        P = ser.load(args.polynomial, "polynomial")[1]
        emit(ser.functor_doc(eval_polynomial(P)), args.out)
        return OK
    v = is_abstract_polynomial_functor(_functor(args.functor), args.bound)
    doc = {"check": "abstract-polynomial", "verdict": v.value}
    if v.reason:
        doc["reason"] = v.reason
    emit(doc)
    return verdict_code(v)


def cmd_export(args):
    kind, obj = ser.load(args.file)
    if kind == "functor":
        obj = obj.dom
    if not isinstance(obj, FinCat):
        raise MalformedInput(f"cannot export a {kind} as DOT")
    sys.stdout.write(to_dot(obj))
    return OK


# -- batch verification -----------------------------------------------------


def _stem(path: str) -> str:
    name = Path(path).stem
    return name.split("_", 1)[1] if "_" in name else name


def verify_manifest(path, bound=None, guard=DEFAULT_GUARD):
    """Check every manifest entry and run the invariant suites; returns ``(report, code)``."""
    from .corpus import functor_verdicts

    path = Path(path)
    manifest = ser.load_json(path)
    if manifest.get("kind") != "manifest":
        raise MalformedInput(f"{path}: not a manifest")
    base = path.parent
    loaded = {}
    rows = []
    code = OK
    for entry in manifest.get("entries", []):
        rel, kind = entry["path"], entry["kind"]
        row = {"path": rel, "kind": kind}
        try:
            _, obj = ser.load(base / rel, kind)
        except MalformedInput as exc:
            row.update(status="malformed", detail=str(exc))
            rows.append(row)
            code = max(code, MALFORMED)
            continue
        loaded[rel] = obj
        expect = entry.get("expect", {})
        if kind == "functor":
            got = functor_verdicts(obj, bound)
            got["valid"] = "yes" if not validate_functor(obj) else "no"
        elif kind == "category":
            got = {"valid": "yes" if not validate_category(obj) else "no"}
        elif kind == "pseudofunctor":
            got = {"valid": "yes" if not validate_pseudofunctor(obj) else "no"}
        else:
            got = {"valid": "yes" if not polynomial_violations(obj) else "no"}
        mismatches = {k: {"expected": v, "got": got.get(k)} for k, v in expect.items() if got.get(k) != v}
        row["status"] = "ok" if not mismatches else "mismatch"
        if mismatches:
            row["mismatches"] = mismatches
            code = max(code, NO)
        if "unknown" in got.values():
            code = max(code, UNKNOWN)
        rows.append(row)
    corpus = _manifest_corpus(manifest, loaded, base)
    suites = []
    for r in run_all(corpus, bound, guard):
        suites.append({"name": r.name, "checked": r.checked, "failures": r.failures})
        if not r.ok:
            code = max(code, NO)
    return {"entries": rows, "suites": suites, "exit": code}, code


def _manifest_corpus(manifest, loaded, base) -> Corpus:
    cats = {_stem(p): o for p, o in loaded.items() if isinstance(o, FinCat)}
    from .fincat import FinFunctor
    from .constructions import PseudofunctorData

    funs = {_stem(p): o for p, o in loaded.items() if isinstance(o, FinFunctor)}
    psfs = {_stem(p): o for p, o in loaded.items() if isinstance(o, PseudofunctorData)}
    suites = manifest.get("suites", {})

    def get(rel):
        if rel not in loaded:
            raise MalformedInput(f"suite refers to {rel!r}, which is not a loaded entry")
        return loaded[rel]

    pairs = {f"{_stem(s['first'])}|{_stem(s['second'])}": (get(s["first"]), get(s["second"]))
             for s in suites.get("polynomial_pairs", [])}
    fs1 = {f"{_stem(s['left'])}|{_stem(s['right'])}": (get(s["left"]), get(s["right"]), bool(s["expected"]))
           for s in suites.get("fs1", [])}
    pi1s = [(get(s["category"]), get(s["target"])) for s in suites.get("pi1", [])]
    return Corpus(cats, funs, psfs, pairs, fs1, pi1s)


def cmd_verify(args):
    report, code = verify_manifest(args.corpus, args.bound, args.guard)
    emit(report, args.out)
    return code


def cmd_corpus(args):
    from .corpus import write_corpus

    write_corpus(args.out)
    return OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None, help="normalization effort bound (default 10000 or FACTCAT_BOUND)")
    common.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="enumeration size guard (default 20000)")

    p = argparse.ArgumentParser(prog="factcat", description="Factorizations of functors between finite categories.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check the laws of a category, functor, pseudofunctor or polynomial")
    s.add_argument("file")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("construct", parents=[common], help="build a comma, pseudopullback, arrow, core, slice or Grothendieck construction")
    s.add_argument("what", choices=["comma", "pspb", "arrow", "core", "slice", "groth"])
    s.add_argument("--left")
    s.add_argument("--right")
    s.add_argument("--category")
    s.add_argument("--functor")
    s.add_argument("--object")
    s.add_argument("--over", action="store_true", help="slice j/b instead of b/j")
    s.add_argument("--pseudofunctor")
    s.add_argument("--out")
    s.set_defaults(run=cmd_construct)

    s = sub.add_parser("check", parents=[common], help="decide a property of a functor")
    s.add_argument("what", choices=["gfib", "dfib", "opfib", "final", "ultimate", "radj", "ladj", "equiv", "cartesian"])
    s.add_argument("--functor", required=True)
    s.add_argument("--morphism")
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("pi1", parents=[common], help="normalize the fundamental groupoid of a category")
    s.add_argument("category")
    s.set_defaults(run=cmd_pi1)

    s = sub.add_parser("factorize", parents=[common], help="factor a functor")
    s.add_argument("--system", choices=["comprehensive", "ultimate"], default="ultimate")
    s.add_argument("--functor", required=True)
    s.add_argument("--out")
    s.set_defaults(run=cmd_factorize)

    s = sub.add_parser("fs1", parents=[common], help="bipullback check for an (ultimate, groupoid fibration) pair")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.set_defaults(run=cmd_fs1)

    s = sub.add_parser("poly", parents=[common], help="compose, evaluate or detect abstract polynomials")
    s.add_argument("what", choices=["compose", "eval", "detect"])
    s.add_argument("--first")
    s.add_argument("--second")
    s.add_argument("--polynomial")
    s.add_argument("--functor")
    s.add_argument("--out")
    s.set_defaults(run=cmd_poly)

    s = sub.add_parser("export", parents=[common], help="export a category as Graphviz DOT")
    s.add_argument("format", choices=["dot"])
    s.add_argument("file")
    s.set_defaults(run=cmd_export)

    s = sub.add_parser("verify", parents=[common], help="check a corpus manifest and run the invariant suites")
    s.add_argument("--corpus", required=True)
    s.add_argument("--out")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("corpus", parents=[common], help="write the built-in fixtures corpus")
    s.add_argument("--out", required=True)
    s.set_defaults(run=cmd_corpus)
    return p


REQUIRED = {
    ("construct", "comma"): ("left", "right"),
    ("construct", "pspb"): ("left", "right"),
    ("construct", "arrow"): ("category",),
    ("construct", "core"): ("category",),
    ("construct", "slice"): ("functor", "object"),
    ("construct", "groth"): ("pseudofunctor",),
    ("check", "cartesian"): ("morphism",),
    ("poly", "compose"): ("first", "second"),
    ("poly", "eval"): ("polynomial",),
    ("poly", "detect"): ("functor",),
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse reports usage errors as 2, which here means "unknown"
        return MALFORMED if exc.code == 2 else exc.code
    if args.bound is None:
        args.bound = default_bound()
    for opt in REQUIRED.get((args.command, getattr(args, "what", None)), ()):
        if getattr(args, opt) is None:
            print(f"factcat: {args.command} {args.what} needs --{opt}", file=sys.stderr)
            return MALFORMED
    try:
        return args.run(args)
    except (MalformedInput, ValueError) as exc:
        print(f"factcat: malformed input: {exc}", file=sys.stderr)
        return MALFORMED
    except (GuardExceeded, BoundExceeded) as exc:
        print(f"factcat: {exc}", file=sys.stderr)
        return UNKNOWN
    except WitnessFailure as exc:
        print(f"factcat: internal witness failure: {exc}", file=sys.stderr)
        return NO


if __name__ == "__main__":
    sys.exit(main())
