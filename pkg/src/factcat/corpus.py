"""The fixtures corpus: small categories, functors between them,
pseudofunctors into groupoids and composable polynomial pairs.

Everything is built in code; :func:`write_corpus` freezes it to JSON with a
manifest recording each functor's verdicts.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from .constructions import PseudofunctorData, product
from .fincat import (
    ONE,
    ZERO,
    FinCat,
    FinFunctor,
    NatTransform,
    category,
    compose_functors,
    constant_functor,
    functor,
    identity_functor,
    point,
    to_terminal,
)

DATA = Path(__file__).parent / "data" / "corpus"


def _renamed(C: FinCat, name: str) -> FinCat:
    return FinCat(C.objects, C.morphisms, C.identity, C.compose, name)


@lru_cache(maxsize=None)
def categories() -> dict:
    A2 = category("01", [("a", "0", "1")], name="A2")
    A2xA2, _, _ = product(A2, A2)
    BC2 = category("*", [("g", "*", "*")], [("g", "g", "id_*")], name="BC2")
    A2xBC2, _, _ = product(A2, BC2)
    cats = {
        "0": ZERO,
        "1": ONE,
        "disc2": category("01", name="disc2"),
        "A2": A2,
        "iso2": category(
            "01", [("a", "0", "1"), ("b", "1", "0")],
            [("b", "a", "id_0"), ("a", "b", "id_1")], name="iso2",
        ),
        "BC2": BC2,
        "BC3": category(
            "*", [("g", "*", "*"), ("h", "*", "*")],
            [("g", "g", "h"), ("g", "h", "id_*"), ("h", "g", "id_*"), ("h", "h", "g")], name="BC3",
        ),
        "P4": category(
            "abcd", [("ac", "a", "c"), ("ad", "a", "d"), ("bc", "b", "c"), ("bd", "b", "d")], name="P4",
        ),
        "A3": category("012", [("a", "0", "1"), ("b", "1", "2"), ("ba", "0", "2")], [("b", "a", "ba")], name="A3"),
        "A2xA2": _renamed(A2xA2, "A2xA2"),
        "A2xBC2": _renamed(A2xBC2, "A2xBC2"),
        "cospan": category("xyz", [("f", "x", "z"), ("g", "y", "z")], name="cospan"),
        "span": category("xyz", [("f", "z", "x"), ("g", "z", "y")], name="span"),
    }
    return cats


@lru_cache(maxsize=None)
def functors() -> dict:
    c = categories()
    A2, A2xA2, A2xBC2 = c["A2"], c["A2xA2"], c["A2xBC2"]
    _, pr1, pr2 = product(A2, A2)
    _, qa, qb = product(A2, c["BC2"])

    def retarget(F, dom, cod, name):
        return FinFunctor(dom, cod, F.ob, F.mor, name)

    fs = {
        "id_1": identity_functor(c["1"]),
        "id_A2": identity_functor(A2),
        "id_BC2": identity_functor(c["BC2"]),
        "0_to_1": to_terminal(c["0"]),
        "0_to_A2": functor(c["0"], A2, {}),
        "disc2_to_1": to_terminal(c["disc2"]),
        "A2_to_1": to_terminal(A2),
        "iso2_to_1": to_terminal(c["iso2"]),
        "BC2_to_1": to_terminal(c["BC2"]),
        "BC3_to_1": to_terminal(c["BC3"]),
        "P4_to_1": to_terminal(c["P4"]),
        "A3_to_1": to_terminal(c["A3"]),
        "cospan_to_1": to_terminal(c["cospan"]),
        "span_to_1": to_terminal(c["span"]),
        "1_to_A2_at_0": point(A2, "0"),
        "1_to_A2_at_1": point(A2, "1"),
        "1_to_iso2_at_0": point(c["iso2"], "0"),
        "1_to_BC2": point(c["BC2"], "*"),
        "disc2_to_A2": functor(c["disc2"], A2, {"0": "0", "1": "1"}),
        "A2_to_iso2": functor(A2, c["iso2"], {"0": "0", "1": "1"}, {"a": "a"}),
        "A2_to_BC2": functor(A2, c["BC2"], {"0": "*", "1": "*"}, {"a": "g"}),
        "iso2_to_BC2": functor(c["iso2"], c["BC2"], {"0": "*", "1": "*"}, {"a": "g", "b": "g"}),
        "BC2_to_iso2": functor(c["BC2"], c["iso2"], {"*": "0"}, {"g": "id_0"}),
        "BC2_trivial": functor(c["BC2"], c["BC2"], {"*": "*"}, {"g": "id_*"}),
        "BC3_inverse": functor(c["BC3"], c["BC3"], {"*": "*"}, {"g": "h", "h": "g"}),
        "A2_const_0": constant_functor(A2, A2, "0"),
        "A2_const_1": constant_functor(A2, A2, "1"),
        "A2xA2_dom": retarget(pr1, A2xA2, A2, "dom"),
        "A2xA2_cod": retarget(pr2, A2xA2, A2, "cod"),
        "A2xBC2_to_A2": retarget(qa, A2xBC2, A2, "pr1"),
        "A2xBC2_to_BC2": retarget(qb, A2xBC2, c["BC2"], "pr2"),
        "P4_to_A2": functor(c["P4"], A2, {"a": "0", "b": "0", "c": "1", "d": "1"},
                            {"ac": "a", "ad": "a", "bc": "a", "bd": "a"}),
        "A3_to_A2": functor(c["A3"], A2, {"0": "0", "1": "0", "2": "1"}, {"a": "id_0", "b": "a", "ba": "a"}),
        "cospan_to_A2": functor(c["cospan"], A2, {"x": "0", "y": "0", "z": "1"}, {"f": "a", "g": "a"}),
    }
    return {k: FinFunctor(F.dom, F.cod, F.ob, F.mor, k) for k, F in fs.items()}


@lru_cache(maxsize=None)
def pseudofunctors() -> dict:
    c = categories()
    ONE_, A2, BC2, iso2 = c["1"], c["A2"], c["BC2"], c["iso2"]
    out = {}
    out["point_over_1"] = PseudofunctorData(ONE_, {"*": ONE_}, {"id_*": identity_functor(ONE_)})
    out["BC2_over_1"] = PseudofunctorData(ONE_, {"*": BC2}, {"id_*": identity_functor(BC2)})
    out["BC2_over_A2"] = PseudofunctorData(
        A2, {"0": BC2, "1": BC2}, {"id_0": identity_functor(BC2), "id_1": identity_functor(BC2), "a": identity_functor(BC2)},
    )
    out["BC2_then_1_over_A2"] = PseudofunctorData(
        A2, {"0": BC2, "1": ONE_}, {"id_0": identity_functor(BC2), "id_1": identity_functor(ONE_), "a": point(BC2, "*")},
    )
    out["iso2_then_BC2_over_A2"] = PseudofunctorData(
        A2, {"0": iso2, "1": BC2},
        {"id_0": identity_functor(iso2), "id_1": identity_functor(BC2), "a": functor(BC2, iso2, {"*": "0"}, {"g": "id_0"})},
    )
    swap = functor(iso2, iso2, {"0": "1", "1": "0"}, {"a": "b", "b": "a"})
    out["iso2_swapped_over_BC2"] = PseudofunctorData(
        BC2, {"*": iso2}, {"id_*": identity_functor(iso2), "g": swap},
    )
    idB = identity_functor(BC2)
    out["BC2_twisted_over_BC2"] = PseudofunctorData(
        BC2, {"*": BC2}, {"id_*": idB, "g": idB},
        composite={("g", "g"): NatTransform(compose_functors(idB, idB), idB, {"*": "g"})},
    )
    return out


@lru_cache(maxsize=None)
def polynomial_pairs() -> dict:
    """Composable pairs ``(P1, P2)`` of polynomials."""
    from .poly import identity_polynomial, polynomial_from_functor

    fs = functors()
    c = categories()
    P_a2 = polynomial_from_functor(fs["A2_to_1"])
    P_pt1 = polynomial_from_functor(fs["1_to_A2_at_1"])
    P_bc2 = polynomial_from_functor(fs["BC2_to_1"])
    P_ptB = polynomial_from_functor(fs["1_to_BC2"])
    return {
        "A2_to_1_then_1_to_A2": (P_a2, P_pt1),
        "1_to_A2_then_A2_to_1": (P_pt1, P_a2),
        "A2_to_1_then_1_to_BC2": (P_a2, P_ptB),
        "identity_then_BC2_to_1": (identity_polynomial(c["BC2"]), P_bc2),
        "BC2_to_1_then_identity": (P_bc2, identity_polynomial(c["1"])),
        "BC2_to_1_then_1_to_BC2": (P_bc2, P_ptB),
    }


def fs1_pairs() -> dict:
    """``(e, m, expected)``: ``m`` is always a groupoid fibration."""
    fs = functors()
    return {
        "A2_to_1|BC2_to_1": (fs["A2_to_1"], fs["BC2_to_1"], True),
        "id_1|id_1": (fs["id_1"], fs["id_1"], True),
        "A2_to_1|disc2_to_1": (fs["A2_to_1"], fs["disc2_to_1"], True),
        "1_to_A2_at_1|BC2_to_1": (fs["1_to_A2_at_1"], fs["BC2_to_1"], True),
        "iso2_to_1|BC2_to_1": (fs["iso2_to_1"], fs["BC2_to_1"], True),
        "cospan_to_1|BC2_to_1": (fs["cospan_to_1"], fs["BC2_to_1"], True),
        "id_A2|1_to_A2_at_0": (fs["id_A2"], fs["1_to_A2_at_0"], True),
        "1_to_A2_at_0|1_to_A2_at_0": (fs["1_to_A2_at_0"], fs["1_to_A2_at_0"], False),
        "disc2_to_1|disc2_to_1": (fs["disc2_to_1"], fs["disc2_to_1"], False),
        "P4_to_1|BC2_to_1": (fs["P4_to_1"], fs["BC2_to_1"], False),
    }


def pi1_pairs() -> list:
    """``(A, X)`` names for the universal property of the fundamental groupoid."""
    return [("A2", "BC2"), ("A2", "A2"), ("BC2", "BC2"), ("iso2", "A2"), ("cospan", "BC2"), ("A2xA2", "BC2")]


CHECKS = ("gfib", "dfib", "opfib", "final", "ultimate", "equiv", "ladj", "radj")


def functor_verdicts(F: FinFunctor, bound=None) -> dict:
    from .fib import is_discrete_fibration, is_final, is_groupoid_fibration, is_opfibration_gfib, is_ultimate
    from .fincat import compute_left_adjoint, compute_right_adjoint, is_equivalence

    def yn(b):
        return "yes" if b else "no"

    return {
        "gfib": yn(is_groupoid_fibration(F).verdict),
        "dfib": yn(is_discrete_fibration(F).verdict),
        "opfib": yn(is_opfibration_gfib(F).verdict),
        "final": yn(is_final(F).verdict),
        "ultimate": is_ultimate(F, bound).value,
        "equiv": yn(is_equivalence(F)),
        "radj": yn(compute_left_adjoint(F) is not None),
        "ladj": yn(compute_right_adjoint(F) is not None),
    }


def write_corpus(directory=DATA) -> None:
    """Freeze the corpus as canonical JSON plus ``manifest.json``."""
    from .serialize import category_doc, functor_doc, manifest_doc, pseudofunctor_doc, polynomial_doc, write

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    entries = []
    for name, C in categories().items():
        write(d / f"cat_{name}.json", category_doc(C))
        entries.append({"path": f"cat_{name}.json", "kind": "category", "expect": {"valid": "yes"}})
    cat_file = {C.name: f"cat_{n}.json" for n, C in categories().items()}
    for name, F in functors().items():
        doc = functor_doc(F, dom=cat_file[F.dom.name], cod=cat_file[F.cod.name])
        write(d / f"fun_{name}.json", doc)
        entries.append({"path": f"fun_{name}.json", "kind": "functor", "expect": functor_verdicts(F)})
    for name, T in pseudofunctors().items():
        write(d / f"psf_{name}.json", pseudofunctor_doc(T))
        entries.append({"path": f"psf_{name}.json", "kind": "pseudofunctor", "expect": {"valid": "yes"}})
    poly_files = {}
    pairs = []
    for P1, P2 in polynomial_pairs().values():
        names = []
        for P in (P1, P2):
            doc = polynomial_doc(P)
            key = json_key(doc)
            if key not in poly_files:
                poly_files[key] = f"poly_{len(poly_files) + 1}.json"
                write(d / poly_files[key], doc)
                entries.append({"path": poly_files[key], "kind": "polynomial", "expect": {"valid": "yes"}})
            names.append(poly_files[key])
        pairs.append({"first": names[0], "second": names[1]})
    suites = {
        "fs1": [
            {"left": f"fun_{e.name}.json", "right": f"fun_{m.name}.json", "expected": expected}
            for e, m, expected in fs1_pairs().values()
        ],
        "pi1": [{"category": f"cat_{a}.json", "target": f"cat_{x}.json"} for a, x in pi1_pairs()],
        "polynomial_pairs": pairs,
    }
    doc = manifest_doc(entries)
    doc["suites"] = suites
    write(d / "manifest.json", doc)


def json_key(doc) -> str:
    from .serialize import dumps

    return dumps(doc)
