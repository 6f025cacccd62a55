"""Invariant suites run over a corpus: the class laws, the factorization
theorem, the Grothendieck round trip, FS1, the universal property of the
fundamental groupoid and the polynomial layer.

Each suite returns a :class:`SuiteResult` listing its failing cases, so a
report is fully determined by the corpus and the bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constructions import (
    arrow_functor,
    canonical_r,
    core_functor,
    groth,
    pseudopullback,
    validate_pseudofunctor,
)
from .errors import BoundExceeded
from .factorize import check_fs0, check_fs1, comprehensive_factorize, ultimate_factorize
from .fib import is_final, is_groupoid_fibration, is_ultimate, pseudofibre
from .fincat import (
    DEFAULT_GUARD,
    compose_functors,
    compute_left_adjoint,
    inverting_subcategory,
    is_equivalence,
    iter_functors,
    nat_iso_exists,
)
from .gpd import groupoid_equiv, localize, normalize, pi1, quotient_functor
from .poly import chevalley_beck, compose_polynomials, eval_polynomial, polynomial_violations


@dataclass
class Corpus:
    categories: dict
    functors: dict
    pseudofunctors: dict = field(default_factory=dict)
    polynomial_pairs: dict = field(default_factory=dict)
    fs1_pairs: dict = field(default_factory=dict)
    pi1_pairs: list = field(default_factory=list)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def expect(self, cond, label):
        self.checked += 1
        if not cond:
            self.failures.append(label)

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        extra = f"; failing: {', '.join(self.failures[:5])}" if self.failures else ""
        return f"{status} {self.name}: {self.checked - len(self.failures)}/{self.checked}{extra}"


def builtin_corpus() -> Corpus:
    from . import corpus

    c = corpus.categories()
    return Corpus(
        c,
        corpus.functors(),
        corpus.pseudofunctors(),
        corpus.polynomial_pairs(),
        corpus.fs1_pairs(),
        [(c[a], c[x]) for a, x in corpus.pi1_pairs()],
    )


def _composable(fs: dict):
    for n1, f in fs.items():
        for n2, g in fs.items():
            if f.cod == g.dom:
                yield n1, f, n2, g


def factorization_soundness(C: Corpus, bound=None) -> SuiteResult:
    r = SuiteResult("factorization soundness")
    for n, f in C.functors.items():
        try:
            fact = ultimate_factorize(f, bound, verify=False)
        except BoundExceeded:
            continue
        r.expect(not is_ultimate(fact.left, bound).is_no, f"{n}:left")
        r.expect(bool(is_groupoid_fibration(fact.right).verdict), f"{n}:right")
        r.expect(nat_iso_exists(compose_functors(fact.right, fact.left), f) is not None, f"{n}:iso")
        comp = comprehensive_factorize(f)
        r.expect(nat_iso_exists(compose_functors(comp.right, comp.left), f) is not None, f"{n}:comprehensive")
    return r


def oracle_equivalence(C: Corpus) -> SuiteResult:
    r = SuiteResult("oracle equivalence")
    for n, p in C.functors.items():
        r.expect(bool(is_groupoid_fibration(p).verdict) == is_equivalence(canonical_r(p)), n)
    return r


def class_laws(C: Corpus, bound=None) -> SuiteResult:
    r = SuiteResult("class laws")
    fs = C.functors
    gfib = {n: bool(is_groupoid_fibration(f).verdict) for n, f in fs.items()}
    ult = {n: is_ultimate(f, bound) for n, f in fs.items()}
    for n1, q, n2, p in _composable(fs):
        if gfib[n2]:
            both = bool(is_groupoid_fibration(compose_functors(p, q)).verdict)
            r.expect(gfib[n1] == both, f"cancel:{n2}.{n1}")
    for n, p in fs.items():
        if not gfib[n]:
            continue
        E, B = p.dom, p.cod
        r.expect(all(E.is_iso(m) for m in E.morphisms if B.is_iso(p.mor[m])), f"conservative:{n}")
        for n2, g in fs.items():
            if g.cod == B:
                cone = pseudopullback(g, p)
                r.expect(bool(is_groupoid_fibration(cone.left_leg).verdict), f"stable:{n}/{n2}")
        if ult[n].is_yes:
            r.expect(is_equivalence(p), f"intersection:{n}")
    equivalences = {n: f for n, f in fs.items() if is_equivalence(f)}
    for n, f in fs.items():
        for nw, w in equivalences.items():
            if w.cod == f.dom:
                r.expect(check_fs0(f, w, "right", bound), f"fs0-right:{n}.{nw}")
            if w.dom == f.cod:
                r.expect(check_fs0(f, w, "left", bound), f"fs0-left:{nw}.{n}")
    return r


def ultimacy_theory(C: Corpus, bound=None) -> SuiteResult:
    r = SuiteResult("ultimacy theory")
    fs = C.functors
    ult = {n: is_ultimate(f, bound) for n, f in fs.items()}
    for n, f in fs.items():
        if compute_left_adjoint(f) is not None:
            r.expect(not ult[n].is_no, f"right-adjoint:{n}")
        if ult[n].is_yes:
            r.expect(bool(is_final(f).verdict), f"final:{n}")
    for n1, j, n2, k in _composable(fs):
        if ult[n1].is_yes:
            kj = is_ultimate(compose_functors(k, j), bound)
            if not ult[n2].is_unknown and not kj.is_unknown:
                r.expect(ult[n2].is_yes == kj.is_yes, f"2of3:{n2}.{n1}")
    for name, A in C.categories.items():
        morphs = list(A.non_identity)
        for W in [[], morphs] + [[m] for m in morphs]:
            res = normalize(localize(A, W), bound)
            if res.is_finite:
                r.expect(not is_ultimate(quotient_functor(A, res), bound).is_no, f"coinverter:{name}:{','.join(W)}")
    if "P4_to_1" in fs:
        r.expect(bool(is_final(fs["P4_to_1"]).verdict), "P4_to_1:final")
        r.expect(ult["P4_to_1"].is_no, "P4_to_1:not-ultimate")
    return r


def core_lemmas(C: Corpus) -> SuiteResult:
    r = SuiteResult("core lemmas")
    for n, p in C.functors.items():
        eq = is_equivalence(p)
        up = is_equivalence(core_functor(p))
        up2 = is_equivalence(core_functor(arrow_functor(p)))
        r.expect(eq == (up and up2), f"both:{n}")
        if is_groupoid_fibration(p).verdict and up:
            r.expect(eq, f"gfib:{n}")
    return r


def grothendieck_round_trip(C: Corpus) -> SuiteResult:
    r = SuiteResult("grothendieck round trip")
    for n, T in C.pseudofunctors.items():
        r.expect(not validate_pseudofunctor(T), f"{n}:valid")
        p = groth(T, verify=False)
        r.expect(bool(is_groupoid_fibration(p).verdict), f"{n}:gfib")
        for b in T.base.objects:
            r.expect(groupoid_equiv(pseudofibre(p, b), T.value[b]), f"{n}:fibre:{b}")
    return r


def fs1_bipullback(C: Corpus, bound=None, guard=DEFAULT_GUARD) -> SuiteResult:
    r = SuiteResult("fs1 bipullback")
    for n, (e, m, expected) in C.fs1_pairs.items():
        u = is_ultimate(e, bound)
        r.expect(u.is_yes if expected else u.is_no, f"{n}:left-class")
        r.expect(check_fs1(e, m, guard) == expected, n)
    return r


def pi1_universal_property(C: Corpus, bound=None, guard=DEFAULT_GUARD) -> SuiteResult:
    r = SuiteResult("pi1 universal property")
    for A, X in C.pi1_pairs:
        res = normalize(pi1(A), bound)
        if not res.is_finite:
            r.expect(False, f"{A.name}:not-finite")
            continue
        n = quotient_functor(A, res)
        out = [compose_functors(G, n) for G in iter_functors(res.category, X)]
        inverting = inverting_subcategory(A, X, guard)
        label = f"{A.name}->{X.name}"
        r.expect(len(out) == len(inverting.objects), f"{label}:count")
        r.expect(len({F.key for F in out}) == len(out), f"{label}:injective")
        r.expect({F.key for F in out} == {F.key for F in inverting.functors.values()}, f"{label}:image")
    return r


def polynomial_layer(C: Corpus, guard=DEFAULT_GUARD) -> SuiteResult:
    r = SuiteResult("polynomial layer")
    for n, (P1, P2) in C.polynomial_pairs.items():
        P = compose_polynomials(P1, P2, guard)
        r.expect(not polynomial_violations(P), f"{n}:closure")
        r.expect(chevalley_beck(P1, P2) is not None, f"{n}:chevalley-beck")
        direct = compose_functors(eval_polynomial(P2), eval_polynomial(P1))
        r.expect(nat_iso_exists(eval_polynomial(P), direct) is not None, f"{n}:eval")
    return r


def run_all(C: Corpus, bound=None, guard=DEFAULT_GUARD) -> list:
    return [
        factorization_soundness(C, bound),
        oracle_equivalence(C),
        class_laws(C, bound),
        ultimacy_theory(C, bound),
        core_lemmas(C),
        grothendieck_round_trip(C),
        fs1_bipullback(C, bound, guard),
        pi1_universal_property(C, bound, guard),
        polynomial_layer(C, guard),
    ]
