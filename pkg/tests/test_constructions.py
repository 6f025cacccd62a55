from itertools import product as cartesian

from hypothesis import given, settings
from hypothesis import strategies as st

from factcat.constructions import (
    PseudofunctorData,
    arrow_category,
    canonical_r,
    check_cone_universal,
    comma,
    core,
    groth,
    opposite,
    product,
    pseudopullback,
    slice_over,
    slice_under,
    validate_pseudofunctor,
)
from factcat.fib import is_groupoid_fibration, pseudofibre
from factcat.fincat import (
    ONE,
    category,
    identity_functor,
    is_equivalence,
    nat_iso_exists,
    point,
    to_terminal,
    validate_category,
    validate_functor,
    validate_nat,
)
from factcat.gpd import groupoid_equiv
from oracles import cyclic_group, poset

A2 = category("01", [("a", "0", "1")], name="A2")
BC2 = cyclic_group(2)
DISC2 = category("01")


def brute_comma_size(f, g):
    """Objects and morphisms of ``f/g`` counted straight from the definition."""
    A, B, C = f.dom, g.dom, f.cod
    objs = [(a, beta, b) for a in A.objects for b in B.objects for beta in C.hom(f.ob[a], g.ob[b])]
    n = 0
    for (a, beta, b), (a2, beta2, b2) in cartesian(objs, objs):
        for u in A.hom(a, a2):
            for v in B.hom(b, b2):
                if C.comp(g.mor[v], beta) == C.comp(beta2, f.mor[u]):
                    n += 1
    return len(objs), n


def test_comma_examples():
    one = comma(identity_functor(ONE), identity_functor(ONE)).apex
    assert (len(one.objects), len(one.morphisms)) == (1, 1)
    AA = comma(identity_functor(A2), identity_functor(A2)).apex
    assert (len(AA.objects), len(AA.morphisms)) == (3, 6)
    f = point(A2, "0")
    assert len(slice_under("0", f).apex.objects) == 1
    assert len(slice_under("1", f).apex.objects) == 0


def test_comma_counts_match_definition(corpus):
    for name, f in corpus.functors.items():
        for b in f.cod.objects:
            for cone, (x, y) in ((slice_under(b, f), (point(f.cod, b), f)), (slice_over(f, b), (f, point(f.cod, b)))):
                C = cone.apex
                assert (len(C.objects), len(C.morphisms)) == brute_comma_size(x, y), name
                assert validate_category(C) == [], name
                assert validate_nat(cone.cell) == [], name


def test_comma_universal_against_probes():
    cone = comma(identity_functor(A2), identity_functor(A2))
    assert check_cone_universal(cone, [ONE, A2, DISC2])
    cone = comma(to_terminal(A2), to_terminal(BC2))
    assert check_cone_universal(cone, [ONE, A2])


def test_pseudopullback_examples():
    P = pseudopullback(to_terminal(A2), to_terminal(BC2)).apex
    AxB, _, _ = product(A2, BC2)
    assert (len(P.objects), len(P.morphisms)) == (len(AxB.objects), len(AxB.morphisms))
    iso_arrows = pseudopullback(identity_functor(A2), identity_functor(A2)).apex
    assert iso_arrows.objects == ("(0|id_0|0)", "(1|id_1|1)")
    iso2 = category("01", [("a", "0", "1"), ("b", "1", "0")], [("b", "a", "id_0"), ("a", "b", "id_1")])
    fibre = pseudopullback(point(iso2, "0"), identity_functor(iso2)).apex
    assert is_equivalence(to_terminal(fibre))


def test_pseudopullback_is_full_subcategory(corpus):
    for name, f in corpus.functors.items():
        for g in corpus.functors.values():
            if g.cod != f.cod:
                continue
            full = comma(f, g).apex
            sub = pseudopullback(f, g).apex
            assert set(sub.objects) <= set(full.objects)
            for x in sub.objects:
                for y in sub.objects:
                    assert set(sub.hom(x, y)) == set(full.hom(x, y)), name


def test_arrow_category_examples():
    assert len(arrow_category(ONE).apex.objects) == 1
    assert len(arrow_category(A2).apex.objects) == 3
    BB = arrow_category(BC2).apex
    assert BB.objects == ("(*|g1|*)", "(*|id_*|*)")
    # in an abelian group each u has exactly one v with v beta = beta' u
    assert len(BB.morphisms) == 8


def test_core_examples():
    U, incl = core(BC2)
    assert U == BC2 and validate_functor(incl) == []
    U, _ = core(A2)
    assert U.objects == ("0", "1") and len(U.morphisms) == 2
    assert core(ONE)[0] == ONE


def test_opposite_examples():
    assert opposite(ONE) == ONE
    Aop = opposite(A2)
    assert Aop.morphisms["a"] == ("1", "0")
    swap = {"0": "1", "1": "0"}
    assert {m: (swap[x], swap[y]) for m, (x, y) in Aop.morphisms.items() if m == "a"} == {"a": A2.morphisms["a"]}
    assert opposite(BC2) == BC2


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.data())
def test_opposite_is_involutive(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rel = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    P = poset(n, rel)
    assert validate_category(opposite(P)) == []
    assert opposite(opposite(P)) == P


def test_product_sizes():
    for A, B in ((A2, A2), (A2, BC2), (ONE, ONE), (BC2, BC2)):
        P, pa, pb = product(A, B)
        assert len(P.objects) == len(A.objects) * len(B.objects)
        assert len(P.morphisms) == len(A.morphisms) * len(B.morphisms)
        assert validate_category(P) == [] and validate_functor(pa) == [] and validate_functor(pb) == []
    P, _, _ = product(A2, A2)
    assert (len(P.objects), len(P.morphisms)) == (4, 9)


# -- canonical r ----------------------------------------------------------------


def test_canonical_r_examples():
    assert is_equivalence(canonical_r(identity_functor(A2)))
    r = canonical_r(to_terminal(A2))
    assert len(r.dom.objects) == 3 and len(r.cod.objects) == 2
    assert not is_equivalence(r)
    assert is_equivalence(canonical_r(to_terminal(BC2)))


def test_canonical_r_is_a_functor(corpus):
    for name, p in corpus.functors.items():
        assert validate_functor(canonical_r(p)) == [], name


# -- Grothendieck construction -----------------------------------------------


def test_groth_examples():
    T = PseudofunctorData(A2, {"0": ONE, "1": ONE}, {m: identity_functor(ONE) for m in A2.morphisms})
    p = groth(T)
    assert is_equivalence(p) and len(p.dom.objects) == 2
    T = PseudofunctorData(A2, {"0": BC2, "1": BC2}, {m: identity_functor(BC2) for m in A2.morphisms})
    p = groth(T)
    AxB, pa, _ = product(A2, BC2)
    assert len(p.dom.objects) == len(AxB.objects) and len(p.dom.morphisms) == len(AxB.morphisms)
    T = PseudofunctorData(ONE, {"*": BC2}, {"id_*": identity_functor(BC2)})
    p = groth(T)
    assert len(p.dom.objects) == 1 and len(p.dom.morphisms) == 2


def test_groth_fibres_match_values(corpus):
    for name, T in corpus.pseudofunctors.items():
        p = groth(T)
        assert is_groupoid_fibration(p).verdict, name
        for b in T.base.objects:
            assert groupoid_equiv(pseudofibre(p, b), T.value[b]), (name, b)


def test_twisted_cocycle_changes_the_total_category(corpus):
    # the nontrivial cocycle on BC2 over BC2 yields a cyclic group of order 4
    T = corpus.pseudofunctors["BC2_twisted_over_BC2"]
    E = groth(T).dom
    assert len(E.morphisms) == 4
    elements = [m for m in E.morphisms if not E.is_identity(m)]
    orders = []
    for m in elements:
        k, x = 1, m
        while not E.is_identity(x):
            x = E.comp(m, x)
            k += 1
        orders.append(k)
    assert max(orders) == 4


def test_invalid_pseudofunctors_are_reported():
    T = PseudofunctorData(ONE, {"*": A2}, {"id_*": identity_functor(A2)})
    assert [v.law for v in validate_pseudofunctor(T)] == ["value-not-groupoid"]
    T = PseudofunctorData(A2, {"0": BC2, "1": ONE}, {"id_0": identity_functor(BC2), "id_1": identity_functor(ONE), "a": identity_functor(BC2)})
    assert "action" in [v.law for v in validate_pseudofunctor(T)]


def test_mediating_functor_satisfies_cone():
    cone = comma(identity_functor(A2), identity_functor(A2))
    ident = identity_functor(A2)
    lam = nat_iso_exists(ident, ident)
    m = cone.mediate(ident, ident, lam)
    assert validate_functor(m) == []
    assert set(m.ob.values()) == {"(0|id_0|0)", "(1|id_1|1)"}
