from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factcat.constructions import product
from factcat.errors import NotAGroupoid
from factcat.fincat import (
    ONE,
    category,
    compose_functors,
    inverting_subcategory,
    iter_functors,
    validate_category,
    validate_functor,
)
from factcat.gpd import (
    PresentedCategory,
    TriBool,
    groupoid_equiv,
    induced_functor,
    is_trivial_pi1,
    localize,
    normalize,
    pi1,
    quotient_functor,
    validate_presentation,
)
from oracles import count_homs_to_cyclic, cyclic_group, poset, symmetric_group

A2 = category("01", [("a", "0", "1")], name="A2")
BC2 = cyclic_group(2)
BC3 = cyclic_group(3)
ISO2 = category("01", [("a", "0", "1"), ("b", "1", "0")], [("b", "a", "id_0"), ("a", "b", "id_1")])
P4 = category("abcd", [("ac", "a", "c"), ("ad", "a", "d"), ("bc", "b", "c"), ("bd", "b", "d")])
DISC2 = category("01")

BOTH = ("rewriting",), ("cosets",)


def is_isomorphism(F):
    return (
        validate_functor(F) == []
        and len(set(F.ob.values())) == len(F.cod.objects) == len(F.dom.objects)
        and len(set(F.mor.values())) == len(F.cod.morphisms) == len(F.dom.morphisms)
    )


def vertex_order(res, x):
    return len(res.category.hom(x, x))


# -- TriBool ------------------------------------------------------------------


def test_tribool_refuses_truthiness():
    with pytest.raises(TypeError):
        bool(TriBool("yes"))
    u = TriBool.unknown("bound 3 exhausted")
    assert u.is_unknown and "bound 3" in str(u)
    with pytest.raises(ValueError):
        TriBool("maybe")


# -- localization and normalization -----------------------------------------


def test_localize_nothing_recovers_the_category():
    for C in (ONE, A2, BC2, P4, ISO2):
        res = normalize(localize(C, []))
        assert res.is_finite
        assert is_isomorphism(quotient_functor(C, res))


def test_walking_arrow_localized_is_walking_iso():
    res = normalize(localize(A2, ["a"]))
    assert res.is_finite
    Q = res.category
    assert validate_category(Q) == [] and Q.is_groupoid
    assert len(Q.hom("0", "1")) == len(Q.hom("1", "0")) == 1
    assert groupoid_equiv(Q, ONE)


def test_pseudocircle_is_infinite():
    res = normalize(localize(P4, list(P4.non_identity)))
    assert res.status == "infinite"
    cert = res.certificate
    assert cert.loop
    lhs = [l for l, _ in cert.rules]
    # every pumped word avoids every left-hand side, so the words are distinct normal forms
    for n in range(6):
        word = cert.stem + cert.loop * n
        assert not any(word[i:i + len(l)] == l for l in lhs for i in range(len(word) - len(l) + 1))


def test_presentation_without_generators_is_discrete():
    res = normalize(PresentedCategory(("x", "y", "z"), {}))
    assert res.is_finite
    assert res.category.objects == ("x", "y", "z") and len(res.category.morphisms) == 3


def test_free_group_on_one_generator_is_infinite():
    P = PresentedCategory(("*",), {"x": ("*", "*")}, {"x"})
    assert normalize(P).status == "infinite"


def test_bound_gives_unknown():
    res = normalize(pi1(BC3), bound=1)
    assert res.status == "unknown"
    assert sum(res.effort.values()) >= 1


def test_presentation_validation():
    P = PresentedCategory(("*",), {"x": ("*", "y")})
    assert validate_presentation(P)
    assert validate_presentation(pi1(BC2)) == []


def test_pi1_examples():
    assert vertex_order(normalize(pi1(ONE)), "*") == 1
    res = normalize(pi1(A2))
    assert res.category.is_groupoid and groupoid_equiv(res.category, ONE)
    assert vertex_order(normalize(pi1(BC2)), "*") == 2


@pytest.mark.parametrize("engines", BOTH, ids=["rewriting", "cosets"])
def test_each_engine_alone(engines):
    for C, n in ((BC2, 2), (BC3, 3), (symmetric_group(3), 6), (ISO2, 1)):
        res = normalize(pi1(C), engines=engines)
        assert res.is_finite and res.engine == engines[0]
        assert vertex_order(res, C.objects[0]) == n


def test_engines_produce_the_same_category(corpus):
    for name, C in corpus.categories.items():
        a = normalize(pi1(C), engines=("rewriting",))
        b = normalize(pi1(C), engines=("cosets",))
        if a.is_finite and b.is_finite:
            assert a.category == b.category, name
            assert dict(a.quotient) == dict(b.quotient), name


def test_vertex_groups_against_homomorphism_counts():
    # |Hom(G, Z/n)| identifies small abelian groups
    cases = [(BC2, 2), (BC3, 3), (product(BC2, BC3)[0], 6), (product(BC2, BC2)[0], 4)]
    for C, order in cases:
        res = normalize(pi1(C))
        x = C.objects[0]
        assert vertex_order(res, x) == order
        for n in (2, 3, 4, 6):
            direct = sum(1 for _ in iter_functors(C, cyclic_group(n)))
            assert count_homs_to_cyclic(res.category, x, n) == direct


def test_quotient_inverts_everything_and_induces(corpus):
    for name, A in corpus.categories.items():
        res = normalize(pi1(A))
        if not res.is_finite:
            continue
        n = quotient_functor(A, res)
        assert validate_functor(n) == [], name
        assert all(res.category.is_iso(n.mor[m]) for m in A.morphisms), name
        for F in inverting_subcategory(A, BC2).functors.values():
            G = induced_functor(res, F)
            assert validate_functor(G) == [] and compose_functors(G, n).key == F.key, name


# -- decisions ------------------------------------------------------------------


def test_is_trivial_pi1_examples():
    assert is_trivial_pi1(ONE).is_yes
    assert is_trivial_pi1(A2).is_yes
    assert is_trivial_pi1(P4).is_no
    assert is_trivial_pi1(BC2).is_no
    assert is_trivial_pi1(category([])).is_no
    assert is_trivial_pi1(DISC2).is_no
    assert is_trivial_pi1(BC3, bound=1).is_unknown


def test_groupoid_equiv_examples():
    assert groupoid_equiv(ONE, ISO2)
    assert not groupoid_equiv(BC2, DISC2)
    assert groupoid_equiv(BC3, BC3)
    assert not groupoid_equiv(cyclic_group(4), product(BC2, BC2)[0])
    assert not groupoid_equiv(cyclic_group(6), symmetric_group(3))
    with pytest.raises(NotAGroupoid):
        groupoid_equiv(A2, ONE)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.permutations(range(1, 7)))
def test_relabelled_cyclic_groups_are_equivalent(n, perm):
    G = cyclic_group(n)
    rename = {f"g{k}": f"h{perm[k - 1]}" for k in range(1, n)}
    rename["id_*"] = "id_*"
    H = category(
        ["*"],
        [(rename[m], "*", "*") for m in G.non_identity],
        [(rename[g], rename[f], rename[h]) for (g, f), h in G.compose.items() if g in rename and f in rename and not G.is_identity(g) and not G.is_identity(f)],
    )
    assert groupoid_equiv(G, H)
    assert groupoid_equiv(G, cyclic_group(n + 1)) is False


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.data())
def test_random_posets_normalize(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rel = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    P = poset(n, rel)
    res = normalize(localize(P, []))
    assert res.is_finite and is_isomorphism(quotient_functor(P, res))
    g = normalize(pi1(P))
    if g.is_finite:
        assert g.category.is_groupoid
        assert validate_category(g.category) == []


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9))
def test_cyclic_vertex_groups(k, n):
    res = normalize(pi1(cyclic_group(k)))
    assert vertex_order(res, "*") == k
    assert count_homs_to_cyclic(res.category, "*", n) == gcd(k, n)
