"""The comprehensive factorization (final, discrete fibration) and the
(ultimate, groupoid fibration) factorization, with instance checks of the
factorization-system axioms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructions import comma, core_functor, postcompose, precompose, pseudopullback, slice_under
from .errors import BoundExceeded, GuardExceeded, WitnessFailure
from .fincat import (
    DEFAULT_GUARD,
    FinCat,
    FinFunctor,
    NatTransform,
    compose_functors,
    connected_components,
    functor_category,
    identity_functor,
    identity_name,
    is_equivalence,
    iter_functors,
    iter_transformations,
    pseudo_inverse,
    validate_functor,
    validate_nat,
)
from .fib import is_discrete_fibration, is_final, is_groupoid_fibration, is_ultimate
from .gpd import induced_functor, localize, normalize, quotient_functor


@dataclass(frozen=True, eq=False)
class Factorization:
    """``f ~ right . left`` through ``mid``; ``comparison: right . left => f`` is invertible."""

    input: FinFunctor
    left: FinFunctor
    mid: FinCat
    right: FinFunctor
    comparison: NatTransform
    system: str = ""


@dataclass(frozen=True, eq=False)
class ReflectionWitness:
    """``w: B -> F`` with ``psi: 1 => q w`` and invertible ``sigma: f => w j``."""

    w: FinFunctor
    psi: NatTransform
    sigma: NatTransform
    alternatives: int = 0


# -- comprehensive ------------------------------------------------------------


def _components(C: FinCat) -> dict:
    """Object -> index of its connected component, components ordered by least object."""
    comps = sorted(connected_components(C), key=min)
    return {x: i for i, comp in enumerate(comps) for x in comp}


def comprehensive_factorize(f: FinFunctor) -> Factorization:
    """``f = p j`` with ``j`` final and ``p`` the discrete fibration of ``b |-> pi0(b/f)``."""
    A, B = f.dom, f.cod
    label, cones = {}, {}
    for b in B.objects:
        cone = slice_under(b, f)
        cones[b] = cone
        label[b] = _components(cone.apex)
    objs = [f"({b}|{k})" for b in B.objects for k in sorted(set(label[b].values()))]

    def restrict(beta, b, k):
        # component of (a, beta'; beta) in b'/f, for (a, beta') in component k of b/f
        cone = cones[b]
        x = next(x for x, i in label[b].items() if i == k)
        a, beta2 = cone.right_leg.ob[x], cone.cell[x]
        b2 = B.src(beta)
        y = cones[b2].object_name("*", B.comp(beta2, beta), a)
        return label[b2][y]

    morphisms, keys, identity = {}, {}, {}
    for b in B.objects:
        for k in sorted(set(label[b].values())):
            tgt = f"({b}|{k})"
            for beta in B.morphisms:
                if B.tgt(beta) != b:
                    continue
                k2 = restrict(beta, b, k)
                src = f"({B.src(beta)}|{k2})"
                name = identity_name(tgt) if B.is_identity(beta) else f"({beta}>{k})"
                morphisms[name] = (src, tgt)
                keys[name] = (beta, b, k)
                if B.is_identity(beta):
                    identity[tgt] = name
    by_key = {v: n for n, v in keys.items()}
    table = {}
    for g, (y, z) in morphisms.items():
        for h, (x, y2) in morphisms.items():
            if y2 == y:
                bg, b, k = keys[g]
                table[(g, h)] = by_key[(B.comp(bg, keys[h][0]), b, k)]
    E = FinCat(tuple(objs), morphisms, identity, table, f"el({f.name})" if f.name else "el")
    base = {f"({b}|{k})": b for b in B.objects for k in set(label[b].values())}
    p = FinFunctor(E, B, base, {m: k[0] for m, k in keys.items()}, "p")

    def j_ob(a):
        b = f.ob[a]
        return f"({b}|{label[b][cones[b].object_name('*', B.identity[b], a)]})"

    j_mor = {}
    for u, (a, a2) in A.morphisms.items():
        b2 = f.ob[a2]
        j_mor[u] = by_key[(f.mor[u], b2, label[b2][cones[b2].object_name("*", B.identity[b2], a2)])]
    j = FinFunctor(A, E, {a: j_ob(a) for a in A.objects}, j_mor, "j")
    comparison = NatTransform(compose_functors(p, j), f, {a: B.identity[f.ob[a]] for a in A.objects})
    for F in (p, j):
        if validate_functor(F):
            raise WitnessFailure(f"comprehensive factor {F.name} is not a functor")
    if not is_discrete_fibration(p).verdict or not is_final(j).verdict:
        raise WitnessFailure("comprehensive factors fail their class checks")
    return Factorization(f, j, E, p, comparison, "comprehensive")


# -- ultimate -----------------------------------------------------------------


def ultimate_factorize(f: FinFunctor, bound: int | None = None, verify: bool = True) -> Factorization:
    """``f = p j`` with ``j`` ultimate and ``p`` a groupoid fibration.

    ``E`` is the localization of ``B/f`` at the morphisms whose ``B``-part is
    an identity, ``p`` is induced by ``dom`` and ``j`` is ``A -> B/f -> E``.
    Raises :class:`BoundExceeded` when the localization does not normalize.
    """
    A, B = f.dom, f.cod
    cone = comma(identity_functor(B), f)
    Bf, dom = cone.apex, cone.left_leg
    vertical = [m for m in Bf.morphisms if B.is_identity(dom.mor[m])]
    result = normalize(localize(Bf, vertical), bound)
    if not result.is_finite:
        note = "fibrewise fundamental groupoid is infinite" if result.status == "infinite" else "bound exhausted"
        raise BoundExceeded(result, note)
    n = quotient_functor(Bf, result)
    E = result.category
    p = induced_functor(result, dom)
    p = FinFunctor(E, B, p.ob, p.mor, "p")
    i = FinFunctor(
        A, Bf,
        {a: cone.object_name(f.ob[a], B.identity[f.ob[a]], a) for a in A.objects},
        {u: cone.morphism_name(f.mor[u], u, B.identity[f.ob[a]], B.identity[f.ob[a2]]) for u, (a, a2) in A.morphisms.items()},
        "i",
    )
    j = compose_functors(n, i)
    j = FinFunctor(A, E, j.ob, j.mor, "j")
    comparison = NatTransform(compose_functors(p, j), f, {a: B.identity[f.ob[a]] for a in A.objects})
    fact = Factorization(f, j, E, p, comparison, "ultimate")
    if verify:
        if validate_functor(p) or validate_functor(j) or validate_nat(comparison):
            raise WitnessFailure("ultimate factorization is malformed")
        if not is_groupoid_fibration(p).verdict:
            raise WitnessFailure("right factor is not a groupoid fibration")
        if is_ultimate(j, bound).is_no:
            raise WitnessFailure("left factor is certified not ultimate")
    return fact


# -- factorization-system axioms --------------------------------------------


def check_fs0(f: FinFunctor, w: FinFunctor, side: str, bound: int | None = None) -> bool:
    """Composing with an equivalence ``w`` preserves and reflects class membership.

    ``side="right"`` tests groupoid fibrations with ``f . w``; ``side="left"``
    tests ultimate functors with ``w . f``.
    """
    if not is_equivalence(w):
        raise ValueError("w must be an equivalence")
    if side == "right":
        return bool(is_groupoid_fibration(compose_functors(f, w)).verdict) == bool(is_groupoid_fibration(f).verdict)
    if side == "left":
        return is_ultimate(compose_functors(w, f), bound).value == is_ultimate(f, bound).value
    raise ValueError(side)


def fs1_comparison(e: FinFunctor, m: FinFunctor, guard: int = DEFAULT_GUARD) -> FinFunctor:
    """``[Y, A] -> [X, A] x_ps [Y, B]`` sending ``w`` to ``(w e, 1, m w)``."""
    X, Y = e.dom, e.cod
    A, B = m.dom, m.cod
    YA, XA, YB, XB = (functor_category(S, T, guard) for S, T in ((Y, A), (X, A), (Y, B), (X, B)))
    total = sum(len(K.morphisms) for K in (YA, XA, YB, XB))
    if total > guard:
        raise GuardExceeded("hom-categories", guard)
    P = pseudopullback(postcompose(m, XA, XB), precompose(e, YB, XB))
    pre_A, post_Y = precompose(e, YA, XA), postcompose(m, YA, YB)
    ob, mor = {}, {}
    for name, w in YA.functors.items():
        u, v = pre_A.ob[name], post_Y.ob[name]
        ob[name] = P.object_name(u, XB.identity[precompose(e, YB, XB).ob[v]], v)
    pre_B = precompose(e, YB, XB)
    for name, (s, t) in YA.morphisms.items():
        u, v = pre_A.mor[name], post_Y.mor[name]
        g1 = XB.identity[pre_B.ob[post_Y.ob[s]]]
        g2 = XB.identity[pre_B.ob[post_Y.ob[t]]]
        mor[name] = P.morphism_name(u, v, g1, g2)
    return FinFunctor(YA, P.apex, ob, mor, "comparison")


def check_fs1(e: FinFunctor, m: FinFunctor, guard: int = DEFAULT_GUARD) -> bool:
    """Is the square of hom-categories for ``(e, m)`` a bipullback?

    ``m`` must be a groupoid fibration, so it is enough that the core of the
    comparison functor is an equivalence of groupoids.
    """
    if not is_groupoid_fibration(m).verdict:
        raise ValueError("right entry must be a groupoid fibration")
    comp = fs1_comparison(e, m, guard)
    return is_equivalence(core_functor(comp))


# -- reflection onto groupoid fibrations ------------------------------------


def reflect_to_gfib(j: FinFunctor, q: FinFunctor, f: FinFunctor, phi: NatTransform,
                    bound: int | None = None, guard: int = DEFAULT_GUARD) -> ReflectionWitness:
    """Extend ``(f, phi): j -> q`` over ``B`` along ``j`` to ``(w, psi)``: ``1_B -> q``.

    ``j: A -> B`` ultimate, ``q: F -> B`` a groupoid fibration, ``f: A -> F``
    and ``phi: j => q f`` invertible.  The result satisfies
    ``psi j = (q sigma) . phi``; every other such triple is checked to be
    uniquely isomorphic to it.
    """
    A, B = j.dom, j.cod
    F = q.dom
    if is_ultimate(j, bound).is_no:
        raise ValueError("j is not ultimate")
    if not is_groupoid_fibration(q).verdict:
        raise ValueError("q is not a groupoid fibration")
    if not phi.is_iso:
        raise ValueError("phi must be invertible")
    cone = comma(identity_functor(B), j)
    Bj = cone.apex
    lifts = {}
    for x in Bj.objects:
        a = cone.right_leg.ob[x]
        target = B.comp(phi[a], cone.cell[x])
        lifts[x] = _cartesian_lift(q, f.ob[a], target)
    G_ob = {x: F.src(lifts[x][0]) for x in Bj.objects}
    G_mor = {}
    for m, (x, y) in Bj.morphisms.items():
        u, v = cone.left_leg.mor[m], cone.right_leg.mor[m]
        chi1, th1 = lifts[x]
        chi2, th2 = lifts[y]
        eta = F.comp(f.mor[v], chi1)
        beta = B.comp_path(th2, u, B.inverse(th1))
        G_mor[m] = _factor_through(q, chi2, eta, beta)
    G = FinFunctor(Bj, F, G_ob, G_mor, "G")
    if validate_functor(G):
        raise WitnessFailure("lifted functor is not a functor")
    vertical = [m for m in Bj.morphisms if B.is_identity(cone.left_leg.mor[m])]
    result = normalize(localize(Bj, vertical), bound)
    if not result.is_finite:
        raise BoundExceeded(result, "localization of B/j did not normalize")
    Gbar = induced_functor(result, G)
    n = quotient_functor(Bj, result)
    p_j = induced_functor(result, cone.left_leg)
    s, unit, counit = pseudo_inverse(p_j)
    w = compose_functors(Gbar, s)
    w = FinFunctor(B, F, w.ob, w.mor, "w")
    psi = {}
    for b in B.objects:
        x = s.ob[b]
        psi[b] = B.comp(lifts[x][1], B.inverse(counit[b]))
    psi = NatTransform(identity_functor(B), compose_functors(q, w), psi)
    sigma = {}
    for a in A.objects:
        x = cone.object_name(j.ob[a], B.identity[j.ob[a]], a)
        chi = lifts[x][0]
        sigma[a] = F.comp(Gbar.mor[unit[n.ob[x]]], F.inverse(chi))
    sigma = NatTransform(f, compose_functors(w, j), sigma)
    for cell in (psi, sigma):
        if validate_nat(cell):
            raise WitnessFailure("reflection 2-cell is not natural")
    if not _compatible(j, q, phi, psi, sigma):
        raise WitnessFailure("reflection witness fails psi j = (q sigma) phi")
    count = _check_unique(j, q, f, phi, w, psi, sigma, guard)
    return ReflectionWitness(w, psi, sigma, count)


def _cartesian_lift(q: FinFunctor, e: str, beta: str):
    """``(chi, theta)`` with ``chi`` into ``e``, ``theta`` invertible and ``q(chi) theta = beta``."""
    F, B = q.dom, q.cod
    b = B.src(beta)
    found = None
    into = sorted((m for m in F.morphisms if F.tgt(m) == e), key=lambda m: not F.is_identity(m))
    for chi in into:
        for theta in B.hom(b, q.ob[F.src(chi)]):
            if B.is_iso(theta) and B.comp(q.mor[chi], theta) == beta:
                if B.is_identity(theta):
                    return chi, theta
                found = found or (chi, theta)
    if found is None:
        raise WitnessFailure(f"no lift of {beta} into {e}")
    return found


def _factor_through(q: FinFunctor, chi: str, eta: str, beta: str) -> str:
    """The unique ``xi`` with ``chi xi = eta`` and ``q xi = beta``."""
    F = q.dom
    hits = [xi for xi in F.hom(F.src(eta), F.src(chi)) if F.comp(chi, xi) == eta and q.mor[xi] == beta]
    if len(hits) != 1:
        raise WitnessFailure("cartesian factorization is not unique")
    return hits[0]


def _compatible(j, q, phi, psi, sigma) -> bool:
    B = j.cod
    return all(
        psi[j.ob[a]] == B.comp(q.mor[sigma[a]], phi[a])
        for a in j.dom.objects
    )


def _check_unique(j, q, f, phi, w, psi, sigma, guard) -> int:
    """Every alternative ``(w', psi', sigma')`` is uniquely isomorphic to ``(w, psi, sigma)``.

    Returns the number of alternatives inspected.
    """
    B, F = j.cod, q.dom
    count = 0
    for w2 in iter_functors(B, F):
        qw2 = compose_functors(q, w2)
        w2j = compose_functors(w2, j)
        isos = list(iter_transformations(w, w2, iso_only=True))
        for psi2 in iter_transformations(identity_functor(B), qw2, iso_only=True):
            for sigma2 in iter_transformations(f, w2j, iso_only=True):
                count += 1
                if count > guard:
                    raise GuardExceeded("reflection witnesses", guard)
                if not _compatible(j, q, phi, psi2, sigma2):
                    continue
                matches = 0
                for tau in isos:
                    ok_psi = all(B.comp(q.mor[tau[b]], psi[b]) == psi2[b] for b in B.objects)
                    ok_sigma = all(F.comp(tau[j.ob[a]], sigma[a]) == sigma2[a] for a in j.dom.objects)
                    matches += ok_psi and ok_sigma
                if matches != 1:
                    raise WitnessFailure("reflection is not unique up to unique isomorphism")
    return count
