"""Comma categories, pseudopullbacks, cores, opposites, products, slices and
the Grothendieck construction for pseudofunctors into groupoids.

Constructed objects and morphisms are named by canonical encodings of the
tuples they stand for, e.g. ``(a|beta|b)`` for an object of a comma category,
so repeated construction gives identical categories.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import WitnessFailure
from .fincat import (
    DEFAULT_GUARD,
    FinCat,
    FinFunctor,
    FunctorCategory,
    NatTransform,
    Violation,
    compose_functors,
    full_subcategory,
    functor_category,
    identity_functor,
    identity_name,
    is_equivalence,
    iter_functors,
    iter_transformations,
    point,
    validate_functor,
    validate_nat,
    whisker_right,
)


def _tabulate(objects, identity, morphisms, keys, compose_key, name=""):
    """Build a FinCat whose composition is computed on structured keys."""
    by_key = {}
    for n, k in keys.items():
        if k in by_key:
            raise ValueError(f"name collision for {k!r}")
        by_key[k] = n
    out_of = {}
    for m, (s, _) in morphisms.items():
        out_of.setdefault(s, []).append(m)
    table = {}
    for f, (_, b) in morphisms.items():
        kf = keys[f]
        for g in out_of.get(b, ()):
            table[(g, f)] = by_key[compose_key(keys[g], kf)]
    return FinCat(tuple(objects), morphisms, identity, table, name)


@dataclass(frozen=True, eq=False)
class CommaCone:
    """The comma square ``s: apex -> A``, ``t: apex -> B``, ``cell: f s => g t``."""

    apex: FinCat
    left_leg: FinFunctor
    right_leg: FinFunctor
    cell: NatTransform
    left: FinFunctor
    right: FinFunctor
    iso: bool = False

    def object_name(self, a: str, beta: str, b: str) -> str:
        return f"({a}|{beta}|{b})"

    def morphism_name(self, u: str, v: str, beta: str, beta2: str) -> str:
        A, B = self.left.dom, self.right.dom
        if beta == beta2 and A.is_identity(u) and B.is_identity(v):
            return identity_name(self.object_name(A.src(u), beta, B.src(v)))
        return f"({u}|{v}:{beta}>{beta2})"

    def mediate(self, s: FinFunctor, t: FinFunctor, lam: NatTransform) -> FinFunctor | None:
        """The unique functor into the apex induced by a competing cone, if it exists."""
        K = s.dom
        ob, mor = {}, {}
        for k in K.objects:
            name = self.object_name(s.ob[k], lam[k], t.ob[k])
            if name not in self.apex.identity:
                return None
            ob[k] = name
        for m, (x, y) in K.morphisms.items():
            name = self.morphism_name(s.mor[m], t.mor[m], lam[x], lam[y])
            if name not in self.apex.morphisms:
                return None
            mor[m] = name
        return FinFunctor(K, self.apex, ob, mor)


def comma(f: FinFunctor, g: FinFunctor) -> CommaCone:
    """The comma category ``f/g`` with projections and its canonical 2-cell."""
    if f.cod != g.cod:
        raise ValueError("comma needs a cospan")
    A, B, C = f.dom, g.dom, f.cod
    shell = CommaCone(None, None, None, None, f, g)
    objs, okey = [], {}
    for a in A.objects:
        for b in B.objects:
            for beta in C.hom(f.ob[a], g.ob[b]):
                n = shell.object_name(a, beta, b)
                objs.append(n)
                okey[n] = (a, beta, b)
    morphisms, keys, identity = {}, {}, {}
    for n1 in objs:
        a, beta, b = okey[n1]
        for n2 in objs:
            a2, beta2, b2 = okey[n2]
            for u in A.hom(a, a2):
                fu = f.mor[u]
                for v in B.hom(b, b2):
                    if C.comp(g.mor[v], beta) != C.comp(beta2, fu):
                        continue
                    m = shell.morphism_name(u, v, beta, beta2)
                    morphisms[m] = (n1, n2)
                    keys[m] = (u, v, beta, beta2)
                    if n1 == n2 and m == identity_name(n1):
                        identity[n1] = m

    def compose_key(kg, kf):
        return (A.comp(kg[0], kf[0]), B.comp(kg[1], kf[1]), kf[2], kg[3])

    apex = _tabulate(objs, identity, morphisms, keys, compose_key, f"{f.name or 'f'}/{g.name or 'g'}")
    s = FinFunctor(apex, A, {n: okey[n][0] for n in objs}, {m: k[0] for m, k in keys.items()}, "s")
    t = FinFunctor(apex, B, {n: okey[n][2] for n in objs}, {m: k[1] for m, k in keys.items()}, "t")
    cell = NatTransform(compose_functors(f, s), compose_functors(g, t), {n: okey[n][1] for n in objs})
    return CommaCone(apex, s, t, cell, f, g)


def restrict_cone(cone: CommaCone, objects: Iterable[str], iso: bool = False) -> CommaCone:
    S, incl = full_subcategory(cone.apex, objects, cone.apex.name)
    s = compose_functors(cone.left_leg, incl)
    t = compose_functors(cone.right_leg, incl)
    cell = NatTransform(
        compose_functors(cone.left, s),
        compose_functors(cone.right, t),
        {x: cone.cell[x] for x in S.objects},
    )
    return CommaCone(S, s, t, cell, cone.left, cone.right, iso)


def pseudopullback(f: FinFunctor, g: FinFunctor) -> CommaCone:
    """Full subcategory of ``f/g`` on objects whose comparison is invertible."""
    cone = comma(f, g)
    C = f.cod
    keep = [x for x in cone.apex.objects if C.is_iso(cone.cell[x])]
    return restrict_cone(cone, keep, iso=True)


def arrow_category(E: FinCat) -> CommaCone:
    """``E^2``; ``left_leg`` is dom and ``right_leg`` is cod."""
    idE = identity_functor(E)
    return comma(idE, idE)


def arrow_functor(p: FinFunctor, dom_arrows: CommaCone | None = None, cod_arrows: CommaCone | None = None) -> FinFunctor:
    """``p^2 : E^2 -> B^2``."""
    EE = dom_arrows or arrow_category(p.dom)
    BB = cod_arrows or arrow_category(p.cod)
    E = p.dom
    ob, mor = {}, {}
    for n in EE.apex.objects:
        chi = EE.cell[n]
        ob[n] = BB.object_name(p.ob[E.src(chi)], p.mor[chi], p.ob[E.tgt(chi)])
    for m, (n1, n2) in EE.apex.morphisms.items():
        u, v = EE.left_leg.mor[m], EE.right_leg.mor[m]
        mor[m] = BB.morphism_name(p.mor[u], p.mor[v], p.mor[EE.cell[n1]], p.mor[EE.cell[n2]])
    return FinFunctor(EE.apex, BB.apex, ob, mor, "p^2")


def core(A: FinCat) -> tuple:
    """The wide subgroupoid of invertible morphisms, with its inclusion."""
    mors = {m: st for m, st in A.morphisms.items() if A.is_iso(m)}
    table = {k: h for k, h in A.compose.items() if k[0] in mors and k[1] in mors}
    U = FinCat(A.objects, mors, dict(A.identity), table, f"core({A.name})" if A.name else "")
    incl = FinFunctor(U, A, {x: x for x in A.objects}, {m: m for m in mors}, "incl")
    return U, incl


def core_functor(p: FinFunctor, dom_core: FinCat | None = None, cod_core: FinCat | None = None) -> FinFunctor:
    UE = dom_core or core(p.dom)[0]
    UB = cod_core or core(p.cod)[0]
    return FinFunctor(UE, UB, dict(p.ob), {m: p.mor[m] for m in UE.morphisms}, "core")


def opposite(A: FinCat) -> FinCat:
    return FinCat(
        A.objects,
        {m: (t, s) for m, (s, t) in A.morphisms.items()},
        dict(A.identity),
        {(f, g): h for (g, f), h in A.compose.items()},
        f"{A.name}^op" if A.name else "",
    )


def opposite_functor(F: FinFunctor) -> FinFunctor:
    return FinFunctor(opposite(F.dom), opposite(F.cod), dict(F.ob), dict(F.mor), F.name)


def product(A: FinCat, B: FinCat) -> tuple:
    """``A x B`` with its two projections."""
    objs = [f"({a}|{b})" for a in A.objects for b in B.objects]
    morphisms, keys = {}, {}
    for u, (a, a2) in A.morphisms.items():
        for v, (b, b2) in B.morphisms.items():
            if A.is_identity(u) and B.is_identity(v):
                m = identity_name(f"({a}|{b})")
            else:
                m = f"({u}|{v})"
            morphisms[m] = (f"({a}|{b})", f"({a2}|{b2})")
            keys[m] = (u, v)
    identity = {f"({a}|{b})": identity_name(f"({a}|{b})") for a in A.objects for b in B.objects}
    P = _tabulate(
        objs, identity, morphisms, keys,
        lambda kg, kf: (A.comp(kg[0], kf[0]), B.comp(kg[1], kf[1])),
        f"{A.name}x{B.name}",
    )
    pa = FinFunctor(P, A, {f"({a}|{b})": a for a in A.objects for b in B.objects}, {m: k[0] for m, k in keys.items()}, "pr1")
    pb = FinFunctor(P, B, {f"({a}|{b})": b for a in A.objects for b in B.objects}, {m: k[1] for m, k in keys.items()}, "pr2")
    return P, pa, pb


def slice_under(b: str, j: FinFunctor) -> CommaCone:
    """``b/j``: objects are arrows ``b -> j a``."""
    return comma(point(j.cod, b), j)


def slice_over(j: FinFunctor, b: str) -> CommaCone:
    """``j/b``: objects are arrows ``j a -> b``."""
    return comma(j, point(j.cod, b))


def canonical_r(p: FinFunctor) -> FinFunctor:
    """``r : E^2 -> B/p`` sending ``chi: e' -> e`` to ``(p e', p chi, e)``."""
    E, B = p.dom, p.cod
    EE = arrow_category(E)
    Bp = comma(identity_functor(B), p)
    ob, mor = {}, {}
    for n in EE.apex.objects:
        chi = EE.cell[n]
        ob[n] = Bp.object_name(p.ob[E.src(chi)], p.mor[chi], E.tgt(chi))
    for m, (n1, n2) in EE.apex.morphisms.items():
        u, v = EE.left_leg.mor[m], EE.right_leg.mor[m]
        mor[m] = Bp.morphism_name(p.mor[u], v, p.mor[EE.cell[n1]], p.mor[EE.cell[n2]])
    return FinFunctor(EE.apex, Bp.apex, ob, mor, "r")


def check_cone_universal(cone: CommaCone, probes: Iterable[FinCat], guard: int = DEFAULT_GUARD) -> bool:
    """Every competing cone from each probe factors through the apex.

    The mediating functor is forced on objects and morphisms, so uniqueness
    is automatic; existence is what gets checked.
    """
    f, g = cone.left, cone.right
    seen = 0
    for K in probes:
        for s in iter_functors(K, f.dom):
            fs = compose_functors(f, s)
            for t in iter_functors(K, g.dom):
                gt = compose_functors(g, t)
                for lam in iter_transformations(fs, gt, iso_only=cone.iso):
                    seen += 1
                    if seen > guard:
                        from .errors import GuardExceeded

                        raise GuardExceeded("competing cones", guard)
                    m = cone.mediate(s, t, lam)
                    if m is None or validate_functor(m):
                        return False
    return True


# -- functors between functor categories ------------------------------------


def postcompose(F: FinFunctor, KA: FunctorCategory, KC: FunctorCategory) -> FinFunctor:
    """``[K, F] : [K, A] -> [K, C]``."""
    from .fincat import whisker_left

    ob = {n: KC.name_of_functor(compose_functors(F, G)) for n, G in KA.functors.items()}
    mor = {m: KC.name_of_transformation(whisker_left(F, a)) for m, a in KA.transformations.items()}
    return FinFunctor(KA, KC, ob, mor)


def precompose(e: FinFunctor, YA: FunctorCategory, XA: FunctorCategory) -> FinFunctor:
    """``[e, A] : [Y, A] -> [X, A]``."""
    ob = {n: XA.name_of_functor(compose_functors(G, e)) for n, G in YA.functors.items()}
    mor = {m: XA.name_of_transformation(whisker_right(a, e)) for m, a in YA.transformations.items()}
    return FinFunctor(YA, XA, ob, mor)


def is_bipullback(p: FinFunctor, q: FinFunctor, sigma: NatTransform, f: FinFunctor, g: FinFunctor,
                  probes: Iterable[FinCat], guard: int = DEFAULT_GUARD) -> bool:
    """Check the square ``sigma: f p => g q`` against each probe ``K``.

    For every probe the comparison ``[K, W] -> [K, f] /ps [K, g]`` must be an
    equivalence.
    """
    W, A, B, C = p.dom, f.dom, g.dom, f.cod
    for K in probes:
        KW, KA, KB, KC = (functor_category(K, X, guard) for X in (W, A, B, C))
        P = pseudopullback(postcompose(f, KA, KC), postcompose(g, KB, KC))
        comp = comparison_functor(KW, P, p, q, sigma, KA, KB, KC)
        if not is_equivalence(comp):
            return False
    return True


def comparison_functor(KW, P, p, q, sigma, KA, KB, KC) -> FinFunctor:
    """``w |-> (p w, sigma w, q w)`` into the pseudopullback of hom-categories."""
    from .fincat import whisker_left

    ob, mor = {}, {}
    for n, w in KW.functors.items():
        sw = KC.name_of_transformation(whisker_right(sigma, w))
        ob[n] = P.object_name(KA.name_of_functor(compose_functors(p, w)), sw, KB.name_of_functor(compose_functors(q, w)))
    for m, a in KW.transformations.items():
        src, tgt = KW.morphisms[m]
        u = KA.name_of_transformation(whisker_left(p, a))
        v = KB.name_of_transformation(whisker_left(q, a))
        b1 = KC.name_of_transformation(whisker_right(sigma, KW.functors[src]))
        b2 = KC.name_of_transformation(whisker_right(sigma, KW.functors[tgt]))
        mor[m] = P.morphism_name(u, v, b1, b2)
    return FinFunctor(KW, P.apex, ob, mor, "comparison")


# -- pseudofunctors into groupoids ------------------------------------------


@dataclass(frozen=True, eq=False)
class PseudofunctorData:
    """A pseudofunctor ``base^op -> Gpd``.

    ``action[beta]`` for ``beta: b -> b'`` is a functor ``value[b'] -> value[b]``.
    ``composite[(beta2, beta)]`` is an invertible transformation
    ``T beta . T beta2 => T(beta2 . beta)`` and ``unit[b]`` is
    ``1 => T(id_b)``.  Missing coherence cells default to identities.
    """

    base: FinCat
    value: Mapping[str, FinCat]
    action: Mapping[str, FinFunctor]
    composite: Mapping[tuple, NatTransform] = field(default_factory=dict)
    unit: Mapping[str, NatTransform] = field(default_factory=dict)

    def comp_cell(self, beta2: str, beta: str) -> Mapping[str, str]:
        """Components of ``T beta . T beta2 => T(beta2 . beta)``."""
        cell = self.composite.get((beta2, beta))
        if cell is not None:
            return cell.components
        Tb = self.value[self.base.src(beta)]
        T12 = self.action[self.base.comp(beta2, beta)]
        return {x: Tb.identity[T12.ob[x]] for x in self.value[self.base.tgt(beta2)].objects}

    def unit_cell(self, b: str) -> Mapping[str, str]:
        cell = self.unit.get(b)
        if cell is not None:
            return cell.components
        Tb = self.value[b]
        return {x: Tb.identity[x] for x in Tb.objects}


def validate_pseudofunctor(T: PseudofunctorData) -> list:
    B = T.base
    out = []
    for b in B.objects:
        V = T.value.get(b)
        if V is None:
            out.append(Violation("value-missing", (b,)))
        elif not V.is_groupoid:
            out.append(Violation("value-not-groupoid", (b,)))
    if out:
        return out
    for beta, (b, b2) in B.morphisms.items():
        F = T.action.get(beta)
        if F is None or F.dom != T.value[b2] or F.cod != T.value[b]:
            out.append(Violation("action", (beta,)))
        elif validate_functor(F):
            out.append(Violation("action-functor", (beta,)))
    if out:
        return out
    for b in B.objects:
        Tb = T.value[b]
        Tid = T.action[B.identity[b]]
        u = T.unit_cell(b)
        for x in Tb.objects:
            c = u.get(x)
            if c not in Tb.morphisms or Tb.morphisms[c] != (x, Tid.ob[x]) or not Tb.is_iso(c):
                out.append(Violation("unit-component", (b, x)))
        if b in T.unit and validate_nat(T.unit[b]):
            out.append(Violation("unit-naturality", (b,)))
    for (beta2, beta), h in B.compose.items():
        b, b1, b2 = B.src(beta), B.tgt(beta), B.tgt(beta2)
        Tb = T.value[b]
        F1, F2, F12 = T.action[beta], T.action[beta2], T.action[h]
        c = T.comp_cell(beta2, beta)
        for x in T.value[b2].objects:
            comp = c.get(x)
            if comp not in Tb.morphisms or Tb.morphisms[comp] != (F1.ob[F2.ob[x]], F12.ob[x]) or not Tb.is_iso(comp):
                out.append(Violation("composite-component", (beta2, beta, x)))
        if (beta2, beta) in T.composite and validate_nat(T.composite[(beta2, beta)]):
            out.append(Violation("composite-naturality", (beta2, beta)))
        elif (beta2, beta) not in T.composite:
            for m in T.value[b2].morphisms:
                if F1.mor[F2.mor[m]] != F12.mor[m]:
                    out.append(Violation("strict-composite", (beta2, beta, m)))
                    break
    if out:
        return out
    # cocycle and unit coherence
    for (beta2, beta), h in B.compose.items():
        for beta3 in B.morphisms:
            if B.src(beta3) != B.tgt(beta2):
                continue
            b = B.src(beta)
            Tb = T.value[b]
            F1 = T.action[beta]
            c32 = T.comp_cell(beta3, beta2)
            c3_21 = T.comp_cell(beta3, h)
            c21 = T.comp_cell(beta2, beta)
            c32_1 = T.comp_cell(B.comp(beta3, beta2), beta)
            F3 = T.action[beta3]
            for x in T.value[B.tgt(beta3)].objects:
                lhs = Tb.comp(c3_21[x], c21[F3.ob[x]])
                rhs = Tb.comp(c32_1[x], F1.mor[c32[x]])
                if lhs != rhs:
                    out.append(Violation("cocycle", (beta3, beta2, beta, x)))
    for beta, (b, b2) in B.morphisms.items():
        Tb = T.value[b]
        F = T.action[beta]
        left = T.comp_cell(B.identity[b2], beta)
        right = T.comp_cell(beta, B.identity[b])
        ub2, ub = T.unit_cell(b2), T.unit_cell(b)
        for x in T.value[b2].objects:
            if Tb.comp(left[x], F.mor[ub2[x]]) != Tb.identity[F.ob[x]]:
                out.append(Violation("unit-coherence", (beta, x)))
            if Tb.comp(right[x], ub[F.ob[x]]) != Tb.identity[F.ob[x]]:
                out.append(Violation("unit-coherence", (beta, x)))
    return out


def groth(T: PseudofunctorData, verify: bool = True) -> FinFunctor:
    """Grothendieck construction ``p : E -> base`` of a pseudofunctor into groupoids.

    Objects of ``E`` are ``(b|x)`` with ``x`` in ``T b``; a morphism
    ``(b|x) -> (b'|x')`` is a pair ``(beta, xi)`` with ``xi: x -> T(beta)(x')``.
    With ``verify`` the result is checked to be a groupoid fibration whose
    pseudofibres are equivalent to the values of ``T``.
    """
    B = T.base
    objs, okey = [], {}
    for b in B.objects:
        for x in T.value[b].objects:
            n = f"({b}|{x})"
            objs.append(n)
            okey[n] = (b, x)
    identity = {}
    for b in B.objects:
        u = T.unit_cell(b)
        for x in T.value[b].objects:
            identity[f"({b}|{x})"] = (B.identity[b], u[x], x)
    id_keys = {k: n for n, k in identity.items()}
    morphisms, keys = {}, {}
    for beta, (b, b2) in B.morphisms.items():
        Tb, Tbeta = T.value[b], T.action[beta]
        for x2 in T.value[b2].objects:
            for x in Tb.objects:
                for xi in Tb.hom(x, Tbeta.ob[x2]):
                    k = (beta, xi, x2)
                    m = identity_name(id_keys[k]) if k in id_keys else f"({beta}|{xi}>{x2})"
                    morphisms[m] = (f"({b}|{x})", f"({b2}|{x2})")
                    keys[m] = k

    def compose_key(kg, kf):
        beta2, xi2, x3 = kg
        beta, xi, _ = kf
        Tb = T.value[B.src(beta)]
        c = T.comp_cell(beta2, beta)
        return (B.comp(beta2, beta), Tb.comp_path(c[x3], T.action[beta].mor[xi2], xi), x3)

    E = _tabulate(objs, {n: identity_name(n) for n in objs}, morphisms, keys, compose_key, "groth")
    p = FinFunctor(E, B, {n: okey[n][0] for n in objs}, {m: k[0] for m, k in keys.items()}, "p")
    if verify:
        from .fib import is_groupoid_fibration, pseudofibre
        from .gpd import groupoid_equiv

        if not is_groupoid_fibration(p).verdict:
            raise WitnessFailure("Grothendieck construction is not a groupoid fibration")
        for b in B.objects:
            if not groupoid_equiv(pseudofibre(p, b), T.value[b]):
                raise WitnessFailure(f"pseudofibre over {b} differs from its value")
    return p
