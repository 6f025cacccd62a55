"""Finite categories, functors, natural transformations and adjunctions.

Everything here is an immutable value.  Objects and morphisms are opaque
strings; every enumeration runs in lexicographic order of those strings so
that results are reproducible.  Identities are stored explicitly and named
``id_<object>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import GuardExceeded

DEFAULT_GUARD = 20_000


def identity_name(x: str) -> str:
    return f"id_{x}"


@dataclass(frozen=True)
class Violation:
    law: str
    witnesses: tuple
    detail: str = ""

    def __str__(self):
        w = ", ".join(map(str, self.witnesses))
        return f"{self.law}({w}){': ' + self.detail if self.detail else ''}"


@dataclass(frozen=True, eq=False)
class FinCat:
    """A finite category given by explicit tables.

    ``compose[(g, f)]`` is ``g . f`` (apply ``f`` first).  The table may be
    partial or wrong on a candidate; :func:`validate_category` reports that.
    """

    objects: tuple
    morphisms: Mapping[str, tuple]
    identity: Mapping[str, str]
    compose: Mapping[tuple, str]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(sorted(self.objects)))
        object.__setattr__(
            self, "morphisms", MappingProxyType(dict(sorted(self.morphisms.items())))
        )
        object.__setattr__(self, "identity", MappingProxyType(dict(self.identity)))
        object.__setattr__(self, "compose", MappingProxyType(dict(self.compose)))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.identity == other.identity
            and self.compose == other.compose
        )

    def __hash__(self):
        return hash((self.objects, tuple(self.morphisms.items())))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FinCat{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def src(self, m: str) -> str:
        return self.morphisms[m][0]

    def tgt(self, m: str) -> str:
        return self.morphisms[m][1]

    def comp(self, g: str, f: str) -> str:
        """``g . f``."""
        return self.compose[(g, f)]

    def comp_path(self, *ms: str) -> str:
        """Compose right to left: ``comp_path(h, g, f) == h . g . f``."""
        result = ms[-1]
        for m in reversed(ms[:-1]):
            result = self.compose[(m, result)]
        return result

    @cached_property
    def _homs(self):
        homs = {}
        for m, (x, y) in self.morphisms.items():
            homs.setdefault((x, y), []).append(m)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, x: str, y: str) -> tuple:
        return self._homs.get((x, y), ())

    @cached_property
    def identities(self) -> frozenset:
        return frozenset(self.identity.values())

    def is_identity(self, m: str) -> bool:
        return m in self.identities

    @cached_property
    def non_identity(self) -> tuple:
        return tuple(m for m in self.morphisms if m not in self.identities)

    @cached_property
    def inverses(self) -> Mapping[str, str]:
        inv = {}
        for m, (x, y) in self.morphisms.items():
            for n in self.hom(y, x):
                if (
                    self.compose.get((n, m)) == self.identity.get(x)
                    and self.compose.get((m, n)) == self.identity.get(y)
                ):
                    inv[m] = n
                    break
        return MappingProxyType(inv)

    def is_iso(self, m: str) -> bool:
        return m in self.inverses

    def inverse(self, m: str) -> str:
        return self.inverses[m]

    @property
    def is_groupoid(self) -> bool:
        return len(self.inverses) == len(self.morphisms)

    def isomorphic_objects(self, x: str, y: str) -> bool:
        return any(self.is_iso(m) for m in self.hom(x, y))


def category(objects: Iterable[str], arrows: Iterable = (), compose: Iterable = (), name: str = "") -> FinCat:
    """Build a category from non-identity data.

    ``arrows`` are ``(name, src, tgt)`` triples and ``compose`` are
    ``(g, f, g.f)`` triples over composable non-identity pairs.  Identities
    ``id_<x>`` and their composition rows are added automatically.
    """
    objects = list(objects)
    morphisms = {identity_name(x): (x, x) for x in objects}
    identity = {x: identity_name(x) for x in objects}
    for m, s, t in arrows:
        morphisms[m] = (s, t)
    table = {}
    for m, (s, t) in morphisms.items():
        table[(identity[t], m)] = m
        table[(m, identity[s])] = m
    for g, f, h in compose:
        table[(g, f)] = h
    return FinCat(tuple(objects), morphisms, identity, table, name)


def validate_category(C: FinCat) -> list:
    """Return the list of category-law violations (empty when valid)."""
    out = []
    objs = set(C.objects)
    for m, (s, t) in C.morphisms.items():
        if s not in objs or t not in objs:
            out.append(Violation("endpoint", (m,), f"{s}->{t} not among objects"))
    for x in C.objects:
        i = C.identity.get(x)
        if i is None or i not in C.morphisms:
            out.append(Violation("identity-missing", (x,)))
        elif C.morphisms[i] != (x, x):
            out.append(Violation("identity-type", (x, i)))
    if out:
        return out
    ids = C.identities
    for f, (a, b) in C.morphisms.items():
        for g in C.morphisms:
            if C.src(g) != b:
                continue
            h = C.compose.get((g, f))
            if g in ids or f in ids:
                expect = f if g in ids else g
                if h != expect:
                    out.append(Violation("unit", (g, f), f"got {h}, expected {expect}"))
                continue
            if h is None or h not in C.morphisms:
                out.append(Violation("composite-missing", (g, f)))
            elif C.morphisms[h] != (a, C.tgt(g)):
                out.append(Violation("composite-type", (g, f), f"{h} has type {C.morphisms[h]}"))
    for key in C.compose:
        g, f = key
        if g not in C.morphisms or f not in C.morphisms or C.src(g) != C.tgt(f):
            out.append(Violation("composite-spurious", key))
    if out:
        return out
    # associativity over non-identity triples; identities are covered by the unit law
    for f in C.non_identity:
        for g in C.non_identity:
            if C.src(g) != C.tgt(f):
                continue
            gf = C.compose[(g, f)]
            for h in C.non_identity:
                if C.src(h) != C.tgt(g):
                    continue
                if C.compose[(h, gf)] != C.compose[(C.compose[(h, g)], f)]:
                    out.append(Violation("associativity", (h, g, f)))
    return out


@dataclass(frozen=True, eq=False)
class FinFunctor:
    dom: FinCat
    cod: FinCat
    ob: Mapping[str, str]
    mor: Mapping[str, str]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "ob", MappingProxyType(dict(self.ob)))
        object.__setattr__(self, "mor", MappingProxyType(dict(self.mor)))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.ob == other.ob
            and self.mor == other.mor
            and self.dom == other.dom
            and self.cod == other.cod
        )

    def __hash__(self):
        return hash((tuple(self.ob.items()), tuple(self.mor.items())))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FinFunctor{label}: {self.dom!r} -> {self.cod!r}>"

    @cached_property
    def key(self) -> tuple:
        return (
            tuple(self.ob[x] for x in self.dom.objects),
            tuple(self.mor[m] for m in self.dom.morphisms),
        )


def functor(dom: FinCat, cod: FinCat, ob: Mapping, mor: Mapping | None = None, name: str = "") -> FinFunctor:
    """Build a functor; identities map to identities unless given explicitly."""
    full = {dom.identity[x]: cod.identity[ob[x]] for x in dom.objects if ob.get(x) in cod.identity}
    full.update(mor or {})
    return FinFunctor(dom, cod, ob, full, name)


def validate_functor(F: FinFunctor) -> list:
    out = []
    A, X = F.dom, F.cod
    for x in A.objects:
        if F.ob.get(x) not in X.identity:
            out.append(Violation("object-map", (x,), f"image {F.ob.get(x)!r} is not an object"))
    for m in A.morphisms:
        if F.mor.get(m) not in X.morphisms:
            out.append(Violation("morphism-map", (m,), f"image {F.mor.get(m)!r} is not a morphism"))
    if out:
        return out
    for m, (s, t) in A.morphisms.items():
        if X.morphisms[F.mor[m]] != (F.ob[s], F.ob[t]):
            out.append(
                Violation(
                    "src/tgt",
                    (m, F.mor[m]),
                    f"{X.morphisms[F.mor[m]]} != {(F.ob[s], F.ob[t])}",
                )
            )
    for x in A.objects:
        if F.mor[A.identity[x]] != X.identity[F.ob[x]]:
            out.append(Violation("identity", (x,)))
    if out:
        return out
    for (g, f), h in A.compose.items():
        if X.compose.get((F.mor[g], F.mor[f])) != F.mor[h]:
            out.append(Violation("composition", (g, f)))
    return out


def identity_functor(C: FinCat) -> FinFunctor:
    return FinFunctor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms}, "id")


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    """``G . F``."""
    if F.cod != G.dom:
        raise ValueError("functors are not composable")
    return FinFunctor(
        F.dom,
        G.cod,
        {x: G.ob[y] for x, y in F.ob.items()},
        {m: G.mor[n] for m, n in F.mor.items()},
    )


def constant_functor(A: FinCat, X: FinCat, x: str) -> FinFunctor:
    return FinFunctor(A, X, {a: x for a in A.objects}, {m: X.identity[x] for m in A.morphisms})


ONE = category(["*"], name="1")
ZERO = category([], name="0")


def point(C: FinCat, x: str) -> FinFunctor:
    """The functor ``1 -> C`` picking ``x``."""
    return constant_functor(ONE, C, x)


def to_terminal(C: FinCat) -> FinFunctor:
    return constant_functor(C, ONE, "*")


def full_subcategory(C: FinCat, objects: Iterable[str], name: str = "") -> tuple:
    """Full subcategory on ``objects`` together with its inclusion functor."""
    keep = set(objects)
    mors = {m: st for m, st in C.morphisms.items() if st[0] in keep and st[1] in keep}
    table = {k: h for k, h in C.compose.items() if k[0] in mors and k[1] in mors}
    S = FinCat(tuple(keep), mors, {x: C.identity[x] for x in keep}, table, name)
    incl = FinFunctor(S, C, {x: x for x in S.objects}, {m: m for m in S.morphisms}, "incl")
    return S, incl


def connected_components(C: FinCat) -> list:
    """Zigzag components, each a sorted tuple of objects, ordered by least member."""
    parent = {x: x for x in C.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in C.morphisms.values():
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[max(rs, rt)] = min(rs, rt)
    comps = {}
    for x in C.objects:
        comps.setdefault(find(x), []).append(x)
    return sorted(tuple(sorted(v)) for v in comps.values())


# -- natural transformations ------------------------------------------------


@dataclass(frozen=True, eq=False)
class NatTransform:
    dom: FinFunctor
    cod: FinFunctor
    components: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "components", MappingProxyType(dict(self.components)))

    def __eq__(self, other):
        if not isinstance(other, NatTransform):
            return NotImplemented
        return (
            self.components == other.components
            and self.dom == other.dom
            and self.cod == other.cod
        )

    def __hash__(self):
        return hash(tuple(self.components.items()))

    def __getitem__(self, x):
        return self.components[x]

    @property
    def category(self) -> FinCat:
        return self.dom.cod

    @property
    def is_iso(self) -> bool:
        X = self.category
        return all(X.is_iso(c) for c in self.components.values())


def validate_nat(alpha: NatTransform) -> list:
    F, G = alpha.dom, alpha.cod
    A, X = F.dom, F.cod
    out = []
    if G.dom != A or G.cod != X:
        return [Violation("parallel", ())]
    for x in A.objects:
        c = alpha.components.get(x)
        if c not in X.morphisms or X.morphisms[c] != (F.ob[x], G.ob[x]):
            out.append(Violation("component", (x, c)))
    if out:
        return out
    for m, (x, y) in A.morphisms.items():
        if X.comp(G.mor[m], alpha[x]) != X.comp(alpha[y], F.mor[m]):
            out.append(Violation("naturality", (m,)))
    return out


def identity_nat(F: FinFunctor) -> NatTransform:
    X = F.cod
    return NatTransform(F, F, {x: X.identity[F.ob[x]] for x in F.dom.objects})


def vcomp(beta: NatTransform, alpha: NatTransform) -> NatTransform:
    """Vertical composite ``beta . alpha``."""
    X = alpha.category
    return NatTransform(
        alpha.dom, beta.cod, {x: X.comp(beta[x], alpha[x]) for x in alpha.dom.dom.objects}
    )


def inverse_nat(alpha: NatTransform) -> NatTransform:
    X = alpha.category
    return NatTransform(alpha.cod, alpha.dom, {x: X.inverse(c) for x, c in alpha.components.items()})


def whisker_right(alpha: NatTransform, H: FinFunctor) -> NatTransform:
    """``alpha H``: components ``alpha_{H y}``."""
    return NatTransform(
        compose_functors(alpha.dom, H),
        compose_functors(alpha.cod, H),
        {y: alpha[H.ob[y]] for y in H.dom.objects},
    )


def whisker_left(K: FinFunctor, alpha: NatTransform) -> NatTransform:
    """``K alpha``: components ``K(alpha_x)``."""
    return NatTransform(
        compose_functors(K, alpha.dom),
        compose_functors(K, alpha.cod),
        {x: K.mor[c] for x, c in alpha.components.items()},
    )


def iter_transformations(F: FinFunctor, G: FinFunctor, iso_only: bool = False) -> Iterator[NatTransform]:
    """All natural transformations ``F => G``.

    Components are tried identity first, then in name order, so the first
    transformation found is the most identity-like one.
    """
    A, X = F.dom, F.cod
    objs = A.objects
    pos = {x: i for i, x in enumerate(objs)}
    checks = [[] for _ in objs]
    for m in A.non_identity:
        x, y = A.morphisms[m]
        checks[max(pos[x], pos[y])].append((m, x, y))
    cands = []
    for x in objs:
        hom = X.hom(F.ob[x], G.ob[x])
        if iso_only:
            hom = tuple(c for c in hom if X.is_iso(c))
        hom = sorted(hom, key=lambda c: (not X.is_identity(c), c))
        if not hom:
            return
        cands.append(hom)
    comp = {}

    def rec(i):
        if i == len(objs):
            yield NatTransform(F, G, dict(comp))
            return
        x = objs[i]
        for c in cands[i]:
            comp[x] = c
            if all(
                X.compose[(G.mor[m], comp[a])] == X.compose[(comp[b], F.mor[m])]
                for m, a, b in checks[i]
            ):
                yield from rec(i + 1)
        del comp[x]

    yield from rec(0)


def nat_iso_exists(F: FinFunctor, G: FinFunctor) -> NatTransform | None:
    """Some invertible natural transformation ``F => G``, or ``None``."""
    return next(iter_transformations(F, G, iso_only=True), None)


# -- adjunctions and equivalences -------------------------------------------


@dataclass(frozen=True)
class Adjunction:
    """``left -| right`` with ``unit: 1 => right.left`` and ``counit: left.right => 1``."""

    left: FinFunctor
    right: FinFunctor
    unit: NatTransform
    counit: NatTransform


def triangle_violations(adj: Adjunction) -> list:
    L, R = adj.left, adj.right
    C, D = L.cod, L.dom  # L : D -> C, R : C -> D
    out = []
    for d in D.objects:
        # eps_{Ld} . L(eta_d) = 1_{Ld}
        if C.comp(adj.counit[L.ob[d]], L.mor[adj.unit[d]]) != C.identity[L.ob[d]]:
            out.append(Violation("triangle-left", (d,)))
    for c in C.objects:
        # R(eps_c) . eta_{Rc} = 1_{Rc}
        if D.comp(R.mor[adj.counit[c]], adj.unit[R.ob[c]]) != D.identity[R.ob[c]]:
            out.append(Violation("triangle-right", (c,)))
    return out


def compose_adjunctions(outer: Adjunction, inner: Adjunction) -> Adjunction:
    """Compose ``L1 -| R1`` (outer) with ``L2 -| R2`` (inner) into ``L1 L2 -| R2 R1``.

    ``inner.left`` lands in the domain of ``outer.left``.
    """
    L1, R1, L2, R2 = outer.left, outer.right, inner.left, inner.right
    L = compose_functors(L1, L2)
    R = compose_functors(R2, R1)
    # 1 => R2 L2 => R2 R1 L1 L2
    eta = vcomp(
        whisker_left(R2, whisker_right(outer.unit, L2)),
        inner.unit,
    )
    eta = NatTransform(identity_functor(L2.dom), compose_functors(R, L), eta.components)
    # L1 L2 R2 R1 => L1 R1 => 1
    eps = vcomp(outer.counit, whisker_left(L1, whisker_right(inner.counit, R1)))
    eps = NatTransform(compose_functors(L, R), identity_functor(L1.cod), eps.components)
    return Adjunction(L, R, eta, eps)


def is_fully_faithful(F: FinFunctor) -> bool:
    A, X = F.dom, F.cod
    for x in A.objects:
        for y in A.objects:
            hom = A.hom(x, y)
            images = {F.mor[m] for m in hom}
            if len(images) != len(hom) or len(hom) != len(X.hom(F.ob[x], F.ob[y])):
                return False
    return True


def is_essentially_surjective(F: FinFunctor) -> bool:
    X = F.cod
    image = set(F.ob.values())
    return all(any(X.isomorphic_objects(z, y) for z in image) for y in X.objects)


def is_equivalence(F: FinFunctor) -> bool:
    return is_fully_faithful(F) and is_essentially_surjective(F)


def pseudo_inverse(F: FinFunctor) -> tuple:
    """For an equivalence ``F: A -> X`` return ``(G, unit, counit)``.

    ``unit: 1_A => G F`` and ``counit: F G => 1_X`` are invertible.  ``G``
    prefers on-the-nose preimages.
    """
    if not is_equivalence(F):
        raise ValueError("functor is not an equivalence")
    A, X = F.dom, F.cod
    theta = {}
    G_ob = {}
    for y in X.objects:
        exact = [x for x in A.objects if F.ob[x] == y]
        if exact:
            G_ob[y], theta[y] = exact[0], X.identity[y]
            continue
        for x in A.objects:
            isos = [m for m in X.hom(F.ob[x], y) if X.is_iso(m)]
            if isos:
                G_ob[y], theta[y] = x, isos[0]
                break
    lift = {}
    for x in A.objects:
        for x2 in A.objects:
            for m in A.hom(x, x2):
                lift[(x, x2, F.mor[m])] = m

    def preimage(x, x2, n):
        return lift[(x, x2, n)]

    G_mor = {}
    for v, (y, y2) in X.morphisms.items():
        n = X.comp_path(X.inverse(theta[y2]), v, theta[y])
        G_mor[v] = preimage(G_ob[y], G_ob[y2], n)
    G = FinFunctor(X, A, G_ob, G_mor)
    counit = NatTransform(compose_functors(F, G), identity_functor(X), theta)
    unit = NatTransform(
        identity_functor(A),
        compose_functors(G, F),
        {x: preimage(x, G_ob[F.ob[x]], X.inverse(theta[F.ob[x]])) for x in A.objects},
    )
    return G, unit, counit


def _universal_arrows(j: FinFunctor, b: str, initial: bool):
    """Initial object of ``b/j`` (or terminal object of ``j/b``) as ``(a, beta)``."""
    A, B = j.dom, j.cod
    objs = []
    for a in A.objects:
        hom = B.hom(b, j.ob[a]) if initial else B.hom(j.ob[a], b)
        objs.extend((a, beta) for beta in hom)
    for a0, beta0 in objs:
        ok = True
        for a, beta in objs:
            if initial:
                hits = [u for u in A.hom(a0, a) if B.comp(j.mor[u], beta0) == beta]
            else:
                hits = [u for u in A.hom(a, a0) if B.comp(beta0, j.mor[u]) == beta]
            if len(hits) != 1:
                ok = False
                break
        if ok:
            return a0, beta0
    return None


def compute_left_adjoint(j: FinFunctor) -> Adjunction | None:
    """Left adjoint of ``j`` from initial objects of the commas ``b/j``."""
    A, B = j.dom, j.cod
    univ = {}
    for b in B.objects:
        u = _universal_arrows(j, b, initial=True)
        if u is None:
            return None
        univ[b] = u
    k_ob = {b: univ[b][0] for b in B.objects}
    eta = {b: univ[b][1] for b in B.objects}

    def factor(b, a, beta):
        # unique u: k b -> a with j(u) . eta_b = beta
        return next(u for u in A.hom(k_ob[b], a) if B.comp(j.mor[u], eta[b]) == beta)

    k_mor = {v: factor(b, k_ob[b2], B.comp(eta[b2], v)) for v, (b, b2) in B.morphisms.items()}
    k = FinFunctor(B, A, k_ob, k_mor)
    unit = NatTransform(identity_functor(B), compose_functors(j, k), eta)
    counit = NatTransform(
        compose_functors(k, j),
        identity_functor(A),
        {a: factor(j.ob[a], a, B.identity[j.ob[a]]) for a in A.objects},
    )
    adj = Adjunction(k, j, unit, counit)
    assert not triangle_violations(adj)
    return adj


def compute_right_adjoint(n: FinFunctor) -> Adjunction | None:
    """Right adjoint of ``n`` from terminal objects of the commas ``n/z``."""
    Y, Z = n.dom, n.cod
    univ = {}
    for z in Z.objects:
        u = _universal_arrows(n, z, initial=False)
        if u is None:
            return None
        univ[z] = u
    r_ob = {z: univ[z][0] for z in Z.objects}
    eps = {z: univ[z][1] for z in Z.objects}

    def factor(z, y, beta):
        # unique u: y -> r z with eps_z . n(u) = beta
        return next(u for u in Y.hom(y, r_ob[z]) if Z.comp(eps[z], n.mor[u]) == beta)

    r_mor = {v: factor(z2, r_ob[z], Z.comp(v, eps[z])) for v, (z, z2) in Z.morphisms.items()}
    r = FinFunctor(Z, Y, r_ob, r_mor)
    counit = NatTransform(compose_functors(n, r), identity_functor(Z), eps)
    unit = NatTransform(
        identity_functor(Y),
        compose_functors(r, n),
        {y: factor(n.ob[y], y, Z.identity[n.ob[y]]) for y in Y.objects},
    )
    adj = Adjunction(n, r, unit, counit)
    assert not triangle_violations(adj)
    return adj


# -- functor categories -----------------------------------------------------


def iter_functors(A: FinCat, X: FinCat, predicate=None) -> Iterator[FinFunctor]:
    """All functors ``A -> X``; ``predicate(m, image)`` may veto morphism images."""
    objs = A.objects
    arrows = A.non_identity
    idx = {m: i for i, m in enumerate(arrows)}
    checks = [[] for _ in arrows]
    for (g, f), h in A.compose.items():
        if g in idx and f in idx:
            k = max(idx[g], idx[f], idx.get(h, -1))
            checks[k].append((g, f, h))
    for images in product(X.objects, repeat=len(objs)):
        ob = dict(zip(objs, images))
        cands = []
        for m in arrows:
            hom = X.hom(ob[A.src(m)], ob[A.tgt(m)])
            if predicate is not None:
                hom = tuple(c for c in hom if predicate(m, c))
            if not hom:
                break
            cands.append(hom)
        else:
            mor = {A.identity[x]: X.identity[ob[x]] for x in objs}

            def rec(i):
                if i == len(arrows):
                    yield FinFunctor(A, X, ob, dict(mor))
                    return
                m = arrows[i]
                for c in cands[i]:
                    mor[m] = c
                    if all(X.compose.get((mor[g], mor[f])) == mor[h] for g, f, h in checks[i]):
                        yield from rec(i + 1)
                del mor[m]

            yield from rec(0)


@dataclass(frozen=True, eq=False)
class FunctorCategory(FinCat):
    """``[A, X]`` with lookup tables from names to functors and transformations."""

    source: FinCat | None = None
    target: FinCat | None = None
    functors: Mapping[str, FinFunctor] = field(default_factory=dict)
    transformations: Mapping[str, NatTransform] = field(default_factory=dict)

    @cached_property
    def object_of(self) -> dict:
        return {F.key: name for name, F in self.functors.items()}

    @cached_property
    def morphism_of(self) -> dict:
        return {
            (self.object_of[a.dom.key], self.object_of[a.cod.key], tuple(a.components.items())): name
            for name, a in self.transformations.items()
        }

    def name_of_functor(self, F: FinFunctor) -> str:
        return self.object_of[F.key]

    def name_of_transformation(self, alpha: NatTransform) -> str:
        return self.morphism_of[
            (self.object_of[alpha.dom.key], self.object_of[alpha.cod.key], tuple(alpha.components.items()))
        ]


def _assemble_functor_category(A, X, functors, guard, name) -> FunctorCategory:
    width = len(str(max(len(functors) - 1, 0)))
    names = [f"F{i:0{width}d}" for i in range(len(functors))]
    fmap = dict(zip(names, functors))
    morphisms, identity, trans, by_key = {}, {}, {}, {}
    count = 0
    for n1 in names:
        for n2 in names:
            k = 0
            for alpha in iter_transformations(fmap[n1], fmap[n2]):
                count += 1
                if count > guard:
                    raise GuardExceeded("natural transformations", guard)
                if n1 == n2 and all(X.is_identity(c) for c in alpha.components.values()):
                    m = identity_name(n1)
                    identity[n1] = m
                else:
                    m = f"{n1}=>{n2}#{k}"
                    k += 1
                morphisms[m] = (n1, n2)
                trans[m] = alpha
                by_key[(n1, n2, tuple(alpha.components.items()))] = m
    table = {}
    objs = A.objects
    for f, (a, b) in morphisms.items():
        for g, (b2, c) in morphisms.items():
            if b2 != b:
                continue
            comps = tuple((x, X.comp(trans[g][x], trans[f][x])) for x in objs)
            table[(g, f)] = by_key[(a, c, comps)]
    return FunctorCategory(
        tuple(names), morphisms, identity, table, name,
        source=A, target=X, functors=fmap, transformations=trans,
    )


def functor_category(A: FinCat, X: FinCat, guard: int = DEFAULT_GUARD) -> FunctorCategory:
    """``[A, X]``: all functors and all natural transformations."""
    functors = []
    for F in iter_functors(A, X):
        functors.append(F)
        if len(functors) > guard:
            raise GuardExceeded("functors", guard)
    return _assemble_functor_category(A, X, functors, guard, f"[{A.name},{X.name}]")


def inverting_subcategory(A: FinCat, X: FinCat, guard: int = DEFAULT_GUARD) -> FunctorCategory:
    """Full subcategory of ``[A, X]`` on functors inverting every morphism."""
    functors = []
    for F in iter_functors(A, X, predicate=lambda m, c: X.is_iso(c)):
        functors.append(F)
        if len(functors) > guard:
            raise GuardExceeded("functors", guard)
    return _assemble_functor_category(A, X, functors, guard, f"[{A.name},{X.name}]_iso")


def evaluation_functor(FC: FunctorCategory, a: str) -> FinFunctor:
    """Evaluation ``[A, X] -> X`` at the object ``a``."""
    X = FC.target
    return FinFunctor(
        FC,
        X,
        {n: F.ob[a] for n, F in FC.functors.items()},
        {m: alpha[a] for m, alpha in FC.transformations.items()},
    )
