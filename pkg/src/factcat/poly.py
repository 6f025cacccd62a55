"""Abstract polynomials: spans ``A <-j_*- E -p-> B`` with ``p`` a groupoid
fibration and ``j_* -| j``, their evaluation ``p j`` and their composition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructions import comma, pseudopullback
from .errors import BoundExceeded, GuardExceeded, WitnessFailure
from .fincat import (
    DEFAULT_GUARD,
    Adjunction,
    FinCat,
    FinFunctor,
    NatTransform,
    compose_adjunctions,
    compose_functors,
    compute_left_adjoint,
    compute_right_adjoint,
    identity_functor,
    identity_nat,
    iter_functors,
    iter_transformations,
    nat_iso_exists,
    triangle_violations,
)
from .factorize import ultimate_factorize
from .fib import is_groupoid_fibration
from .gpd import NO, YES, TriBool


@dataclass(frozen=True, eq=False)
class Polynomial:
    source: FinCat
    total: FinCat
    target: FinCat
    left_leg: FinFunctor
    left_adjoint_witness: Adjunction
    right_leg: FinFunctor

    @property
    def j(self) -> FinFunctor:
        return self.left_adjoint_witness.right


def polynomial(left_adjoint_witness: Adjunction, right_leg: FinFunctor) -> Polynomial:
    """Assemble and check a polynomial from ``j_* -| j`` and ``p``."""
    j_star = left_adjoint_witness.left
    P = Polynomial(j_star.cod, j_star.dom, right_leg.cod, j_star, left_adjoint_witness, right_leg)
    violations = polynomial_violations(P)
    if violations:
        raise ValueError("; ".join(violations))
    return P


def polynomial_violations(P: Polynomial) -> list:
    out = []
    adj = P.left_adjoint_witness
    if adj.left != P.left_leg:
        out.append("witness does not match left leg")
    if P.right_leg.dom != P.total or P.left_leg.dom != P.total:
        out.append("legs do not share the total category")
    if triangle_violations(adj):
        out.append("triangle identities fail")
    if not is_groupoid_fibration(P.right_leg).verdict:
        out.append("right leg is not a groupoid fibration")
    return out


def identity_polynomial(A: FinCat) -> Polynomial:
    idA = identity_functor(A)
    unit = identity_nat(idA)
    return Polynomial(A, A, A, idA, Adjunction(idA, idA, unit, unit), idA)


def polynomial_from_functor(f: FinFunctor, bound: int | None = None) -> Polynomial | None:
    """The polynomial of an abstract polynomial functor, or ``None`` if ``j`` has no left adjoint."""
    fact = ultimate_factorize(f, bound)
    adj = compute_left_adjoint(fact.left)
    if adj is None:
        return None
    return Polynomial(f.dom, fact.mid, f.cod, adj.left, adj, fact.right)


def is_abstract_polynomial_functor(f: FinFunctor, bound: int | None = None) -> TriBool:
    """Is the ultimate factor of ``f`` a right adjoint?

    When the middle category cannot be normalized because some hom-set is
    infinite, and that hom-set ends at an object isomorphic to one in the
    image of ``j``, no left adjoint can exist: it would make the hom-set
    isomorphic to a finite one.  That case is reported as No.
    """
    try:
        fact = ultimate_factorize(f, bound)
    except BoundExceeded as exc:
        res = exc.result
        cert = res.certificate
        if cert is not None and _iso_to_image(f, cert.tgt):
            return TriBool("no", f"infinite hom into {cert.tgt}, which is isomorphic to an object j(a)")
        return TriBool.unknown(exc.note or res.status)
    return YES if compute_left_adjoint(fact.left) is not None else NO


def _iso_to_image(f: FinFunctor, z: str) -> bool:
    """Is ``z`` joined to some ``(f a|1|a)`` by vertical morphisms of ``B/f``?"""
    B = f.cod
    cone = comma(identity_functor(B), f)
    Bf = cone.apex
    parent = {x: x for x in Bf.objects}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for m, (x, y) in Bf.morphisms.items():
        if B.is_identity(cone.left_leg.mor[m]):
            parent[find(x)] = find(y)
    image = {find(cone.object_name(f.ob[a], B.identity[f.ob[a]], a)) for a in f.dom.objects}
    return find(z) in image


def eval_polynomial(P: Polynomial) -> FinFunctor:
    """The abstract polynomial functor ``p j``."""
    return compose_functors(P.right_leg, P.j)


def compose_polynomials(P1: Polynomial, P2: Polynomial, guard: int = DEFAULT_GUARD) -> Polynomial:
    """``A <- E -> B`` then ``B <- F -> C`` composed through the pseudopullback of ``p`` and ``k_*``.

    Writing ``k'_*: W -> E`` and ``p': W -> F`` for the projections, the
    composite is ``A <- W -> C`` with left leg ``j_* k'_*`` and right leg
    ``q p'``; the Chevalley-Beck iso ``p' k' ~ k p`` is checked.
    """
    if P1.target != P2.source:
        raise ValueError("polynomials are not composable")
    p, k_star = P1.right_leg, P2.left_leg
    cone = pseudopullback(p, k_star)
    W = cone.apex
    if len(W.morphisms) > guard:
        raise GuardExceeded("pseudopullback", guard)
    k2_star, p2 = cone.left_leg, cone.right_leg
    inner = compute_right_adjoint(k2_star)
    if inner is None:
        raise WitnessFailure("pulled-back left leg has no right adjoint")
    adj = compose_adjunctions(P1.left_adjoint_witness, inner)
    right = compose_functors(P2.right_leg, p2)
    out = Polynomial(P1.source, W, P2.target, adj.left, adj, right)
    problems = polynomial_violations(out)
    if problems:
        raise WitnessFailure("; ".join(problems))
    k = P2.j
    if nat_iso_exists(compose_functors(p2, inner.right), compose_functors(k, p)) is None:
        raise WitnessFailure("Chevalley-Beck condition fails")
    return out


def chevalley_beck(P1: Polynomial, P2: Polynomial) -> NatTransform | None:
    """An iso ``p' k' => k p`` for the distributivity square of ``(P1, P2)``."""
    cone = pseudopullback(P1.right_leg, P2.left_leg)
    inner = compute_right_adjoint(cone.left_leg)
    if inner is None:
        return None
    return nat_iso_exists(compose_functors(cone.right_leg, inner.right), compose_functors(P2.j, P1.right_leg))


def right_lift(n: FinFunctor, u: FinFunctor, guard: int = DEFAULT_GUARD):
    """A terminal ``(r, eps: n r => u)`` with ``r: K -> Y``, or ``None``.

    Terminal means every ``(r', eps')`` factors as ``eps . n delta`` for a
    unique ``delta: r' => r``.  Exhaustive, so keep ``K`` small.
    """
    K, Y = u.dom, n.dom
    cands = []
    for r in iter_functors(K, Y):
        nr = compose_functors(n, r)
        for eps in iter_transformations(nr, u):
            cands.append((r, eps))
            if len(cands) > guard:
                raise GuardExceeded("right lift candidates", guard)
    Z = n.cod
    for r, eps in cands:
        ok = True
        for r2, eps2 in cands:
            hits = 0
            for delta in iter_transformations(r2, r):
                if all(Z.comp(eps[x], n.mor[delta[x]]) == eps2[x] for x in K.objects):
                    hits += 1
                    if hits > 1:
                        break
            if hits != 1:
                ok = False
                break
        if ok:
            return r, eps
    return None
