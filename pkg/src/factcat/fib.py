"""Decision procedures for cartesian morphisms, groupoid fibrations, discrete
fibrations, opfibrations, final and ultimate functors.

Everything here is an exhaustive scan of the finite data.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constructions import opposite_functor, pseudopullback, slice_under
from .fincat import FinCat, FinFunctor, connected_components, point
from .gpd import YES, TriBool, is_trivial_pi1


@dataclass(frozen=True)
class FibrationReport:
    verdict: object  # bool or TriBool
    witnesses: list = field(default_factory=list)

    def __bool__(self):
        return bool(self.verdict)


def is_cartesian(p: FinFunctor, chi: str) -> bool:
    """Is ``chi: e' -> e`` cartesian: is every hom-set square over ``p`` a pullback?"""
    E, B = p.dom, p.cod
    e2, e = E.morphisms[chi]
    pchi = p.mor[chi]
    for k in E.objects:
        pk = p.ob[k]
        cone = set()
        for eta in E.hom(k, e):
            for beta in B.hom(pk, p.ob[e2]):
                if B.comp(pchi, beta) == p.mor[eta]:
                    cone.add((eta, beta))
        image = [(E.comp(chi, xi), p.mor[xi]) for xi in E.hom(k, e2)]
        if len(set(image)) != len(image) or set(image) != cone:
            return False
    return True


def _lift(p: FinFunctor, e: str, beta: str):
    """A pair ``(chi, theta)`` with ``theta: b -> p e'`` invertible and ``p(chi) theta = beta``."""
    E, B = p.dom, p.cod
    b = B.src(beta)
    best = None
    for chi, (e2, t) in E.morphisms.items():
        if t != e:
            continue
        for theta in B.hom(b, p.ob[e2]):
            if B.is_iso(theta) and B.comp(p.mor[chi], theta) == beta:
                if B.is_identity(theta):
                    return chi, theta
                if best is None:
                    best = (chi, theta)
    return best


def is_groupoid_fibration(p: FinFunctor) -> FibrationReport:
    E, B = p.dom, p.cod
    witnesses = []
    for e in E.objects:
        for b in B.objects:
            for beta in B.hom(b, p.ob[e]):
                if _lift(p, e, beta) is None:
                    witnesses.append(("no-lift", e, beta))
    for chi in E.morphisms:
        if not is_cartesian(p, chi):
            witnesses.append(("not-cartesian", chi))
    return FibrationReport(not witnesses, witnesses)


def is_discrete_fibration(p: FinFunctor) -> FibrationReport:
    E, B = p.dom, p.cod
    witnesses = []
    into = {e: [] for e in E.objects}
    for chi, (_, t) in E.morphisms.items():
        into[t].append(chi)
    for e in E.objects:
        for b in B.objects:
            for beta in B.hom(b, p.ob[e]):
                lifts = [chi for chi in into[e] if p.mor[chi] == beta]
                if len(lifts) != 1:
                    witnesses.append(("lifts", e, beta, len(lifts)))
    return FibrationReport(not witnesses, witnesses)


def is_opfibration_gfib(p: FinFunctor) -> FibrationReport:
    """Groupoid opfibration: a groupoid fibration after taking opposites."""
    return is_groupoid_fibration(opposite_functor(p))


def is_final(j: FinFunctor) -> FibrationReport:
    """Every comma ``b/j`` is nonempty and connected."""
    witnesses = []
    for b in j.cod.objects:
        n = len(connected_components(slice_under(b, j).apex))
        if n != 1:
            witnesses.append(("components", b, n))
    return FibrationReport(not witnesses, witnesses)


def ultimate_report(j: FinFunctor, bound: int | None = None) -> FibrationReport:
    """Per-object verdicts for ultimacy; a single No decides the aggregate."""
    verdicts = {}
    for b in j.cod.objects:
        verdicts[b] = is_trivial_pi1(slice_under(b, j).apex, bound)
    bad = [(b, str(v)) for b, v in verdicts.items() if not v.is_yes]
    if any(v.is_no for v in verdicts.values()):
        verdict = TriBool("no", ", ".join(f"{b}: {v}" for b, v in bad if verdicts[b].is_no))
    elif bad:
        verdict = TriBool.unknown(", ".join(f"{b}: {v}" for b, v in bad))
    else:
        verdict = YES
    return FibrationReport(verdict, bad)


def is_ultimate(j: FinFunctor, bound: int | None = None) -> TriBool:
    """Does every comma ``b/j`` have fundamental groupoid equivalent to the point?"""
    return ultimate_report(j, bound).verdict


def pseudofibre(p: FinFunctor, b: str) -> FinCat:
    """The pseudopullback of ``b: 1 -> B`` along ``p``."""
    return pseudopullback(point(p.cod, b), p).apex

