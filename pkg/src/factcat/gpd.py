"""Presented categories, localization, fundamental groupoids and the bounded
normalization that turns a presentation back into a finite category.

Normalization interleaves two engines on a shared effort budget:

* Knuth-Bendix completion on path words (shortlex, generators before formal
  inverses).  A confluent system either has finitely many normal forms, which
  are enumerated, or a cycle in its normal-form automaton, which certifies an
  infinite hom-set.
* Todd-Coxeter enumeration of each vertex group, available when every
  generator is inverted.  A closed coset table certifies finiteness.

Both engines name a morphism by its shortlex-least word, so the finite
category produced does not depend on which engine finished first.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Mapping

from .cosets import enumerate_cosets
from .errors import NotAGroupoid
from .fincat import (
    FinCat,
    FinFunctor,
    Violation,
    connected_components,
    identity_name,
)
from .rewriting import complete

DEFAULT_BOUND = 10_000


def default_bound() -> int:
    return int(os.environ.get("FACTCAT_BOUND", DEFAULT_BOUND))


@dataclass(frozen=True)
class TriBool:
    """Three-valued verdict; ``reason`` is set for unknown (the exhausted bound)."""

    value: str
    reason: str = ""

    def __post_init__(self):
        if self.value not in ("yes", "no", "unknown"):
            raise ValueError(self.value)

    @classmethod
    def unknown(cls, reason: str) -> "TriBool":
        return cls("unknown", reason)

    @property
    def is_yes(self):
        return self.value == "yes"

    @property
    def is_no(self):
        return self.value == "no"

    @property
    def is_unknown(self):
        return self.value == "unknown"

    def __bool__(self):
        raise TypeError("TriBool has no truth value; test .is_yes / .is_no")

    def __str__(self):
        return self.value if not self.reason else f"{self.value} ({self.reason})"


YES = TriBool("yes")
NO = TriBool("no")


# -- presentations ----------------------------------------------------------

Letter = tuple  # (generator name, +1 or -1)


@dataclass(frozen=True, eq=False)
class PresentedCategory:
    """Generators and relations, some generators marked formally invertible.

    Relations are ``(src, tgt, lhs, rhs)`` with words written in diagrammatic
    order (first letter applied first).  Inverted generators implicitly carry
    ``g g^-1 = id`` and ``g^-1 g = id``.
    """

    objects: tuple
    generators: Mapping[str, tuple]
    inverted: frozenset = frozenset()
    relations: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(sorted(self.objects)))
        object.__setattr__(self, "generators", dict(sorted(self.generators.items())))
        object.__setattr__(self, "inverted", frozenset(self.inverted))
        object.__setattr__(self, "relations", tuple(self.relations))

    @property
    def is_groupoid(self):
        return self.inverted == frozenset(self.generators)

    def letter_ends(self, letter):
        s, t = self.generators[letter[0]]
        return (s, t) if letter[1] > 0 else (t, s)

    def letters(self) -> list:
        """All letters in shortlex order: generators, then formal inverses."""
        gens = [(g, 1) for g in self.generators]
        invs = [(g, -1) for g in self.generators if g in self.inverted]
        return gens + invs


def letter_name(letter) -> str:
    g, e = letter
    return g if e > 0 else f"{g}^-1"


def word_name(src: str, word) -> str:
    if not word:
        return identity_name(src)
    return ";".join(letter_name(c) for c in word)


def validate_presentation(P: PresentedCategory) -> list:
    out = []
    objs = set(P.objects)
    for g, (s, t) in P.generators.items():
        if s not in objs or t not in objs:
            out.append(Violation("generator-endpoint", (g,)))
    for g in P.inverted:
        if g not in P.generators:
            out.append(Violation("inverted-unknown", (g,)))
    for k, (s, t, lhs, rhs) in enumerate(P.relations):
        for side in (lhs, rhs):
            at = s
            for c in side:
                if c[0] not in P.generators or (c[1] < 0 and c[0] not in P.inverted):
                    out.append(Violation("relation-letter", (k, c)))
                    break
                a, b = P.letter_ends(c)
                if a != at:
                    out.append(Violation("relation-path", (k,)))
                    break
                at = b
            else:
                if at != t:
                    out.append(Violation("relation-parallel", (k,)))
    return out


def localize(C: FinCat, W: Iterable[str]) -> PresentedCategory:
    """Presentation of ``C`` with the morphisms in ``W`` formally inverted."""
    gens = {m: C.morphisms[m] for m in C.non_identity}
    rels = []
    for (g, f), h in C.compose.items():
        if g in gens and f in gens:
            rhs = () if C.is_identity(h) else ((h, 1),)
            rels.append((C.src(f), C.tgt(g), ((f, 1), (g, 1)), rhs))
    inverted = frozenset(m for m in W if m in gens)
    return PresentedCategory(C.objects, gens, inverted, tuple(sorted(rels)), f"loc({C.name})")


def pi1(A: FinCat) -> PresentedCategory:
    """Fundamental groupoid of ``A`` as a presentation: every morphism inverted."""
    P = localize(A, A.morphisms)
    return PresentedCategory(P.objects, P.generators, P.inverted, P.relations, f"pi1({A.name})")


# -- normalization ----------------------------------------------------------


@dataclass(frozen=True)
class InfiniteCertificate:
    """A confluent system plus a pumpable word: ``stem + loop*n`` is irreducible for all ``n``.

    All those words are distinct morphisms ``src -> tgt`` of the presented category.
    """

    rules: tuple
    src: str
    tgt: str
    stem: tuple
    loop: tuple


@dataclass(frozen=True, eq=False)
class NormalizationResult:
    status: str  # "finite" | "infinite" | "unknown"
    presentation: PresentedCategory
    category: FinCat | None = None
    quotient: Mapping[str, str] = field(default_factory=dict)
    words: Mapping[str, tuple] = field(default_factory=dict)
    certificate: InfiniteCertificate | None = None
    effort: Mapping[str, int] = field(default_factory=dict)
    engine: str = ""

    @property
    def is_finite(self):
        return self.status == "finite"


class _Alphabet:
    def __init__(self, P: PresentedCategory):
        self.P = P
        self.letters = P.letters()
        self.index = {c: i for i, c in enumerate(self.letters)}
        self.src = [P.letter_ends(c)[0] for c in self.letters]
        self.tgt = [P.letter_ends(c)[1] for c in self.letters]
        self.out_of = {x: [] for x in P.objects}
        for i, s in enumerate(self.src):
            self.out_of[s].append(i)

    def encode(self, word):
        return tuple(self.index[c] for c in word)

    def decode(self, word):
        return tuple(self.letters[i] for i in word)

    def equations(self):
        eqs = [(self.encode(l), self.encode(r)) for _, _, l, r in self.P.relations]
        for g in sorted(self.P.inverted):
            a, b = self.index[(g, 1)], self.index[(g, -1)]
            eqs.append(((a, b), ()))
            eqs.append(((b, a), ()))
        return eqs


def _normal_form_automaton(alpha: _Alphabet, system, state_budget):
    """Explore irreducible words; return ("infinite", cert) / ("finite", words) / ("unknown", n)."""
    keep = max(system.max_length - 1, 0)
    rules = system.rules
    lengths = system.lengths

    def step(state, c):
        _, suffix = state
        w = suffix + (c,)
        for k in lengths:
            if k > len(w):
                break
            if w[len(w) - k:] in rules:
                return None
        return (alpha.tgt[c], w[len(w) - keep:] if keep else ())

    succ = {}
    explored = 0

    def successors(state):
        nonlocal explored
        if state not in succ:
            explored += 1
            succ[state] = [(c, n) for c in alpha.out_of[state[0]] if (n := step(state, c)) is not None]
        return succ[state]

    color = {}
    for x in alpha.P.objects:
        start = (x, ())
        if start in color:
            continue
        color[start] = 1
        path_states = [start]
        path_letters = []
        stack = [iter(successors(start))]
        while stack:
            if explored > state_budget:
                return "unknown", explored
            nxt = next(stack[-1], None)
            if nxt is None:
                color[path_states[-1]] = 2
                stack.pop()
                path_states.pop()
                if path_letters:
                    path_letters.pop()
                continue
            c, n = nxt
            if color.get(n) == 1:
                i = path_states.index(n)
                stem = tuple(path_letters[:i])
                loop = tuple(path_letters[i:]) + (c,)
                return "infinite", (x, n[0], stem, loop)
            if n not in color:
                color[n] = 1
                path_states.append(n)
                path_letters.append(c)
                stack.append(iter(successors(n)))
    words = {}
    for x in alpha.P.objects:
        todo = [((x, ()), ())]
        while todo:
            state, w = todo.pop()
            words.setdefault((x, state[0]), []).append(w)
            if sum(len(v) for v in words.values()) > state_budget:
                return "unknown", explored
            for c, n in successors(state):
                todo.append((n, w + (c,)))
    return "finite", words


def _finite_from_words(P, alpha, words, multiply, engine, effort):
    """Assemble the FinCat from shortlex-least words; ``multiply(x, w1, w2)`` gives the normal word."""
    morphisms, identity, names = {}, {}, {}
    for (x, y), ws in words.items():
        for w in ws:
            n = word_name(x, alpha.decode(w))
            morphisms[n] = (x, y)
            names[(x, w)] = n
            if not w:
                identity[x] = n
    table = {}
    for (x, y), ws in words.items():
        for w1 in ws:
            for (y2, z), ws2 in words.items():
                if y2 != y:
                    continue
                for w2 in ws2:
                    table[(names[(y, w2)], names[(x, w1)])] = names[(x, multiply(x, w1, w2))]
    Q = FinCat(P.objects, morphisms, identity, table, P.name)
    quotient = {}
    for g, (s, _) in P.generators.items():
        quotient[g] = names[(s, multiply(s, (), (alpha.index[(g, 1)],)))]
    inv_words = {n: alpha.decode(w) for (x, w), n in names.items()}
    return NormalizationResult("finite", P, Q, quotient, inv_words, None, effort, engine)


def _rewriting_engine(P: PresentedCategory, alpha: _Alphabet, effort: dict):
    system = yield from _counting(complete(alpha.equations()), effort, "rules_added")
    return system


def _counting(gen, effort, key):
    while True:
        try:
            next(gen)
        except StopIteration as stop:
            return stop.value
        effort[key] += 1
        yield key


def _groupoid_data(P: PresentedCategory, alpha: _Alphabet):
    """Spanning trees and vertex-group presentations, one per component."""
    comps = []
    seen = set()
    for root in P.objects:
        if root in seen:
            continue
        tree_letter = {root: None}
        order = [root]
        queue = deque([root])
        while queue:
            z = queue.popleft()
            for c in alpha.out_of[z]:
                t = alpha.tgt[c]
                if t not in tree_letter:
                    tree_letter[t] = c
                    order.append(t)
                    queue.append(t)
        seen.update(order)
        tree_gens = {alpha.letters[c][0] for c in tree_letter.values() if c is not None}
        group_gens = [g for g in P.generators if P.generators[g][0] in tree_letter and g not in tree_gens]
        gindex = {g: i for i, g in enumerate(group_gens)}

        def gamma(c, gindex=gindex):
            g, e = alpha.letters[c]
            if g not in gindex:
                return None
            return 2 * gindex[g] + (0 if e > 0 else 1)

        relators = []
        for s, _, lhs, rhs in P.relations:
            if s not in tree_letter:
                continue
            word = [gamma(alpha.index[c]) for c in lhs]
            word += [gamma(alpha.index[c]) ^ 1 if gamma(alpha.index[c]) is not None else None for c in reversed(rhs)]
            word = _free_reduce([x for x in word if x is not None])
            if word:
                relators.append(word)
        comps.append((tuple(sorted(order)), len(group_gens), relators, gamma))
    return comps


def _free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    return out


def _coset_engine(P: PresentedCategory, alpha: _Alphabet, effort: dict):
    tables = []
    for objs, ngens, relators, gamma in _groupoid_data(P, alpha):
        relators = sorted(relators, key=len)
        table = yield from _counting(enumerate_cosets(ngens, relators), effort, "cosets_defined")
        tables.append((objs, table, gamma))
    return tables


def _verify_table(table, relators_ok=True):
    return all(x is not None for row in table for x in row)


def _words_from_tables(P, alpha, tables):
    """Shortlex-least words for every morphism, by breadth-first search."""
    comp_of = {}
    for objs, table, gamma in tables:
        for x in objs:
            comp_of[x] = (table, gamma)
    words = {}
    lookup = {}
    for x in P.objects:
        table, gamma = comp_of[x]
        seen = {(x, 0): ()}
        queue = deque([(x, 0)])
        while queue:
            z, g = queue.popleft()
            w = seen[(z, g)]
            for c in alpha.out_of[z]:
                gc = gamma(c)
                n = (alpha.tgt[c], g if gc is None else table[g][gc])
                if n not in seen:
                    seen[n] = w + (c,)
                    queue.append(n)
        for (z, g), w in seen.items():
            words.setdefault((x, z), []).append(w)
            lookup[(x, z, g)] = w
    elements = {}
    for (x, z, g), w in lookup.items():
        elements[(x, w)] = (z, g)

    def multiply(x, w1, w2):
        z, g = elements[(x, w1)]
        table, gamma = comp_of[x]
        for c in w2:
            gc = gamma(c)
            if gc is not None:
                g = table[g][gc]
            z = alpha.tgt[c]
        return lookup[(x, z, g)]

    for k in words:
        words[k].sort(key=lambda w: (len(w), w))
    return words, multiply


def normalize(P: PresentedCategory, bound: int | None = None, engines: tuple = ("rewriting", "cosets")) -> NormalizationResult:
    """Turn ``P`` into a finite category, certify it infinite, or give up at ``bound``.

    ``bound`` caps rule additions plus coset definitions (and the number of
    normal-form automaton states explored).
    """
    bound = default_bound() if bound is None else bound
    alpha = _Alphabet(P)
    effort = {"rules_added": 0, "cosets_defined": 0, "states_explored": 0}
    running = {}
    if "rewriting" in engines:
        running["rewriting"] = _rewriting_engine(P, alpha, effort)
    if "cosets" in engines and P.is_groupoid:
        running["cosets"] = _coset_engine(P, alpha, effort)
    spent = 0
    while running and spent < bound:
        for name in list(running):
            try:
                next(running[name])
                spent += 1
                continue
            except StopIteration as stop:
                outcome = stop.value
            del running[name]
            if name == "rewriting":
                system = outcome
                status, data = _normal_form_automaton(alpha, system, max(bound - spent, 0))
                if status == "unknown":
                    effort["states_explored"] += data
                    continue
                if status == "infinite":
                    x, y, stem, loop = data
                    cert = InfiniteCertificate(
                        tuple(sorted((alpha.decode(l), alpha.decode(r)) for l, r in system.rules.items())),
                        x, y, alpha.decode(stem), alpha.decode(loop),
                    )
                    return NormalizationResult("infinite", P, None, {}, {}, cert, dict(effort), "rewriting")

                def multiply(x, w1, w2, system=system):
                    return system.reduce(w1 + w2)

                for k in data:
                    data[k].sort(key=lambda w: (len(w), w))
                return _finite_from_words(P, alpha, data, multiply, "rewriting", dict(effort))
            else:
                tables = outcome
                if not all(_verify_table(t) for _, t, _ in tables):
                    continue
                words, multiply = _words_from_tables(P, alpha, tables)
                return _finite_from_words(P, alpha, words, multiply, "cosets", dict(effort))
    return NormalizationResult("unknown", P, effort=dict(effort), engine="")


def quotient_functor(C: FinCat, result: NormalizationResult) -> FinFunctor:
    """The localization functor ``C -> Q`` for a finite normalization of ``localize(C, W)``."""
    Q = result.category
    mor = {C.identity[x]: Q.identity[x] for x in C.objects}
    mor.update(result.quotient)
    return FinFunctor(C, Q, {x: x for x in C.objects}, mor, "quotient")


def induced_functor(result: NormalizationResult, F: FinFunctor) -> FinFunctor:
    """The functor ``Q -> X`` through which an inverting ``F: C -> X`` factors."""
    Q, X = result.category, F.cod
    mor = {}
    for m, word in result.words.items():
        img = X.identity[F.ob[Q.src(m)]]
        for g, e in word:
            step = F.mor[g] if e > 0 else X.inverse(F.mor[g])
            img = X.comp(step, img)
        mor[m] = img
    return FinFunctor(Q, X, dict(F.ob), mor, "induced")


# -- decisions on groupoids ---------------------------------------------------


def is_trivial_pi1(A: FinCat, bound: int | None = None) -> TriBool:
    """Is the fundamental groupoid of ``A`` equivalent to the point?"""
    if not A.objects:
        return TriBool("no", "empty")
    if len(connected_components(A)) > 1:
        return TriBool("no", "disconnected")
    bound = default_bound() if bound is None else bound
    res = normalize(pi1(A), bound)
    if res.status == "finite":
        x = A.objects[0]
        n = len(res.category.hom(x, x))
        return YES if n == 1 else TriBool("no", f"vertex group of order {n}")
    if res.status == "infinite":
        return TriBool("no", "infinite vertex group")
    return TriBool.unknown(f"bound {bound} exhausted")


def vertex_group(G: FinCat, x: str) -> tuple:
    """``(elements, multiplication)`` of the automorphism group at ``x``; element 0 is the identity."""
    elems = list(G.hom(x, x))
    elems.remove(G.identity[x])
    elems.insert(0, G.identity[x])
    idx = {e: i for i, e in enumerate(elems)}
    mult = [[idx[G.comp(b, a)] for b in elems] for a in elems]  # a then b
    return elems, mult


def _element_orders(mult):
    orders = []
    for a in range(len(mult)):
        k, g = 1, a
        while g != 0:
            g = mult[g][a]
            k += 1
        orders.append(k)
    return orders


def groups_isomorphic(m1, m2) -> bool:
    """Brute-force isomorphism of groups given by multiplication tables (identity 0)."""
    n = len(m1)
    if n != len(m2):
        return False
    o1, o2 = _element_orders(m1), _element_orders(m2)
    if sorted(o1) != sorted(o2):
        return False
    gens = []
    span = {0}
    for a in range(n):
        if a in span:
            continue
        gens.append(a)
        span = _closure(m1, gens)
        if len(span) == n:
            break

    def extend(images):
        phi = {0: 0}
        queue = [0]
        while queue:
            a = queue.pop()
            for g, h in zip(gens, images):
                b, c = m1[a][g], m2[phi[a]][h]
                if b in phi:
                    if phi[b] != c:
                        return None
                else:
                    phi[b] = c
                    queue.append(b)
        if len(set(phi.values())) != n:
            return None
        for a in range(n):
            for b in range(n):
                if phi[m1[a][b]] != m2[phi[a]][phi[b]]:
                    return None
        return phi

    cands = [[h for h in range(n) if o2[h] == o1[g]] for g in gens]

    def rec(i, images):
        if i == len(gens):
            return extend(images) is not None
        return any(rec(i + 1, images + [h]) for h in cands[i])

    return rec(0, [])


def _closure(mult, gens):
    span = {0}
    queue = [0]
    while queue:
        a = queue.pop()
        for g in gens:
            b = mult[a][g]
            if b not in span:
                span.add(b)
                queue.append(b)
    return span


def groupoid_equiv(G: FinCat, H: FinCat) -> bool:
    """Equivalence of finite groupoids: matching components with isomorphic vertex groups."""
    for X in (G, H):
        bad = [m for m in X.morphisms if not X.is_iso(m)]
        if bad:
            raise NotAGroupoid(f"{bad[0]} is not invertible")
    cg, ch = connected_components(G), connected_components(H)
    if len(cg) != len(ch):
        return False
    groups_h = [vertex_group(H, c[0])[1] for c in ch]
    used = [False] * len(ch)
    for c in cg:
        mg = vertex_group(G, c[0])[1]
        for i, mh in enumerate(groups_h):
            if not used[i] and groups_isomorphic(mg, mh):
                used[i] = True
                break
        else:
            return False
    return True
