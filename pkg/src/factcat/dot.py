"""Graphviz DOT export: one node per object, one edge per generating morphism.

Generators are picked greedily in name order: a morphism is kept when it is
not already a composite of the ones kept before it.  Invertible edges are
drawn with ``dir=both`` and their inverses count as already drawn.
"""

from __future__ import annotations

from .fincat import FinCat


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def generators(C: FinCat) -> list:
    span = set(C.identity.values())
    chosen = []
    for m in C.non_identity:
        if m in span:
            continue
        chosen.append(m)
        span.add(m)
        if C.is_iso(m):
            span.add(C.inverse(m))
        grew = True
        while grew:
            grew = False
            for (g, f), h in C.compose.items():
                if g in span and f in span and h not in span:
                    span.add(h)
                    grew = True
    return chosen


def to_dot(C: FinCat, name: str | None = None) -> str:
    lines = [f"digraph {_quote(name or C.name or 'C')} {{"]
    for x in C.objects:
        lines.append(f"  {_quote(x)};")
    for m in generators(C):
        s, t = C.morphisms[m]
        attrs = [f"label={_quote(m)}"]
        if C.is_iso(m):
            attrs.append("dir=both")
        lines.append(f"  {_quote(s)} -> {_quote(t)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
