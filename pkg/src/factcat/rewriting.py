"""Knuth-Bendix completion for string rewriting on typed path words.

Letters are small integers; the letter order is the integer order and words
are compared shortlex.  Every equation handed to :func:`complete` is between
parallel paths, so reductions never change the endpoints of a word and the
empty word can stand for the identity at whatever object the context fixes.
"""

from __future__ import annotations

from collections import deque


def shortlex(word):
    return (len(word), word)


class RewritingSystem:
    def __init__(self, rules=None):
        self.rules = dict(rules or {})
        self._reindex()

    def _reindex(self):
        self.lengths = sorted({len(l) for l in self.rules})
        self.max_length = self.lengths[-1] if self.lengths else 0

    def add(self, lhs, rhs):
        self.rules[lhs] = rhs
        self._reindex()

    def remove(self, lhs):
        rhs = self.rules.pop(lhs)
        self._reindex()
        return rhs

    def reduce(self, word):
        out = []
        todo = list(reversed(word))
        rules, lengths = self.rules, self.lengths
        while todo:
            out.append(todo.pop())
            n = len(out)
            for k in lengths:
                if k > n:
                    break
                rhs = rules.get(tuple(out[n - k:]))
                if rhs is not None:
                    del out[n - k:]
                    todo.extend(reversed(rhs))
                    break
        return tuple(out)

    def is_reduced(self, word):
        for k in self.lengths:
            for i in range(len(word) - k + 1):
                if word[i:i + k] in self.rules:
                    return False
        return True

    def __len__(self):
        return len(self.rules)


def _contains(word, factor):
    k = len(factor)
    return any(word[i:i + k] == factor for i in range(len(word) - k + 1))


def critical_pairs(rule1, rule2):
    """Critical pairs from overlaps of ``rule1``'s lhs suffix with ``rule2``'s lhs prefix,
    and from ``rule2``'s lhs occurring inside ``rule1``'s lhs."""
    (l1, r1), (l2, r2) = rule1, rule2
    out = []
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            out.append((r1 + l2[k:], l1[:-k] + r2))
    if l1 != l2 and len(l2) <= len(l1):
        k = len(l2)
        for i in range(len(l1) - k + 1):
            if l1[i:i + k] == l2:
                out.append((r1, l1[:i] + r2 + l1[i + k:]))
    return out


def complete(equations):
    """Generator running completion; yields once per rule added.

    Returns (via ``StopIteration.value``) a confluent, interreduced
    :class:`RewritingSystem`.  Callers bound the work by how far they drive
    the generator.
    """
    system = RewritingSystem()
    pending = deque(equations)
    while True:
        while pending:
            u, v = pending.popleft()
            u, v = system.reduce(u), system.reduce(v)
            if u == v:
                continue
            lhs, rhs = (u, v) if shortlex(u) > shortlex(v) else (v, u)
            for l2 in [l for l in system.rules if _contains(l, lhs)]:
                pending.append((l2, system.remove(l2)))
            system.add(lhs, rhs)
            for l2, r2 in list(system.rules.items()):
                if l2 != lhs and _contains(r2, lhs):
                    system.rules[l2] = system.reduce(r2)
            yield "rule"
            for l2, r2 in list(system.rules.items()):
                pending.extend(critical_pairs((lhs, rhs), (l2, r2)))
                if l2 != lhs:
                    pending.extend(critical_pairs((l2, r2), (lhs, rhs)))
        items = list(system.rules.items())
        for r1 in items:
            for r2 in items:
                for u, v in critical_pairs(r1, r2):
                    if system.reduce(u) != system.reduce(v):
                        pending.append((u, v))
        if not pending:
            return system
