"""Todd-Coxeter coset enumeration (HLT strategy) for the trivial subgroup.

Group letters are ``2*i`` for generator ``i`` and ``2*i + 1`` for its
inverse, so ``x ^ 1`` is the inverse letter.  A completed table is the
right regular action of the group on itself.
"""

from __future__ import annotations


class CosetTable:
    def __init__(self, ngens):
        self.width = 2 * ngens
        self.table = [[None] * self.width]
        self.parent = [0]

    def rep(self, c):
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def new_coset(self):
        self.table.append([None] * self.width)
        self.parent.append(len(self.parent))
        return len(self.table) - 1

    def _merge(self, k, l, queue):
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.parent[l] = k
        queue.append(l)

    def coincidence(self, a, b):
        t = self.table
        queue = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.width):
                f = t[e][x]
                if f is None:
                    continue
                t[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if t[e1][x] is not None:
                    self._merge(f1, t[e1][x], queue)
                elif t[f1][x ^ 1] is not None:
                    self._merge(e1, t[f1][x ^ 1], queue)
                else:
                    t[e1][x] = f1
                    t[f1][x ^ 1] = e1

    def live(self):
        return [c for c in range(len(self.table)) if self.parent[c] == c]


def enumerate_cosets(ngens, relators):
    """Generator; yields once per coset defined.

    Returns the standardized table as a list of rows (coset ``0`` is the
    identity) when enumeration closes.
    """
    ct = CosetTable(ngens)
    t = ct.table

    def define(c, x):
        d = ct.new_coset()
        t[c][x] = d
        t[d][x ^ 1] = c

    def scan_and_fill(c, word):
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] is not None:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    ct.coincidence(f, b)
                return
            while j >= i and t[b][word[j] ^ 1] is not None:
                b = t[b][word[j] ^ 1]
                j -= 1
            if j < i:
                ct.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][word[i] ^ 1] = f
                return
            define(f, word[i])
            yield

    c = 0
    while c < len(t):
        if ct.parent[c] == c:
            for rel in relators:
                yield from scan_and_fill(c, rel)
                if ct.parent[c] != c:
                    break
            if ct.parent[c] == c:
                for x in range(ct.width):
                    if t[c][x] is None:
                        define(c, x)
                        yield
        c += 1
    live = ct.live()
    relabel = {c: i for i, c in enumerate(live)}
    return [[relabel[ct.rep(t[c][x])] for x in range(ct.width)] for c in live]
