"""Khovanov homology of braid closures over F2 by the cube of resolutions.

Positive letters are positive crossings.  The oriented smoothing of a
braid crossing keeps both strands vertical; it is the 0-smoothing of a
positive crossing and the 1-smoothing of a negative one.
"""
from __future__ import annotations

import itertools

from . import gf2
from .braid import BraidWord
from .homology import HomologyTable, compare_tables

MAX_CROSSINGS = 8


def _circles(b: BraidWord, state):
    """Union-find the closed 1-manifold of a resolution; returns node -> circle id."""
    k, L = b.strands, len(b.letters)
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(x, y):
        parent[find(x)] = find(y)

    for t, g in enumerate(b.letters):
        i = abs(g)
        vertical = (state[t] == 0) == (g > 0)
        for p in range(1, k + 1):
            if p in (i, i + 1):
                continue
            join((t, p), (t + 1, p))
        if vertical:
            join((t, i), (t + 1, i))
            join((t, i + 1), (t + 1, i + 1))
        else:
            join((t, i), (t, i + 1))
            join((t + 1, i), (t + 1, i + 1))
    for p in range(1, k + 1):
        join((L, p), (0, p))
    roots = sorted({find((t, p)) for t in range(L + 1) for p in range(1, k + 1)})
    ids = {r: n for n, r in enumerate(roots)}
    return {(t, p): ids[find((t, p))] for t in range(L + 1) for p in range(1, k + 1)}, len(roots)


class CubeComplex:
    """Chain groups and edge maps of the cube of resolutions."""

    def __init__(self, b: BraidWord):
        if len(b.letters) > MAX_CROSSINGS:
            raise ValueError(f"at most {MAX_CROSSINGS} crossings are supported")
        self.braid = b
        c = self.c = len(b.letters)
        self.n_plus = sum(1 for g in b.letters if g > 0)
        self.n_minus = c - self.n_plus
        self.states = list(itertools.product((0, 1), repeat=c))
        self.circles = {s: _circles(b, s) for s in self.states}
        # basis: (state, labels) with label 1 = v+ and 0 = v-
        self.basis = []
        for s in self.states:
            _, m = self.circles[s]
            for lab in itertools.product((1, 0), repeat=m):
                self.basis.append((s, lab))
        self.index = {v: i for i, v in enumerate(self.basis)}

    def grading(self, v):
        s, lab = v
        r = sum(s)
        deg = sum(1 if x else -1 for x in lab)
        return r - self.n_minus, deg + r + self.n_plus - 2 * self.n_minus

    def _edge_image(self, v, t):
        """Image of basis vector v under the edge that flips crossing t from 0 to 1."""
        s, lab = v
        s2 = s[:t] + (1,) + s[t + 1:]
        nodes, m = self.circles[s]
        nodes2, m2 = self.circles[s2]
        # circles of s2 that are unions of circles of s
        old_to_new = {}
        for node, a in nodes.items():
            old_to_new.setdefault(a, set()).add(nodes2[node])
        new_from_old = {}
        for a, bs in old_to_new.items():
            for bb in bs:
                new_from_old.setdefault(bb, set()).add(a)
        new_lab = [None] * m2
        touched_new = set()
        for bb, olds in new_from_old.items():
            (a, *rest) = olds
            if not rest and len(old_to_new[a]) == 1:
                new_lab[bb] = lab[a]
            else:
                touched_new.add(bb)
        if m2 == m - 1:
            (bb,) = touched_new
            a1, a2 = sorted(new_from_old[bb])
            x, y = lab[a1], lab[a2]
            if x == 0 and y == 0:
                return []
            new_lab[bb] = 1 if x == 1 and y == 1 else 0
            return [(s2, tuple(new_lab))]
        if m2 == m + 1:
            b1, b2 = sorted(touched_new)
            (a,) = new_from_old[b1]
            out = []
            pairs = [(1, 0), (0, 1)] if lab[a] == 1 else [(0, 0)]
            for p, q in pairs:
                nl = list(new_lab)
                nl[b1], nl[b2] = p, q
                out.append((s2, tuple(nl)))
            return out
        raise AssertionError("an edge map must merge or split")

    def differential(self) -> dict:
        """{source index: set of target indices} over F2."""
        d = {}
        for v in self.basis:
            s, _ = v
            acc = set()
            for t in range(self.c):
                if s[t] == 0:
                    for w in self._edge_image(v, t):
                        acc ^= {self.index[w]}
            if acc:
                d[self.index[v]] = acc
        return d

    def check_d_squared(self, d=None):
        d = self.differential() if d is None else d
        for src, outs in d.items():
            acc = set()
            for mid in outs:
                acc ^= d.get(mid, set())
            if acc:
                return False
        return True


def khovanov_homology(b: BraidWord) -> dict:
    """{(i, j): dim} over F2."""
    cube = CubeComplex(b)
    d = cube.differential()
    assert cube.check_d_squared(d), "cube differential does not square to zero"
    grade = [cube.grading(v) for v in cube.basis]
    count = {}
    for g in grade:
        count[g] = count.get(g, 0) + 1
    blocks = {}
    for src, outs in d.items():
        blocks.setdefault(grade[src], []).append(sorted(outs))
    ranks = {}
    for g, rows in blocks.items():
        ncols = max(max(r) for r in rows) + 1
        ranks[g] = gf2.rank(rows, ncols)
    out = {}
    for (i, j), c in count.items():
        dim = c - ranks.get((i, j), 0) - ranks.get((i - 1, j), 0)
        if dim:
            out[(i, j)] = dim
    return dict(sorted(out.items()))


def fold(table: dict, modulus: int) -> HomologyTable:
    """Collapse a bigraded table to residues of i - j."""
    dims = {}
    for (i, j), v in table.items():
        k = (i - j) % modulus
        dims[k] = dims.get(k, 0) + v
    return HomologyTable(dims)


def compare_conjecture(kh_table: dict, khsharp_table: HomologyTable, n: int) -> dict:
    if n < 4:
        raise ValueError("the comparison needs n >= 4")
    return compare_tables(fold(kh_table, n - 2), khsharp_table, n - 2)


def table_to_json(table: dict) -> dict:
    return {f"{i},{j}": v for (i, j), v in table.items()}
