"""Ribbon trees, the moduli dimension formula, and gradient-tree counts on spheres.

Morse functions are linear height functions ``u -> <c, u>`` on the unit
sphere S^m.  Differences of such functions are again linear, hence Morse
with exactly two critical points, and their gradient flows are rotations
along great circles with a closed form.  Counts are exact parities; the
m = 2 triangle count is obtained by shooting and certified by sign margins.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .complex import GradingValue

EPSILON = 0.1
TOL = 1e-9

# ---------------------------------------------------------------------------
# dimension formula


def moduli_dimension(indices, k: int, m):
    """sum(ind) - (k-1)m + (k-3); ``m`` may be an int or a GradingValue."""
    if k < 2:
        raise ValueError("need at least two boundary vertices")
    total = sum(indices, GradingValue() if isinstance(m, GradingValue) else 0)
    if isinstance(m, GradingValue):
        return total - GradingValue((k - 1) * m.a, (k - 1) * m.b) + GradingValue(k - 3, 0)
    return total - (k - 1) * m + (k - 3)


# ---------------------------------------------------------------------------
# ribbon tree topologies


@dataclass(frozen=True)
class RibbonTree:
    """Planted plane tree: root 0 above ``shape``; leaves are labels 1..k-1.

    ``shape`` is a leaf label or a tuple of at least two subtrees listed in
    counterclockwise order.
    """
    shape: object

    @property
    def k(self) -> int:
        return len(self.leaves()) + 1

    def leaves(self):
        def walk(s):
            if isinstance(s, int):
                return [s]
            return [x for c in s for x in walk(c)]
        return walk(self.shape)

    def internal_vertices(self):
        out = []

        def walk(s):
            if isinstance(s, tuple):
                out.append(s)
                for c in s:
                    walk(c)
        walk(self.shape)
        return out

    def internal_edges(self) -> int:
        return max(len(self.internal_vertices()) - 1, 0)

    def degrees(self):
        """Degree of every internal vertex (children plus the outgoing edge)."""
        return [len(v) + 1 for v in self.internal_vertices()]

    def is_valid(self) -> bool:
        return all(d >= 3 for d in self.degrees()) and self.leaves() == list(range(1, self.k))

    def __str__(self):
        def fmt(s):
            return str(s) if isinstance(s, int) else "(" + " ".join(fmt(c) for c in s) + ")"
        return "0<" + fmt(self.shape)


def _compositions(n, parts_min=2):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first, 1):
            if 1 + len(rest) >= parts_min:
                yield (first,) + rest


@lru_cache(maxsize=None)
def _shapes(lo, hi):
    if hi - lo == 1:
        return (lo,)
    out = []
    for comp in _compositions(hi - lo):
        blocks = []
        a = lo
        for c in comp:
            blocks.append((a, a + c))
            a += c
        stack = [()]
        for b in blocks:
            stack = [s + (t,) for s in stack for t in _shapes(*b)]
        out.extend(stack)
    return tuple(out)


def enumerate_trees(k: int) -> list[RibbonTree]:
    """All ribbon tree topologies with k external vertices, k <= 6."""
    if not 2 <= k <= 6:
        raise ValueError("k must be between 2 and 6")
    return [RibbonTree(s) for s in _shapes(1, k)]


# ---------------------------------------------------------------------------
# linear Morse functions on spheres


def _unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


@dataclass
class Height:
    """The function u -> <c, u> on S^m."""
    c: np.ndarray

    def __sub__(self, other):
        return Height(self.c - other.c)

    def scaled(self, s):
        return Height(self.c * s)

    @property
    def top(self):
        return _unit(self.c)

    @property
    def bottom(self):
        return -_unit(self.c)

    def morse_index(self, p):
        m = len(self.c) - 1
        return m if np.dot(p, self.c) > 0 else 0

    def flow(self, u, t):
        """Closed form of the flow of -grad for time t (t may be negative)."""
        a = float(np.linalg.norm(self.c))
        top = self.top
        cos_psi = float(np.clip(np.dot(u, top), -1.0, 1.0))
        perp = u - cos_psi * top
        if np.linalg.norm(perp) < 1e-15:
            return np.array(u, dtype=float)
        perp = _unit(perp)
        psi = math.acos(cos_psi)
        new = 2 * math.atan(math.tan(psi / 2) * math.exp(a * t))
        return math.cos(new) * top + math.sin(new) * perp

    def integrate(self, u, t, rtol=1e-12):
        """Adaptive-step integration of the same flow, used for shooting."""
        c = self.c

        def rhs(_, x):
            g = c - np.dot(c, x) * x
            return -g
        sol = solve_ivp(rhs, (0.0, t), np.asarray(u, dtype=float), rtol=rtol, atol=rtol,
                        method="DOP853")
        return _unit(sol.y[:, -1])


def _unstable(g: Height, p):
    """Unstable set of p for -grad g: the point itself or the sphere minus the antipode."""
    if g.morse_index(p) == 0:
        return ("point", p)
    return ("open", -np.asarray(p))


def _meets(constraint, u):
    kind, q = constraint
    d = float(np.linalg.norm(np.asarray(u) - q))
    return (d < TOL, d) if kind == "point" else (d > TOL, d)


@dataclass
class MorseData:
    """Sphere dimension and the scaled functions of the rectangle model."""
    m: int
    functions: dict = field(default_factory=dict)

    @classmethod
    def rectangle(cls, m: int, scale: float = 1.0):
        if m == 1:
            dirs = [(math.cos(a), math.sin(a)) for a in (0.4, 1.9, 3.1, 4.6)]
        elif m == 2:
            dirs = [(1, 0.2, 0.1), (0.1, 1, -0.3), (-0.4, 0.2, 1), (0.3, -1, 0.5)]
        else:
            raise ValueError("only m = 1 and m = 2 are supported")
        f = [Height(_unit(d)) for d in dirs]
        e = EPSILON
        funcs = {"a1": f[0].scaled(e ** 3 * scale), "a2": f[1].scaled(e ** 2 * scale),
                 "b1": f[2].scaled(e * scale), "b2": f[3].scaled(scale)}
        return cls(m, funcs)


# ---------------------------------------------------------------------------
# the rectangle: corners x_ij between a_i and b_j

# counterclockwise regions and, for each corner, (region clockwise, region counterclockwise)
CORNERS = {"x11": ("a1", "b1"), "x21": ("b1", "a2"), "x22": ("a2", "b2"), "x12": ("b2", "a1")}
POSITIVE = ("x12", "x21")
NEGATIVE = ("x11", "x22")
# binary shapes with root x11: pairs joined at the far vertex, and the inner edge function
SHAPES = {
    "A": {"far": ("x22", "x12"), "near": "x21", "inner": ("a2", "a1")},
    "B": {"far": ("x21", "x22"), "near": "x12", "inner": ("b1", "b2")},
}


def parse_pattern(text: str):
    """``"vv->v^"`` gives decorations of (x12, x21) and (x11, x22).

    ``x`` marks an endpoint, which acts as a check at a positive corner and
    as a hat at a negative one.
    """
    try:
        src, tgt = (s.strip() for s in text.split("->"))
    except ValueError:
        raise ValueError(f"malformed pattern {text!r}") from None
    if len(src) != 2 or len(tgt) != 2 or set(src + tgt) - {"v", "^", "x"}:
        raise ValueError(f"malformed pattern {text!r}")
    src = src.replace("x", "v")
    tgt = tgt.replace("x", "^")
    return dict(zip(POSITIVE + NEGATIVE, src + tgt))


def all_patterns():
    out = []
    for s in ("vv", "v^", "^v", "^^"):
        for t in ("vv", "v^", "^v", "^^"):
            out.append(f"{s}->{t}")
    return out


def pattern_S(pattern: str) -> int:
    dec = parse_pattern(pattern)
    return sum(dec[x] == "v" for x in POSITIVE) + sum(dec[x] == "^" for x in NEGATIVE)


def _corner_point(data: MorseData, corner, dec):
    i, j = corner[1], corner[2]
    diff = data.functions["b" + j] - data.functions["a" + i]
    return diff.top if dec == "v" else diff.bottom


def _corner_function(data: MorseData, corner):
    cw, ccw = CORNERS[corner]
    # looking inward the clockwise region is on the left
    return data.functions[cw] - data.functions[ccw]


def corner_indices(data: MorseData, pattern: str) -> dict:
    dec = parse_pattern(pattern)
    out = {}
    for x, d in dec.items():
        p = _corner_point(data, x, d)
        out[x] = _corner_function(data, x).morse_index(p)
    return out


def rectangle_dimension(pattern: str) -> GradingValue:
    """Unpinned moduli dimension as a value in n, with m = n - 1."""
    m = GradingValue(-1, 1)
    S = pattern_S(pattern)
    return moduli_dimension([GradingValue(-S, S)], 4, m)


@dataclass
class TreeCount:
    count: int | None
    dimension: object
    refused: str | None = None
    margin: float | None = None
    solutions: list = field(default_factory=list)

    def to_json(self):
        return {"count": self.count, "dimension": str(self.dimension), "refused": self.refused,
                "margin": self.margin,
                "solutions": [{k: [round(float(x), 12) for x in v] for k, v in s.items()}
                              for s in self.solutions]}


def count_rectangle(data: MorseData, pattern: str, shape: str = "A", length: float = 1.0):
    """Parity of rigid trees with the cross-ratio pinned to ``(shape, length)``.

    The pin fixes the tree shape and the inner edge length, cutting the
    dimension by one.  Positions of the two internal vertices are then
    propagated from pinned corners through the inner edge.
    """
    ind = corner_indices(data, pattern)
    dim = moduli_dimension(list(ind.values()), 4, data.m) - 1
    if dim != 0:
        return TreeCount(None, dim, refused=f"pinned dimension {dim} is not 0")
    sh = SHAPES[shape]
    dec = parse_pattern(pattern)
    cons = {x: _unstable(_corner_function(data, x), _corner_point(data, x, dec[x])) for x in CORNERS}
    near = ("x11", sh["near"])
    l, r = sh["inner"]
    inner = data.functions[l] - data.functions[r]
    far_pts = [cons[x][1] for x in sh["far"] if cons[x][0] == "point"]
    near_pts = [cons[x][1] for x in near if cons[x][0] == "point"]
    sols = []
    if far_pts and not near_pts:
        for v in far_pts[:1]:
            w = inner.flow(v, length)
            sols.append({"far": v, "near": w})
    elif near_pts and not far_pts:
        for w in near_pts[:1]:
            v = inner.flow(w, -length)
            sols.append({"far": v, "near": w})
    else:
        return TreeCount(None, dim, refused="pinned corners on both sides of the inner edge")
    good, margin = [], math.inf
    for s in sols:
        ok = True
        for x in sh["far"]:
            hit, d = _meets(cons[x], s["far"])
            ok &= hit
            if cons[x][0] == "open":
                margin = min(margin, d)
        for x in near:
            hit, d = _meets(cons[x], s["near"])
            ok &= hit
            if cons[x][0] == "open":
                margin = min(margin, d)
        if ok:
            good.append(s)
    return TreeCount(len(good) % 2, dim, margin=margin, solutions=good)


def shapes_meet_at_zero(data: MorseData, pattern: str) -> bool:
    """Both binary shapes degenerate to the same 4-valent tree at length 0."""
    a = count_rectangle(data, pattern, "A", 0.0)
    b = count_rectangle(data, pattern, "B", 0.0)
    if a.count != 1 or b.count != 1:
        return False
    pa = a.solutions[0]["near"]
    pb = b.solutions[0]["near"]
    return bool(np.linalg.norm(pa - pb) < 1e-9)


# ---------------------------------------------------------------------------
# the triangle on S^2


def triangle_data(m: int = 2):
    if m not in (1, 2):
        raise ValueError("only m = 1 and m = 2 are supported")
    dirs = [(0.2, 0.1, 1.0), (1.0, 0.3, -0.2), (-0.3, 1.0, 0.4)][:] if m == 2 else \
        [(math.cos(a), math.sin(a)) for a in (0.5, 2.2, 4.0)]
    f = [Height(_unit(d)).scaled(EPSILON ** (2 - i)) for i, d in enumerate(dirs)]
    return f


def count_triangle(m: int = 2, samples: int = 720) -> TreeCount:
    """Tripod with v1 a top generator of f2 - f1 and v2, v0 bottom generators.

    The leg from v2 has length 0, so the internal vertex sits at v2.  The
    leg from v1 is found by shooting over the unit sphere of directions at
    v1; each zero of the signed miss distance is bracketed, refined, and
    accepted only when the flow line actually passes through v2.
    """
    f0, f1, f2 = triangle_data(m)
    g1, g2, g0 = f2 - f1, f0 - f2, f0 - f1
    v1, v2, v0 = g1.top, g2.bottom, g0.bottom
    # the root carries the co-index
    ind = [g1.morse_index(v1), g2.morse_index(v2), m - g0.morse_index(v0)]
    dim = moduli_dimension(ind, 3, m)
    if dim != 0:
        return TreeCount(None, dim, refused=f"dimension {dim} is not 0")
    w = v2
    # v0 leg: w must lie off the antipode of v0 for the flow ending there
    ok0, margin0 = _meets(("open", -v0), w)
    hits, margin = _shoot(g1, v1, w, m, samples)
    count = (len(hits) if ok0 else 0) % 2
    return TreeCount(count, dim, margin=min(margin, margin0),
                     solutions=[{"vertex": w, "direction": h} for h in hits])


def _shoot(g: Height, start, target, m, samples):
    """Flow lines of -grad g leaving the maximum ``start`` through ``target``."""
    top = g.top
    basis = np.linalg.svd(top.reshape(1, -1))[2][1:]
    if m == 1:
        dirs = [basis[0], -basis[0]]
        params = None
    else:
        params = np.linspace(0, 2 * math.pi, samples, endpoint=False)
        dirs = None

    def launch(d):
        u = _unit(top + 1e-3 * d)
        # flow until the angle from the top matches that of the target
        psi0 = math.acos(np.clip(np.dot(u, top), -1, 1))
        psi1 = math.acos(np.clip(np.dot(target, top), -1, 1))
        a = np.linalg.norm(g.c)
        t = math.log(math.tan(psi1 / 2) / math.tan(psi0 / 2)) / a
        return g.integrate(u, t)

    hits, margin = [], math.inf
    if m == 1:
        for d in dirs:
            end = launch(d)
            miss = float(np.linalg.norm(end - target))
            if miss < 1e-6:
                hits.append(d)
            else:
                margin = min(margin, miss)
        return hits, margin

    def signed(theta):
        d = math.cos(theta) * basis[0] + math.sin(theta) * basis[1]
        end = launch(d)
        return float(np.dot(np.cross(top, end), target)), end, d

    vals = [signed(th) for th in params]
    for i in range(samples):
        s0, _, _ = vals[i]
        s1, _, _ = vals[(i + 1) % samples]
        if s0 == 0 or s0 * s1 < 0:
            lo, hi = params[i], params[i] + 2 * math.pi / samples
            root = brentq(lambda th: signed(th)[0], lo, hi, xtol=1e-13)
            _, end, d = signed(root)
            miss = float(np.linalg.norm(end - target))
            if miss < 1e-6:
                hits.append(d)
            else:
                margin = min(margin, miss)
        else:
            margin = min(margin, abs(s0))
    if margin < TOL:
        raise RuntimeError("shooting certification failed")
    return hits, margin


def dimension_table():
    """Pattern -> (S, unpinned dimension in n, pinned dimension in n)."""
    out = {}
    for p in all_patterns():
        d = rectangle_dimension(p)
        out[p] = (pattern_S(p), d, d - GradingValue(1, 0))
    return out
