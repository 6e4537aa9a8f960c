"""Domains between generator tuples, their indices, and the differential.

A domain is the unique 2-chain in the disk whose boundary runs along the
reference arcs from target to source points and along the image arcs from
source to target points.  Only chains with multiplicities in {0, 1} are
counted; anything the rule table does not cover is returned as Unknown
instead of being guessed.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .arcsys import BOTTOM, ArcDiagram, Slot
from .complex import (CHECK, ENDPOINT, HAT, Generator, GradingError, GradingValue,
                      enumerate_generators, enumerate_sites, solve_gradings)
from .homology import LaurentPoly

# orientation of the boundary chain relative to the chart; flips every arrow
ORIENTATION = 1

UNKNOWN = "unknown"
OUT_OF_SCOPE = "out-of-scope"

RULES = {
    "R0": "rectangle without enclosed punctures: count 1 iff S = 3",
    "R1": "one enclosed puncture: count 1 iff index 1",
    "R2a": "two enclosed punctures reached from negative corners, one check at the positive corners: count 1",
    "R2b": "two enclosed punctures reached from negative corners, no check at the positive corners: count 0",
    "R2a*": "two enclosed punctures reached from positive corners, one hat at the negative corners: count 1",
    "R2b*": "two enclosed punctures reached from positive corners, no hat at the negative corners: count 0",
    "IDX": "index differs from 1: no contribution",
    "SPLIT": "disconnected pair of bigons: index is a multiple of n-1, no contribution",
}


@dataclass
class Domain:
    source: tuple
    target: tuple
    multiplicities: dict
    moving: tuple
    chi: int
    components: int
    enclosed: int
    status: str  # ok | negative | high
    enclosed_set: frozenset = frozenset()
    ref_ends: tuple = ()

    @property
    def corners(self):
        return tuple(self.source[i - 1] for i in self.moving) + \
            tuple(self.target[i - 1] for i in self.moving)

    @property
    def is_disk(self):
        return self.status == "ok" and self.components == 1 and self.chi == 1

    def faces(self):
        return {r: m for r, m in self.multiplicities.items() if m}


def effective_S(domain: Domain, src: Generator, tgt: Generator) -> int:
    s = 0
    for i in domain.moving:
        if src.decorations[i - 1] in (CHECK, ENDPOINT):
            s += 1
        if tgt.decorations[i - 1] in (HAT, ENDPOINT):
            s += 1
    return s


def maslov(domain: Domain, S: int) -> GradingValue:
    """Maslov index (S + C - 2k + 2)(n - 1) of a disk with 2k corners."""
    if not domain.is_disk:
        raise ValueError("Maslov index is only defined for disk domains")
    m = S + domain.enclosed - 2 * len(domain.moving) + 2
    return GradingValue(-m, m)


def index(domain: Domain, S: int) -> GradingValue:
    """Fredholm index: Maslov index minus (k - 1)(n - 2) for k moving strands.

    For quadrilaterals this is (S - 3 + C)(n - 1) + 1.
    """
    k = len(domain.moving)
    return maslov(domain, S) - GradingValue(-2 * (k - 1), k - 1)


@dataclass
class Unknown:
    source: str
    target: str
    faces: dict
    C: int
    S: int
    reason: str

    def to_json(self):
        return {"source": self.source, "target": self.target,
                "faces": {str(k): v for k, v in self.faces.items()},
                "C": self.C, "S": self.S, "reason": self.reason}


def count(domain: Domain, src: Generator, tgt: Generator, n: int):
    """Return ``(value, rule)`` with value 0, 1 or UNKNOWN."""
    for i in range(1, len(src.points) + 1):
        if i not in domain.moving and src.decorations[i - 1] != tgt.decorations[i - 1]:
            return 0, "IDX"
    S = effective_S(domain, src, tgt)
    k = len(domain.moving)
    if domain.status == "ok" and domain.components == 2 and k == 2 and domain.chi == 2:
        if n >= 3:
            return 0, "SPLIT"
        return UNKNOWN, "split domain at n = 2"
    if not domain.is_disk:
        return UNKNOWN, f"support with chi={domain.chi}, {domain.components} components"
    if k not in (1, 2):
        return OUT_OF_SCOPE, f"{2 * k} corners"
    if index(domain, S).at(n) != 1:
        return 0, "IDX"
    if k == 1:
        return UNKNOWN, "index-1 bigon"
    C = domain.enclosed
    if C == 0:
        return (1 if S == 3 else 0), "R0"
    if C == 1:
        return 1, "R1"
    if C == 2:
        if any(src.decorations[i - 1] == ENDPOINT or tgt.decorations[i - 1] == ENDPOINT
               for i in domain.moving):
            return UNKNOWN, "two enclosed punctures with an endpoint corner"
        side = _branch_side(domain)
        if side is None:
            return UNKNOWN, "two enclosed punctures in an unrecognized position"
        if side == "negative":
            checks = sum(1 for i in domain.moving if src.decorations[i - 1] == CHECK)
            if checks == 1:
                return 1, "R2a"
            if checks == 0:
                return 0, "R2b"
        else:
            hats = sum(1 for i in domain.moving if tgt.decorations[i - 1] == HAT)
            if hats == 1:
                return 1, "R2a*"
            if hats == 0:
                return 0, "R2b*"
        return UNKNOWN, "two enclosed punctures, unmatched decoration pattern"
    return UNKNOWN, f"{C} enclosed punctures"


def _branch_side(domain: Domain):
    """Which corners the moving reference arcs leave from toward their punctures.

    Each enclosed puncture must be the end of a moving reference arc; the
    arc runs on from the corner nearer its end.  Returns "negative" or
    "positive" when all such corners agree, else None.
    """
    ends = {domain.ref_ends[i - 1]: i for i in domain.moving}
    if set(domain.enclosed_set) != set(ends):
        return None
    sides = set()
    for i in ends.values():
        s, t = domain.source[i - 1], domain.target[i - 1]
        sides.add("negative" if t.ref_pos > s.ref_pos else "positive")
    return sides.pop() if len(sides) == 1 else None


# ---------------------------------------------------------------------------

class DomainFinder:
    """Per-diagram cache of the region graph used to solve for domains."""

    def __init__(self, diagram: ArcDiagram):
        self.diagram = diagram
        ch = self.chart = diagram.chart
        self.adj = {r: [] for r in set(ch.region_of.values())}
        for key, (left, right) in ch.arc_edge_sides.items():
            self.adj[left].append((right, key, -1))
            self.adj[right].append((left, key, +1))
        self._cells()

    def _real_vertex(self, v):
        if v[0] == "X":
            return v
        s = v[1]
        if s.kind == "E":
            return ("E", s.event)
        return (s.kind, s.index)

    def _cells(self):
        ch = self.chart
        self.face_edges = {}
        self.face_verts = {}
        for f, cyc in enumerate(ch.face_cycles):
            if f == ch.outer_face:
                continue
            es, vs = set(), set()
            for h in cyc:
                u, v, e, d = ch.half[h]
                lab = ch.edges[e][2]
                if lab[0] == "bnd" and lab[1][0] == "slit":
                    es.add(lab[1])
                else:
                    es.add(("e", e))
                vs.add(self._real_vertex(u))
            self.face_edges[f] = es
            self.face_verts[f] = vs

    def _vertex(self, p):
        return self.chart.point_vertex[p]

    def domain(self, src, tgt) -> Domain | None:
        ch = self.chart
        k = len(src)
        moving = tuple(i + 1 for i in range(k) if src[i] != tgt[i])
        if not moving:
            return None
        coef = {}
        for i in moving:
            for e, sg in ch.arc_edge_path(("ref", i), self._vertex(tgt[i - 1]),
                                          self._vertex(src[i - 1])):
                coef[(("ref", i), e)] = coef.get((("ref", i), e), 0) + ORIENTATION * sg
        s_on = {p.img_arc: p for p in src}
        t_on = {p.img_arc: p for p in tgt}
        for j, ps in s_on.items():
            pt = t_on[j]
            if ps == pt:
                continue
            for e, sg in ch.arc_edge_path(("img", j), self._vertex(ps), self._vertex(pt)):
                coef[(("img", j), e)] = coef.get((("img", j), e), 0) + ORIENTATION * sg
        mult = {r: 0 for r in ch.exterior_regions}
        queue = deque(mult)
        while queue:
            u = queue.popleft()
            for v, key, sgn in self.adj[u]:
                val = mult[u] + sgn * coef.get(key, 0)
                if v not in mult:
                    mult[v] = val
                    queue.append(v)
                elif mult[v] != val:
                    raise RuntimeError("boundary chain does not bound a domain")
        for r in ch.exterior_regions:
            if mult[r] != 0:
                raise RuntimeError("domain meets the outer boundary")
        vals = [m for r, m in mult.items() if r not in ch.exterior_regions]
        status = "ok"
        if any(m < 0 for m in vals):
            status = "negative"
        elif any(m > 1 for m in vals):
            status = "high"
        mult = {r: m for r, m in mult.items() if r not in ch.exterior_regions}
        chi, comps = self._topology(mult)
        enclosed = set()
        corner_punct = {ch.arcs[("ref", p.ref_arc)].puncture
                        for i in moving for p in (src[i - 1], tgt[i - 1]) if p.kind == BOTTOM}
        live = {ch.arcs[("ref", i)].puncture for i in moving}
        for j, regs in ch.puncture_regions.items():
            if j in corner_punct or j not in live:
                continue
            if any(mult.get(r, 0) > 0 for r in regs):
                enclosed.add(j)
        ends = tuple(ch.arcs[("ref", i)].puncture for i in range(1, k + 1))
        return Domain(tuple(src), tuple(tgt), mult, moving, chi, comps, len(enclosed), status,
                      frozenset(enclosed), ends)

    def _topology(self, mult):
        ch = self.chart
        faces = [f for f, r in ch.region_of.items() if mult.get(r, 0) > 0]
        if not faces:
            return 0, 0
        es, vs = set(), set()
        owner = {}
        parent = {f: f for f in faces}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a
        for f in faces:
            es |= self.face_edges[f]
            vs |= self.face_verts[f]
            for e in self.face_edges[f]:
                if e in owner:
                    parent[find(f)] = find(owner[e])
                else:
                    owner[e] = f
        comps = len({find(f) for f in faces})
        return len(vs) - len(es) + len(faces), comps


@dataclass
class Arrow:
    source: Generator
    target: Generator
    rule: str
    faces: dict


@dataclass
class Complex:
    diagram: ArcDiagram
    n: int
    generators: list
    arrows: list
    unknown: list
    out_of_scope: list
    relations: list
    audit: list = field(default_factory=list)

    @cached_property
    def gradings(self):
        return solve_gradings(self.generators, self.relations)

    @cached_property
    def grading_error(self) -> GradingError | None:
        try:
            self.gradings
        except GradingError as exc:
            return exc
        return None

    @property
    def partial(self) -> bool:
        return bool(self.unknown) or self.grading_error is not None

    @cached_property
    def position(self):
        return {g: i for i, g in enumerate(self.generators)}

    def matrix(self) -> dict:
        """Sparse matrix {(target, source): LaurentPoly}; every arrow is ħ."""
        out = {}
        for a in self.arrows:
            key = (self.position[a.target], self.position[a.source])
            out[key] = out.get(key, LaurentPoly()) + LaurentPoly({1: 1})
        return {k: v for k, v in out.items() if v}

    def relations_text(self) -> dict[str, list[str]]:
        """{source name: sorted target names} for nonzero columns."""
        cols = {}
        for (t, s), v in self.matrix().items():
            cols.setdefault(self.generators[s].name, []).append(self.generators[t].name)
        return {s: sorted(ts) for s, ts in sorted(cols.items())}


def assemble(diagram: ArcDiagram, n: int) -> Complex:
    finder = DomainFinder(diagram)
    sites = enumerate_sites(diagram)
    gens = enumerate_generators(diagram)
    by_site = {}
    for g in gens:
        by_site.setdefault(g.points, []).append(g)
    arrows, unknown, oos, relations, audit = [], [], [], [], []
    for s in sites:
        for t in sites:
            if s == t:
                continue
            dom = finder.domain(s, t)
            if dom is None or dom.status == "negative":
                continue
            if dom.status == "high":
                oos.append(Unknown(_site_name(s), _site_name(t), dom.faces(), dom.enclosed, 0,
                                   "multiplicity above 1"))
                continue
            if dom.is_disk:
                all_check = Generator(s, tuple(CHECK if not p.is_endpoint else ENDPOINT for p in s))
                t_check = Generator(t, tuple(CHECK if not p.is_endpoint else ENDPOINT for p in t))
                relations.append((s, t, maslov(dom, effective_S(dom, all_check, t_check))))
            for gs in by_site[s]:
                for gt in by_site[t]:
                    val, rule = count(dom, gs, gt, n)
                    if val == OUT_OF_SCOPE:
                        oos.append(Unknown(gs.name, gt.name, dom.faces(), dom.enclosed,
                                           effective_S(dom, gs, gt), rule))
                        continue
                    if val == UNKNOWN:
                        unknown.append(Unknown(gs.name, gt.name, dom.faces(), dom.enclosed,
                                               effective_S(dom, gs, gt), rule))
                        continue
                    if rule != "IDX":
                        audit.append({"source": gs.name, "target": gt.name, "rule": rule,
                                      "count": val, "C": dom.enclosed,
                                      "S": effective_S(dom, gs, gt)})
                    if val == 1:
                        arrows.append(Arrow(gs, gt, rule, dom.faces()))
    return Complex(diagram, n, gens, arrows, unknown, oos, relations, audit)


def _site_name(site):
    return "{" + ",".join(p.name for p in site) + "}"


def verify_d_squared(cx: Complex):
    """Return ``(True, None)`` or ``(False, (target, source))`` for d∘d."""
    m = cx.matrix()
    cols = {}
    for (t, s), v in m.items():
        cols.setdefault(s, []).append((t, v))
    for s, outs in cols.items():
        acc = {}
        for mid, v in outs:
            for t, w in cols.get(mid, []):
                acc[t] = acc.get(t, LaurentPoly()) + v * w
        for t, v in acc.items():
            if v:
                return False, (cx.generators[t].name, cx.generators[s].name)
    return True, None
