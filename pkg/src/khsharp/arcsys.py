"""Arc systems in the punctured half disk and their planar arrangement.

Model
-----
Punctures ``p_i = (i, 0)`` and top anchors ``t_i = (i, 1)`` for ``i = 1..k``.
Every puncture carries a *slit* running straight down to the bottom edge.
Cutting along the slits leaves a simply connected region ``R``; an arc from
an anchor to a puncture is recorded by the sequence of slits it crosses
(``+j`` crossing slit ``j`` in the direction of increasing first coordinate,
``-j`` the other way).  Freely reduced words with no trailing crossing of the
end puncture's own slit are exactly the arcs with no bigons against the slit
system, and hence in minimal position with the reference arcs.

Half twists act on words through the Artin action on the free group of the
punctured disk.  The cut-open region ``R`` is drawn as the unit disk (the
*chart*): boundary slots sit at exact rational points of the unit circle and
every piece of an arc between two slit crossings becomes a straight chord.
Straight chords in a convex region meet at most once, so the chart realizes
minimal position, and the two sides of each slit are glued back when faces
are assembled.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, cmp_to_key
from typing import Iterable

from .braid import BraidWord

# Letter naming for interior intersection points, ordered from the anchor
# down each reference arc.
INTERIOR_LETTERS = ("y", "w", "u", "v", "q", "r", "s", "t")

TOP, BOTTOM, INTERIOR = "top", "bottom", "interior"


class DiagramError(RuntimeError):
    pass


@dataclass(frozen=True)
class DiskModel:
    kappa: int

    @property
    def punctures(self):
        return tuple((Fraction(i), Fraction(0)) for i in range(1, self.kappa + 1))

    @property
    def anchors(self):
        return tuple((Fraction(i), Fraction(1)) for i in range(1, self.kappa + 1))

    @property
    def bbox(self):
        return (Fraction(0), Fraction(-1), Fraction(self.kappa + 1), Fraction(1))


@dataclass(frozen=True)
class Arc:
    """Arc from top anchor ``anchor`` to puncture ``puncture``."""
    anchor: int
    puncture: int
    word: tuple[int, ...] = ()


# ---------------------------------------------------------------------------
# word calculus

def free_reduce(word: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for g in word:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def reduce_arc(arc: Arc) -> Arc:
    w = list(free_reduce(arc.word))
    while w and abs(w[-1]) == arc.puncture:
        w.pop()
    return Arc(arc.anchor, arc.puncture, tuple(w))


def _twist_letter(g: int, i: int, sign: int) -> tuple[int, ...]:
    a = abs(g)
    s = 1 if g > 0 else -1
    if sign > 0:
        if a == i:
            img = (i, i + 1, -i)
        elif a == i + 1:
            img = (i,)
        else:
            return (g,)
    else:
        if a == i:
            img = (i + 1,)
        elif a == i + 1:
            img = (-(i + 1), i, i + 1)
        else:
            return (g,)
    if s > 0:
        return img
    return tuple(-x for x in reversed(img))


def twist_arc(arc: Arc, letter: int, reduce: bool = True) -> Arc:
    """Image of ``arc`` under the half twist ``letter`` (sign = handedness)."""
    i, sign = abs(letter), (1 if letter > 0 else -1)
    word: list[int] = []
    for g in arc.word:
        word.extend(_twist_letter(g, i, sign))
    s = arc.puncture
    if sign > 0:
        if s == i:
            word.append(i)
            s = i + 1
        elif s == i + 1:
            s = i
    else:
        if s == i:
            s = i + 1
        elif s == i + 1:
            word.append(-(i + 1))
            s = i
    out = Arc(arc.anchor, s, tuple(word))
    return reduce_arc(out) if reduce else out


# ---------------------------------------------------------------------------
# diagrams

@dataclass(frozen=True)
class IntersectionPoint:
    ref_arc: int
    img_arc: int
    kind: str
    location: tuple[Fraction, Fraction]
    ref_pos: int
    img_pos: int
    name: str = ""

    @property
    def is_endpoint(self):
        return self.kind != INTERIOR


@dataclass
class ArcDiagram:
    disk: DiskModel
    reference: tuple[Arc, ...]
    image: tuple[Arc, ...]

    @property
    def kappa(self):
        return self.disk.kappa

    @property
    def is_reduced(self):
        return all(reduce_arc(a) == a for a in self.reference + self.image)

    @cached_property
    def chart(self) -> "Chart":
        if not self.is_reduced:
            raise DiagramError("chart needs a bigon-free diagram; call reduce_bigons first")
        return Chart(self)

    @property
    def intersections(self) -> list[IntersectionPoint]:
        return self.chart.points

    def counts(self) -> dict[str, int]:
        """Intersection counts by kind; valid for unreduced diagrams too."""
        out = {TOP: 0, BOTTOM: 0, INTERIOR: 0}
        for r in self.reference:
            for m in self.image:
                if r.anchor == m.anchor:
                    out[TOP] += 1
                if r.puncture == m.puncture:
                    out[BOTTOM] += 1
        if self.is_reduced:
            out[INTERIOR] = sum(1 for p in self.chart.points if p.kind == INTERIOR)
        elif all(r.word == () for r in self.reference):
            out[INTERIOR] = _standard_crossings(self)
        else:
            raise DiagramError("interior count of an unreduced diagram needs standard reference arcs")
        return out

    def to_json(self) -> dict:
        return diagram_to_json(self)


def reference_system(kappa: int) -> ArcDiagram:
    if kappa < 1:
        raise ValueError("kappa must be positive")
    ref = tuple(Arc(i, i) for i in range(1, kappa + 1))
    return ArcDiagram(DiskModel(kappa), ref, ref)


def apply_braid(diagram: ArcDiagram, b: BraidWord, reduce: bool = True) -> ArcDiagram:
    """Image system ``h_b(reference)``; letters act left to right."""
    if b.strands != diagram.kappa:
        raise ValueError(f"braid on {b.strands} strands, diagram has {diagram.kappa}")
    image = list(diagram.reference)
    for g in b.letters:
        image = [twist_arc(a, g, reduce=reduce) for a in image]
    return ArcDiagram(diagram.disk, diagram.reference, tuple(image))


def reduce_bigons(diagram: ArcDiagram, order: str = "innermost") -> ArcDiagram:
    """Remove every bigon against the slit system.

    ``order`` picks which cancellable pair goes first: ``"innermost"``
    (adjacent pairs left to right, the stack reduction) or ``"rightmost"``.
    Free reduction is confluent so both reach the same diagram.
    """
    def red(arc: Arc) -> Arc:
        if order == "innermost":
            return reduce_arc(arc)
        w = list(arc.word)
        changed = True
        while changed:
            changed = False
            for k in range(len(w) - 2, -1, -1):
                if w[k] == -w[k + 1]:
                    del w[k:k + 2]
                    changed = True
                    break
            if not changed and w and abs(w[-1]) == arc.puncture:
                w.pop()
                changed = True
        return Arc(arc.anchor, arc.puncture, tuple(w))

    return ArcDiagram(diagram.disk, tuple(red(a) for a in diagram.reference),
                      tuple(red(a) for a in diagram.image))


def arc_slide(diagram: ArcDiagram, i: int, j: int, braid: BraidWord | None = None) -> ArcDiagram:
    """Slide reference arc ``i`` across the adjacent arc ``j``.

    In the half disk the slid system is the image of the reference system
    under the half twist exchanging punctures ``i`` and ``j``, oriented so
    that arc ``i`` picks up the winding.  The image system is rebuilt from
    the new reference arcs with ``braid`` (or left as is when ``None``).
    """
    if i == j or abs(i - j) != 1:
        raise ValueError(f"arcs {i} and {j} are not adjacent")
    letter = min(i, j) if j > i else -min(i, j)
    ref = tuple(twist_arc(a, letter) for a in diagram.reference)
    if braid is None:
        image = diagram.image
    else:
        image = list(ref)
        for g in braid.letters:
            image = [twist_arc(a, g) for a in image]
        image = tuple(image)
    return ArcDiagram(diagram.disk, ref, image)


def _standard_crossings(diagram: ArcDiagram) -> int:
    """Crossings with vertical reference arcs, counted chord by chord."""
    total = 0
    for arc in diagram.image:
        pos = [Fraction(arc.anchor)]
        for g in arc.word:
            j = abs(g)
            eps = Fraction(1, 4)
            pos.append(j - eps if g > 0 else j + eps)
            pos.append(j + eps if g > 0 else j - eps)
        pos.append(Fraction(arc.puncture))
        for a, b in zip(pos[0::2], pos[1::2]):
            lo, hi = min(a, b), max(a, b)
            total += sum(1 for r in diagram.reference if lo < r.anchor < hi)
    return total


# ---------------------------------------------------------------------------
# chart

@dataclass(frozen=True)
class Slot:
    """A point on the boundary circle of the chart.

    kind: "T" anchor, "P" puncture, "E" slit crossing side,
    "B" bottom end of one side of a slit.
    """
    kind: str
    index: int
    side: str = ""
    event: tuple = ()


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


class Chart:
    def __init__(self, diagram: ArcDiagram):
        self.diagram = diagram
        self.kappa = diagram.kappa
        self.arcs: dict[tuple, Arc] = {}
        for a in diagram.reference:
            self.arcs[("ref", a.anchor)] = a
        for a in diagram.image:
            self.arcs[("img", a.anchor)] = a
        self._order_slits()
        self._place()
        self._chords()
        self._intersect()
        self._faces()

    # -- slit ordering -----------------------------------------------------
    def _seg_index(self, slot: Slot) -> int:
        k = self.kappa
        if slot.kind == "T":
            return slot.index - 1
        j = slot.index
        base = k + 3 * (k - j)
        if slot.kind == "P":
            return base + 1
        return base + (0 if slot.side == "R" else 2)

    def _far(self, ev, side):
        """Far endpoint of the chord leaving event ``ev`` on ``side``."""
        arc_id, idx = ev
        arc = self.arcs[arc_id]
        g = arc.word[idx]
        arrive = "L" if g > 0 else "R"
        if side == arrive:
            if idx == 0:
                return Slot("T", arc.anchor)
            prev = arc.word[idx - 1]
            return Slot("E", abs(prev), "R" if prev > 0 else "L", (arc_id, idx - 1))
        if idx == len(arc.word) - 1:
            return Slot("P", arc.puncture)
        nxt = arc.word[idx + 1]
        return Slot("E", abs(nxt), "L" if nxt > 0 else "R", (arc_id, idx + 1))

    def _cmp_via(self, a, b, side, slit):
        na, nb = self._far(a, side), self._far(b, side)
        total = 4 * self.kappa
        here = self._seg_index(Slot("E", slit, side))
        ca = (self._seg_index(na) - here) % total
        cb = (self._seg_index(nb) - here) % total
        if ca == 0 or cb == 0:
            raise DiagramError("chord returns to its own slit side (unreduced word)")
        if ca != cb:
            c = -1 if ca < cb else 1
        elif na.kind != "E":
            return 0
        else:
            other = "L" if na.side == "R" else "R"
            d = self._cmp_via(na.event, nb.event, other, na.index)
            if d == 0:
                return 0
            # circle order along a side from depth order
            c = d if na.side == "R" else -d
        q = -c
        return q if side == "R" else -q

    def _cmp_depth(self, slit):
        def cmp(a, b):
            if a == b:
                return 0
            for side in ("R", "L"):
                r = self._cmp_via(a, b, side, slit)
                if r:
                    return r
            raise DiagramError(f"cannot order crossings {a} and {b} on slit {slit}")
        return cmp

    def _order_slits(self):
        events = {j: [] for j in range(1, self.kappa + 1)}
        for arc_id, arc in self.arcs.items():
            for idx, g in enumerate(arc.word):
                events[abs(g)].append((arc_id, idx))
        self.slit_order = {j: sorted(evs, key=cmp_to_key(self._cmp_depth(j)))
                           for j, evs in events.items()}
        self.depth = {}
        for j, evs in self.slit_order.items():
            m = len(evs)
            for r, ev in enumerate(evs):
                self.depth[ev] = Fraction(-(m - r), m + 1)

    # -- circle placement --------------------------------------------------
    def _place(self, jitter_seed: int = 0):
        k = self.kappa
        slots = [Slot("T", i) for i in range(1, k + 1)]
        for j in range(k, 0, -1):
            evs = self.slit_order[j]
            slots.append(Slot("B", j, "R"))
            slots.extend(Slot("E", j, "R", ev) for ev in evs)
            slots.append(Slot("P", j))
            slots.extend(Slot("E", j, "L", ev) for ev in reversed(evs))
            slots.append(Slot("B", j, "L"))
        self.slots = slots
        n = len(slots)
        self.coord = {}
        for idx, s in enumerate(slots):
            u = Fraction(6 * idx - 3 * n, n) + Fraction(1, 101 + 7 * idx * idx + jitter_seed)
            d = 1 + u * u
            self.coord[s] = ((1 - u * u) / d, 2 * u / d)
        self.slot_index = {s: i for i, s in enumerate(slots)}

    # -- chords ------------------------------------------------------------
    def _chords(self):
        self.arc_chords = {}
        for arc_id, arc in self.arcs.items():
            pts = [Slot("T", arc.anchor)]
            for idx, g in enumerate(arc.word):
                j = abs(g)
                pts.append(Slot("E", j, "L" if g > 0 else "R", (arc_id, idx)))
                pts.append(Slot("E", j, "R" if g > 0 else "L", (arc_id, idx)))
            pts.append(Slot("P", arc.puncture))
            self.arc_chords[arc_id] = list(zip(pts[0::2], pts[1::2]))

    def _interleave(self, c1, c2):
        a, b = sorted((self.slot_index[c1[0]], self.slot_index[c1[1]]))
        x, y = self.slot_index[c2[0]], self.slot_index[c2[1]]
        if len({a, b, x, y}) < 4:
            return False
        return (a < x < b) != (a < y < b)

    def _intersect(self):
        for fam in ("ref", "img"):
            ids = [i for i in self.arcs if i[0] == fam]
            for p in range(len(ids)):
                for q in range(p, len(ids)):
                    for ci, c1 in enumerate(self.arc_chords[ids[p]]):
                        for cj, c2 in enumerate(self.arc_chords[ids[q]]):
                            if p == q and ci == cj:
                                continue
                            if self._interleave(c1, c2):
                                raise DiagramError(f"{fam} arcs cross: {ids[p]} {ids[q]}")
        # crossings between reference and image chords, with parameters
        self.crossings = []  # (ref_id, ref_chord, t_ref, img_id, img_chord, t_img, point)
        for rid in (i for i in self.arcs if i[0] == "ref"):
            for ci, c1 in enumerate(self.arc_chords[rid]):
                for mid in (i for i in self.arcs if i[0] == "img"):
                    for cj, c2 in enumerate(self.arc_chords[mid]):
                        if not self._interleave(c1, c2):
                            continue
                        (x1, y1), (x2, y2) = self.coord[c1[0]], self.coord[c1[1]]
                        (x3, y3), (x4, y4) = self.coord[c2[0]], self.coord[c2[1]]
                        den = _cross(x2 - x1, y2 - y1, x4 - x3, y4 - y3)
                        t = _cross(x3 - x1, y3 - y1, x4 - x3, y4 - y3) / den
                        s = _cross(x3 - x1, y3 - y1, x2 - x1, y2 - y1) / den
                        pt = (x1 + t * (x2 - x1), y1 + t * (y2 - y1))
                        self.crossings.append((rid, ci, t, mid, cj, s, pt))
        seen = set()
        for c in self.crossings:
            if c[6] in seen:
                raise DiagramError("degenerate chart: three chords concurrent")
            seen.add(c[6])

        # vertex sequences along every arc
        self.arc_vertices = {}
        for arc_id, chords in self.arc_chords.items():
            seq = []
            for ci, (p, q) in enumerate(chords):
                here = []
                for c in self.crossings:
                    if c[0] == arc_id and c[1] == ci:
                        here.append((c[2], ("X", c[6])))
                    elif c[3] == arc_id and c[4] == ci:
                        here.append((c[5], ("X", c[6])))
                here.sort(key=lambda z: z[0])
                seq.append([("S", p)] + [h[1] for h in here] + [("S", q)])
            self.arc_vertices[arc_id] = seq

        # named intersection points
        pts = []
        by_ref = {}
        for c in self.crossings:
            by_ref.setdefault(c[0][1], []).append(c)
        ref_rank = {}
        for rid, chords in self.arc_vertices.items():
            if rid[0] != "ref":
                continue
            order = [v for chord in chords for v in chord if v[0] == "X"]
            ref_rank[rid[1]] = {v[1]: r for r, v in enumerate(order)}
        img_rank = {}
        for mid, chords in self.arc_vertices.items():
            if mid[0] != "img":
                continue
            order = [v for chord in chords for v in chord if v[0] == "X"]
            img_rank[mid[1]] = {v[1]: r for r, v in enumerate(order)}
        for r in self.diagram.reference:
            for m in self.diagram.image:
                if r.anchor == m.anchor:
                    loc = self.coord[Slot("T", r.anchor)]
                    pts.append(IntersectionPoint(r.anchor, m.anchor, TOP, loc, -1, -1,
                                                 f"x{r.anchor}"))
                if r.puncture == m.puncture:
                    loc = self.coord[Slot("P", r.puncture)]
                    pts.append(IntersectionPoint(r.anchor, m.anchor, BOTTOM, loc,
                                                 10 ** 9, 10 ** 9, f"z{r.anchor}"))
        for c in self.crossings:
            i, j = c[0][1], c[3][1]
            rk = ref_rank[i][c[6]]
            letter = INTERIOR_LETTERS[rk] if rk < len(INTERIOR_LETTERS) else f"p{rk + 1}_"
            pts.append(IntersectionPoint(i, j, INTERIOR, c[6], rk, img_rank[j][c[6]],
                                         f"{letter}{i}"))
        pts.sort(key=lambda p: (p.ref_arc, p.ref_pos, p.img_arc))
        self.points = pts
        self.point_vertex = {}
        for p in pts:
            if p.kind == TOP:
                self.point_vertex[p] = ("S", Slot("T", p.ref_arc))
            elif p.kind == BOTTOM:
                self.point_vertex[p] = ("S", Slot("P", self.arcs[("ref", p.ref_arc)].puncture))
            else:
                self.point_vertex[p] = ("X", p.location)

    # -- planar subdivision ------------------------------------------------
    def vertex_xy(self, v):
        return self.coord[v[1]] if v[0] == "S" else v[1]

    def _faces(self):
        out = {}  # vertex -> list of (dx, dy, half_edge)
        self.edges = []  # (u, v, label) ; label ("arc", arc_id, k) or ("bnd", tag)
        for arc_id, chords in self.arc_vertices.items():
            k = 0
            for seq in chords:
                for u, v in zip(seq, seq[1:]):
                    self.edges.append((u, v, ("arc", arc_id, k)))
                    k += 1
        n = len(self.slots)
        for i, s in enumerate(self.slots):
            t = self.slots[(i + 1) % n]
            self.edges.append((("S", s), ("S", t), ("bnd", self._boundary_tag(s, t))))

        half = []
        for e_idx, (u, v, lab) in enumerate(self.edges):
            half.append((u, v, e_idx, +1))
            half.append((v, u, e_idx, -1))
        for h_idx, (u, v, e_idx, d) in enumerate(half):
            ux, uy = self.vertex_xy(u)
            if self.edges[e_idx][2][0] == "bnd":
                # tangent direction of the circle at u
                tx, ty = -uy, ux
                dx, dy = (tx, ty) if d > 0 else (-tx, -ty)
            else:
                vx, vy = self.vertex_xy(v)
                dx, dy = vx - ux, vy - uy
            out.setdefault(u, []).append((dx, dy, h_idx))

        def ang_cmp(a, b):
            ha = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
            hb = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
            if ha != hb:
                return ha - hb
            c = _cross(a[0], a[1], b[0], b[1])
            return -1 if c > 0 else (1 if c < 0 else 0)

        ccw = {}
        pos = {}
        for u, lst in out.items():
            lst.sort(key=cmp_to_key(ang_cmp))
            ccw[u] = [h for _, _, h in lst]
            for r, h in enumerate(ccw[u]):
                pos[h] = r
        twin = lambda h: h ^ 1
        face_of = [-1] * len(half)
        faces = []
        for h0 in range(len(half)):
            if face_of[h0] != -1:
                continue
            f = len(faces)
            cyc = []
            h = h0
            while face_of[h] == -1:
                face_of[h] = f
                cyc.append(h)
                tw = twin(h)
                v = half[h][1]
                ring = ccw[v]
                h = ring[(pos[tw] - 1) % len(ring)]
            faces.append(cyc)
        self.half = half
        self.face_of = face_of
        self.face_cycles = faces
        # the unbounded face is traced by boundary half-edges running clockwise
        outer = {face_of[h] for h, (_, _, e, d) in enumerate(half)
                 if self.edges[e][2][0] == "bnd" and d < 0}
        if len(outer) != 1:
            raise DiagramError("chart boundary is not a single face")
        self.outer_face = outer.pop()

        # glue slit sides and mark exterior faces
        parent = list(range(len(faces)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        pieces = {}
        self.exterior_faces = set()
        for h, (_, _, e, d) in enumerate(half):
            lab = self.edges[e][2]
            if lab[0] != "bnd" or d < 0:
                continue
            tag = lab[1]
            if tag[0] == "ext":
                self.exterior_faces.add(face_of[h])
            else:
                pieces.setdefault(tag[1:], []).append(face_of[h])
        for key, fs in pieces.items():
            if len(fs) != 2:
                raise DiagramError(f"unpaired slit piece {key}")
            a, b = find(fs[0]), find(fs[1])
            parent[a] = b
        self.region_of = {f: find(f) for f in range(len(faces)) if f != self.outer_face}
        self.exterior_regions = {self.region_of[f] for f in self.exterior_faces}
        self.regions = sorted({r for r in self.region_of.values()} - self.exterior_regions)

        # left/right regions of every arc edge, in arc direction
        self.arc_edge_sides = {}
        for h, (u, v, e, d) in enumerate(half):
            lab = self.edges[e][2]
            if lab[0] != "arc" or d < 0:
                continue
            left = self.region_of[face_of[h]]
            right = self.region_of[face_of[h ^ 1]]
            self.arc_edge_sides[(lab[1], lab[2])] = (left, right)

        # sectors around punctures: regions of faces incident to P(j)
        self.puncture_regions = {}
        for j in range(1, self.kappa + 1):
            v = ("S", Slot("P", j))
            regs = {self.region_of[face_of[h]] for h in ccw[v]
                    if face_of[h] != self.outer_face}
            self.puncture_regions[j] = regs

    def _boundary_tag(self, s: Slot, t: Slot):
        """Tag of the circle arc from slot s to its successor t.

        Pieces of the two sides of slit j between the same pair of depths
        share the tag ("slit", j, rank) and are glued.
        """
        if s.kind == "T" or t.kind == "T" or s.index != t.index:
            return ("ext",)
        if s.kind == "B" and s.side == "L":
            return ("ext",)
        j = s.index
        order = self.slit_order[j]
        if s.kind == "B":
            return ("slit", j, 0)
        if s.kind == "P":
            return ("slit", j, len(order))
        rank = order.index(s.event)
        return ("slit", j, rank + 1 if s.side == "R" else rank)

    # -- paths along arcs --------------------------------------------------
    def arc_edge_path(self, arc_id, v_from, v_to):
        """Edges ``(k, sign)`` along ``arc_id`` between two of its vertices."""
        verts, edge_after = [], []
        k = 0
        for seq in self.arc_vertices[arc_id]:
            for t, v in enumerate(seq):
                verts.append(v)
                if t < len(seq) - 1:
                    edge_after.append(k)
                    k += 1
                else:
                    edge_after.append(None)
        a, b = verts.index(v_from), verts.index(v_to)
        sign = 1 if a < b else -1
        lo, hi = min(a, b), max(a, b)
        return [(edge_after[p], sign) for p in range(lo, hi) if edge_after[p] is not None]


# ---------------------------------------------------------------------------
# arrangement / serialization

@dataclass
class Face:
    region: int
    chart_faces: list[int]
    punctures: list[int]
    corners: list[str]
    boundary_labels: list[str] = field(default_factory=list)


def arrangement(diagram: ArcDiagram) -> list[Face]:
    """Bounded faces of reference ∪ image, sides of slits glued."""
    ch = diagram.chart
    names = {ch.point_vertex[p]: p.name for p in ch.points if p.kind == INTERIOR}
    faces = []
    for r in ch.regions:
        cfs = sorted(f for f, g in ch.region_of.items() if g == r)
        corners = set()
        labels = []
        for f in cfs:
            for h in ch.face_cycles[f]:
                u, v, e, d = ch.half[h]
                lab = ch.edges[e][2]
                if lab[0] == "arc":
                    labels.append(f"{lab[1][0]}{lab[1][1]}")
                if u in names:
                    corners.add(names[u])
        punct = sorted(j for j, regs in ch.puncture_regions.items() if r in regs)
        faces.append(Face(r, cfs, punct, sorted(corners), labels))
    return faces


def face_boundary_alternates(diagram: ArcDiagram) -> bool:
    """At every interior crossing corner a face turns between arc families."""
    ch = diagram.chart
    for f, cyc in enumerate(ch.face_cycles):
        if f == ch.outer_face:
            continue
        labs = [ch.edges[ch.half[h][2]][2] for h in cyc]
        for a, b, h in zip(labs, labs[1:] + labs[:1], cyc[1:] + cyc[:1]):
            u = ch.half[h][0]
            if u[0] != "X":
                continue
            if a[0] == "arc" and b[0] == "arc" and a[1][0] == b[1][0]:
                return False
    return True


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def diagram_to_json(diagram: ArcDiagram) -> dict:
    ch = diagram.chart
    return {
        "schema": "khsharp.diagram/1",
        "kappa": diagram.kappa,
        "reference": [{"anchor": a.anchor, "puncture": a.puncture, "word": list(a.word)}
                      for a in diagram.reference],
        "image": [{"anchor": a.anchor, "puncture": a.puncture, "word": list(a.word)}
                  for a in diagram.image],
        "punctures": [[_q(x), _q(y)] for x, y in diagram.disk.punctures],
        "anchors": [[_q(x), _q(y)] for x, y in diagram.disk.anchors],
        "chart_slots": [{"kind": s.kind, "index": s.index, "side": s.side,
                         "xy": [_q(c) for c in ch.coord[s]]} for s in ch.slots],
        "slit_depths": {str(j): [_q(ch.depth[ev]) for ev in evs]
                        for j, evs in ch.slit_order.items()},
        "intersections": [{"name": p.name, "ref_arc": p.ref_arc, "img_arc": p.img_arc,
                           "kind": p.kind, "chart_xy": [_q(c) for c in p.location]}
                          for p in ch.points],
    }


def diagram_from_json(data: dict) -> ArcDiagram:
    k = int(data["kappa"])
    ref = tuple(Arc(a["anchor"], a["puncture"], tuple(a["word"])) for a in data["reference"])
    img = tuple(Arc(a["anchor"], a["puncture"], tuple(a["word"])) for a in data["image"])
    return ArcDiagram(DiskModel(k), ref, img)


def dumps(diagram: ArcDiagram) -> str:
    return json.dumps(diagram_to_json(diagram), indent=2)
