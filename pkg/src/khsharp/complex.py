"""Generator tuples and the relative grading solver."""
from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass

from .arcsys import INTERIOR, INTERIOR_LETTERS, ArcDiagram, IntersectionPoint

ENDPOINT, CHECK, HAT = "", "v", "^"


class GradingError(RuntimeError):
    def __init__(self, msg, cycle=()):
        super().__init__(msg)
        self.cycle = list(cycle)


@dataclass(frozen=True)
class Generator:
    """One point per reference arc (index i-1 is arc i) with decorations."""
    points: tuple[IntersectionPoint, ...]
    decorations: tuple[str, ...]

    def __post_init__(self):
        for p, d in zip(self.points, self.decorations):
            if p.is_endpoint and d != ENDPOINT:
                raise ValueError(f"endpoint {p.name} cannot carry decoration {d!r}")
            if not p.is_endpoint and d not in (CHECK, HAT):
                raise ValueError(f"interior point {p.name} needs a check or hat")

    @property
    def matching(self) -> tuple[int, ...]:
        return tuple(p.img_arc for p in self.points)

    @property
    def site(self) -> tuple[IntersectionPoint, ...]:
        return self.points

    @property
    def hats(self) -> int:
        return sum(1 for d in self.decorations if d == HAT)

    @property
    def name(self) -> str:
        parts = sorted(zip(self.points, self.decorations), key=lambda pd: _name_key(pd[0].name))
        return "{" + ",".join(p.name + d for p, d in parts) + "}"

    def swap_decorations(self) -> "Generator":
        sw = {CHECK: HAT, HAT: CHECK, ENDPOINT: ENDPOINT}
        return Generator(self.points, tuple(sw[d] for d in self.decorations))

    def __str__(self):
        return self.name


def _name_key(name: str):
    letter = name.rstrip("0123456789")
    sub = int(name[len(letter):])
    if letter == "x":
        rank = -1
    elif letter == "z":
        rank = 10 ** 6
    elif letter in INTERIOR_LETTERS:
        rank = INTERIOR_LETTERS.index(letter)
    else:
        rank = len(INTERIOR_LETTERS) + int(letter[1:-1])
    return (rank, sub)


def normalize_name(text: str) -> str:
    """Canonical form of a generator name such as ``{w2^, x1}``."""
    body = text.strip().strip("{}")
    parts = [p.strip() for p in body.split(",") if p.strip()]

    def key(p):
        return _name_key(p.rstrip("v^"))
    return "{" + ",".join(sorted(parts, key=key)) + "}"


def _pair_points(diagram: ArcDiagram) -> dict:
    """Intersection points by (reference arc, image arc).

    An image arc equal to its reference arc is treated as pushed off
    itself; the pair keeps only the top endpoint.
    """
    by_pair = {}
    for p in diagram.intersections:
        if p.ref_arc == p.img_arc and p.kind != "top" \
                and diagram.reference[p.ref_arc - 1] == diagram.image[p.img_arc - 1]:
            continue
        by_pair.setdefault((p.ref_arc, p.img_arc), []).append(p)
    return by_pair


def enumerate_sites(diagram: ArcDiagram) -> list[tuple[IntersectionPoint, ...]]:
    """Undecorated point tuples, one point per reference and image arc."""
    k = diagram.kappa
    by_pair = _pair_points(diagram)
    out = []
    for beta in itertools.permutations(range(1, k + 1)):
        choices = [by_pair.get((i + 1, beta[i]), []) for i in range(k)]
        out.extend(itertools.product(*choices))
    return out


def decorate(site) -> list[Generator]:
    opts = [(ENDPOINT,) if p.is_endpoint else (CHECK, HAT) for p in site]
    return [Generator(tuple(site), decs) for decs in itertools.product(*opts)]


def enumerate_generators(diagram: ArcDiagram) -> list[Generator]:
    gens = []
    for site in enumerate_sites(diagram):
        gens.extend(decorate(site))
    return gens


def expected_count(diagram: ArcDiagram) -> int:
    """Σ over matchings of Π (endpoints + 2·interior) per strand pair."""
    k = diagram.kappa
    weight = {}
    for key, ps in _pair_points(diagram).items():
        weight[key] = sum(2 if p.kind == INTERIOR else 1 for p in ps)
    total = 0
    for beta in itertools.permutations(range(1, k + 1)):
        prod = 1
        for i in range(k):
            prod *= weight.get((i + 1, beta[i]), 0)
        total += prod
    return total


# ---------------------------------------------------------------------------
# gradings

@dataclass(frozen=True, order=True)
class GradingValue:
    """Affine value ``a + b*n``."""
    a: int = 0
    b: int = 0

    def __add__(self, other):
        return GradingValue(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return GradingValue(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return GradingValue(-self.a, -self.b)

    def at(self, n: int) -> int:
        return self.a + self.b * n

    @property
    def lift(self) -> int:
        """Representative congruent to the value modulo ``n-2`` for every n."""
        return self.a + 2 * self.b

    def residue(self, n: int) -> int:
        if n == 2:
            return self.lift
        return self.at(n) % (n - 2)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        head = "n" if self.b == 1 else "-n" if self.b == -1 else f"{self.b}n"
        if self.a == 0:
            return head
        return f"{head}{'+' if self.a > 0 else '-'}{abs(self.a)}"


N_MINUS_1 = GradingValue(-1, 1)
N_MINUS_2 = GradingValue(-2, 1)


def check_n(n: int, allow_n3: bool = False):
    if n < 2:
        raise ValueError("n must be at least 2")
    if n == 3:
        if not allow_n3:
            raise ValueError("n = 3 is outside the invariance range; pass allow_n3")
        warnings.warn("n = 3: gradings computed but invariance is not expected", stacklevel=2)


def solve_gradings(generators, relations, root=None) -> dict[Generator, GradingValue]:
    """Solve |target| = |source| + mu for each relation.

    ``relations`` holds ``(source_site, target_site, mu)`` on undecorated
    sites, read with every interior corner checked.  A hat raises the
    grading of its site by ``n-1``.  Components are normalized at the tuple
    of top endpoints when present, otherwise at their least name.
    """
    sites = {}
    for g in generators:
        sites.setdefault(g.points, []).append(g)
    adj = {s: [] for s in sites}
    for src, tgt, delta in relations:
        adj[src].append((tgt, delta))
        adj[tgt].append((src, -delta))
    base = {}
    parent = {}
    for start in sorted(sites, key=lambda s: _root_key(sites[s][0])):
        if start in base:
            continue
        comp = [start]
        base[start] = GradingValue()
        parent[start] = None
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, d in adj[u]:
                val = base[u] + d
                if v not in base:
                    base[v] = val
                    parent[v] = u
                    comp.append(v)
                    queue.append(v)
                elif base[v] != val:
                    raise GradingError(
                        f"inconsistent grading cycle through {_site_name(u)} and {_site_name(v)}",
                        _cycle(parent, u, v))
        anchor = min(comp, key=lambda s: _root_key(sites[s][0]))
        shift = base[anchor]
        for s in comp:
            base[s] = base[s] - shift
    out = {}
    for s, gs in sites.items():
        for g in gs:
            out[g] = base[s] + GradingValue(-g.hats, g.hats)
    return out


def _root_key(g: Generator):
    all_top = all(p.kind == "top" for p in g.points)
    return (0 if all_top else 1, g.name)


def _site_name(site):
    return "{" + ",".join(p.name for p in site) + "}"


def _cycle(parent, u, v):
    def path(x):
        out = []
        while x is not None:
            out.append(_site_name(x))
            x = parent[x]
        return out
    return path(u)[::-1] + path(v)
