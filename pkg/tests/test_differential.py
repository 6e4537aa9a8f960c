import itertools
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from corpus import CORPUS  # noqa: E402

from khsharp.braid import BraidWord  # noqa: E402
from khsharp.complex import GradingValue  # noqa: E402
from khsharp.differential import (RULES, Arrow, Complex, DomainFinder, effective_S, index,  # noqa: E402
                                  maslov, verify_d_squared)
from khsharp.pipeline import compute  # noqa: E402


def run(name):
    w, k, h, _, _ = CORPUS[name]
    return compute(w, k, 7, h)


@pytest.mark.parametrize("name", list(CORPUS))
def test_corpus_relations(name):
    r = run(name)
    assert r.relations() == CORPUS[name][3]
    assert r.d_squared == (True, None)
    assert not r.complex.unknown


@pytest.mark.parametrize("letters", [w for L in (1, 2) for w in itertools.product([1, 2, -1, -2], repeat=L)])
def test_d_squared_three_strands(letters):
    r = compute(BraidWord(3, letters), None, 7, "right")
    assert r.d_squared[0]


@pytest.mark.parametrize("name", list(CORPUS))
def test_quadrilateral_index(name):
    r = run(name)
    f = DomainFinder(r.diagram)
    for a in r.complex.arrows:
        dom = f.domain(a.source.points, a.target.points)
        assert len(dom.moving) == 2
        S = effective_S(dom, a.source, a.target)
        m = S - 3 + dom.enclosed
        # (S - 3 + C)(n - 1) + 1
        assert index(dom, S) == GradingValue(1 - m, m)


def test_unknot_has_no_arrow():
    r = run("unknot")
    gens = {g.name: g for g in r.complex.generators}
    f = DomainFinder(r.diagram)
    s, t = gens["{x1,x2}"], gens["{z1,z2}"]
    dom = f.domain(s.points, t.points)
    assert effective_S(dom, s, t) == 4
    assert maslov(dom, 4) == GradingValue(-2, 2)
    assert index(dom, 4).at(7) == 7
    assert not r.complex.arrows


def test_audit_uses_known_rules():
    for name in CORPUS:
        for a in run(name).complex.audit:
            assert a["rule"] in RULES
    rules = {a["rule"] for a in run("left trefoil").complex.audit}
    assert {"R0", "R1", "R2a", "R2b"} <= rules
    rules = {a["rule"] for a in run("right trefoil").complex.audit}
    assert {"R2a*", "R2b*"} <= rules


def test_maslov_needs_disk():
    r = run("left hopf")
    f = DomainFinder(r.diagram)
    gens = {g.name: g for g in r.complex.generators}
    dom = f.domain(gens["{x1,x2}"].points, gens["{z1,z2}"].points)
    if not dom.is_disk:
        with pytest.raises(ValueError):
            maslov(dom, 0)


def test_d_squared_witness():
    cx = run("left hopf").complex
    g = {x.name: x for x in cx.generators}
    arrows = [Arrow(g["{x1,z2}"], g["{y1^,y2v}"], "R0", {}), Arrow(g["{y1^,y2v}"], g["{z1,z2}"], "R0", {})]
    fake = Complex(cx.diagram, 7, cx.generators, arrows, [], [], [])
    assert verify_d_squared(fake) == (False, ("{z1,z2}", "{x1,z2}"))


def test_orientation_mirror():
    left, right = run("left hopf"), run("right hopf")
    assert len(left.complex.arrows) == len(right.complex.arrows) == 6
