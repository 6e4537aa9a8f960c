"""Acceptance criteria, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from corpus import CORPUS, LEFT_HOPF, same_up_to_shift  # noqa: E402

from khsharp import apply_braid, parse, reduce_bigons, reference_system  # noqa: E402
from khsharp.complex import GradingValue  # noqa: E402
from khsharp.differential import DomainFinder, effective_S, index  # noqa: E402
from khsharp.flowtree import (MorseData, all_patterns, count_rectangle, count_triangle,  # noqa: E402
                              corner_indices, moduli_dimension, pattern_S)
from khsharp.homology import rank, support_rank  # noqa: E402
from khsharp.khovanov import compare_conjecture, khovanov_homology  # noqa: E402
from khsharp.braid import apply_handedness  # noqa: E402
from khsharp.pipeline import compute, mirror_transpose, stabilize_check  # noqa: E402

N = 7
ONE_SECOND = 1.0
FIVE_SECONDS = 5.0

RESULTS = []


def report(number, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def timed(name):
    w, k, h, _, _ = CORPUS[name]
    t0 = time.perf_counter()
    run = compute(w, k, N, h)
    run.table
    run.d_squared
    return run, time.perf_counter() - t0


def criterion_1():
    run, dt = timed("unknot")
    ok = (len(run.complex.generators) == 2 and not run.complex.matrix()
          and same_up_to_shift(run.table.multiset(), [0, 2]) and dt < ONE_SECOND)
    return report(1, ok, f"unknot 2 generators, zero differential, {run.table.to_json()}, "
                         f"{dt:.3f}s < 1s")


def criterion_2():
    run, dt = timed("left hopf")
    ok = (len(run.complex.generators) == 8 and run.relations() == LEFT_HOPF
          and run.table.dims == {0: 1, 2: 2, 4: 1} and run.table.total == 4 and dt < ONE_SECOND)
    return report(2, ok, f"left Hopf 8 generators, four relations, {run.table.to_json()}, "
                         f"{dt:.3f}s < 1s")


def criterion_3():
    left, _ = timed("left hopf")
    right, _ = timed("right hopf")
    ok = (right.relations() == CORPUS["right hopf"][3]
          and same_up_to_shift(right.table.multiset(), [0, -2, -2, -4])
          and mirror_transpose(left, right))
    return report(3, ok, f"right Hopf relations, {right.table.to_json()}, mirror transpose of left")


def criterion_4():
    lt, dt = timed("left trefoil")
    rt, dt2 = timed("right trefoil")
    ok = (len(lt.complex.generators) == 18 and lt.relations() == CORPUS["left trefoil"][3]
          and lt.table.multiset() == [0, 2, 2, 3, 4, 5] and lt.table.total == 6
          and rt.relations() == CORPUS["right trefoil"][3]
          and same_up_to_shift(rt.table.multiset(), [0, -2, -2, -3, -4, -5])
          and dt < FIVE_SECONDS and dt2 < FIVE_SECONDS)
    return report(4, ok, f"trefoils: 12 and 10 relations, {lt.table.multiset()} and "
                         f"{rt.table.multiset()}, {dt:.3f}s/{dt2:.3f}s < 5s")


def criterion_5():
    bad = []
    for name in CORPUS:
        run, _ = timed(name)
        if not run.d_squared[0] or run.complex.unknown:
            bad.append(name)
    return report(5, not bad, "d^2 = 0 and zero Unknown domains on the corpus"
                  + (f"; failing: {bad}" if bad else ""))


def _gen(run, name):
    return next(g for g in run.complex.generators if g.name == name)


def criterion_6():
    n_, one = GradingValue(0, 1), GradingValue(1, 0)
    problems = []
    unknot, _ = timed("unknot")
    f = DomainFinder(unknot.diagram)
    s, t = _gen(unknot, "{x1,x2}"), _gen(unknot, "{z1,z2}")
    dom = f.domain(s.points, t.points)
    if index(dom, effective_S(dom, s, t)) != n_:
        problems.append("unknot quadrilateral")
    hopf, _ = timed("left hopf")
    f = DomainFinder(hopf.diagram)
    src = _gen(hopf, "{x1,x2}")
    want = {"{y1v,y2v}": n_, "{y1^,y2v}": GradingValue(-1, 2), "{y1v,y2^}": GradingValue(-1, 2),
            "{y1^,y2^}": GradingValue(-2, 3)}
    for name, val in want.items():
        t = _gen(hopf, name)
        dom = f.domain(src.points, t.points)
        if dom.enclosed != 2 or index(dom, effective_S(dom, src, t)) != val:
            problems.append(f"Hopf A+B+C to {name}")
    arrows = 0
    for name in CORPUS:
        run, _ = timed(name)
        f = DomainFinder(run.diagram)
        for a in run.complex.arrows:
            arrows += 1
            dom = f.domain(a.source.points, a.target.points)
            if index(dom, effective_S(dom, a.source, a.target)) != one:
                problems.append(f"{name} arrow {a.source.name}->{a.target.name}")
    return report(6, not problems, f"unknot n, Hopf n/2n-1/3n-2, {arrows} corpus arrows of "
                                   f"index 1 (symbolic in n)" + (f"; {problems}" if problems else ""))


def criterion_7():
    problems = []
    for p in all_patterns():
        S = pattern_S(p)
        for m in (1, 2):
            data = MorseData.rectangle(m)
            dim = moduli_dimension(list(corner_indices(data, p).values()), 4, m)
            if dim != (S - 3) * m + 1:
                problems.append(f"dim {p} m={m}")
        res = count_rectangle(MorseData.rectangle(1), p)
        if S == 3 and res.count != 1:
            problems.append(f"count {p}")
        if S != 3 and res.refused is None:
            problems.append(f"not refused {p}")
    tri = count_triangle(2)
    if tri.count != 1 or tri.margin is None or tri.margin <= 1e-9:
        problems.append("triangle")
    return report(7, not problems, "16 rectangle dimensions, pinned S=3 counts 1 and others "
                                   f"refused, m=2 triangle count {tri.count} "
                                   f"(margin {tri.margin:.2e})" + (f"; {problems}" if problems else ""))


def criterion_8():
    reps = [stabilize_check(parse(w, 2), N, "left", 1) for w in ("s1", "s1 s1")]
    ok = all(r["bijection"] and r["gradings_preserved"] and r["homology"] is not None
             and r["homology"]["match"] for r in reps)
    return report(8, ok, "stabilization of s1 and s1^2: bijection, gradings and homology "
                         + str([r["passed"] for r in reps]))


def criterion_9():
    bad = []
    for name, (w, k, h, _, _) in CORPUS.items():
        run, _ = timed(name)
        kh = khovanov_homology(apply_handedness(parse(w, k), h))
        if not compare_conjecture(kh, run.table, N)["match"]:
            bad.append(name)
    return report(9, not bad, "folded Khovanov tables match Kh# per residue up to shift"
                  + (f"; failing: {bad}" if bad else ""))


def criterion_10():
    problems = []
    for name in ("unknot", "left hopf", "left trefoil"):
        w, k, _, _, _ = CORPUS[name]
        left, _ = timed(name)
        right = compute(w, k, N, "right")
        if not mirror_transpose(left, right):
            problems.append(f"mirror {name}")
    for w, k in (("s1 s1 s1", 2), ("s1 s2^-1 s1 s1^-1 s2", 3), ("s1^-1 s2 s2^-1 s1 s1", 3),
                 ("s1 s1^-1 s1 s1", 2)):
        d = apply_braid(reference_system(k), parse(w, k), reduce=False)
        a = reduce_bigons(d, "innermost")
        b = reduce_bigons(d, "rightmost")
        if reduce_bigons(a) != a or a.counts() != b.counts():
            problems.append(f"bigons {w}")
    for name in CORPUS:
        run, _ = timed(name)
        m = run.complex.matrix()
        if rank(m) != support_rank(m):
            problems.append(f"rank {name}")
    return report(10, not problems, "mirror transpose, bigon idempotence and order independence, "
                                    "rank oracle" + (f"; {problems}" if problems else ""))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_criterion(criterion):
    assert criterion()


if __name__ == "__main__":
    passed = sum(bool(c()) for c in CRITERIA)
    print(f"{passed}/{len(CRITERIA)} criteria passed")
    sys.exit(0 if passed == len(CRITERIA) else 1)
