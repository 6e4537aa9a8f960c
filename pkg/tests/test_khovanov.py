import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from corpus import RIGHT_TREFOIL_KH  # noqa: E402

from khsharp.braid import BraidWord, mirror, parse, stabilize  # noqa: E402
from khsharp.homology import HomologyTable  # noqa: E402
from khsharp.khovanov import (CubeComplex, compare_conjecture, fold,  # noqa: E402
                              khovanov_homology, table_to_json)


def kh(text, k):
    return khovanov_homology(parse(text, k))


def total(t):
    return sum(t.values())


def test_unknot():
    assert kh("s1", 2) == {(0, -1): 1, (0, 1): 1}
    assert kh("", 1) == {(0, -1): 1, (0, 1): 1}
    assert kh("s1^-1", 2) == {(0, -1): 1, (0, 1): 1}


def test_hopf_and_trefoil():
    assert total(kh("s1 s1", 2)) == 4
    assert kh("s1 s1 s1", 2) == RIGHT_TREFOIL_KH


def test_figure_eight():
    assert total(kh("s1 s2^-1 s1 s2^-1", 3)) == 10


def test_two_component_unlink():
    assert total(kh("", 2)) == 4


@pytest.mark.parametrize("text,k", [("s1 s1 s1", 2), ("s1 s1", 2), ("s1 s2^-1 s1", 3)])
def test_mirror_reflects(text, k):
    b = parse(text, k)
    assert khovanov_homology(mirror(b)) == {(-i, -j): v for (i, j), v in khovanov_homology(b).items()}


@pytest.mark.parametrize("text,k", [("s1", 2), ("s1 s1 s1", 2)])
def test_stabilization(text, k):
    b = parse(text, k)
    assert khovanov_homology(stabilize(b, 1)) == khovanov_homology(b)
    assert khovanov_homology(stabilize(b, -1)) == khovanov_homology(b)


def test_d_squared():
    cube = CubeComplex(parse("s1 s2^-1 s1 s2", 3))
    assert cube.check_d_squared()


def test_crossing_limit():
    with pytest.raises(ValueError):
        CubeComplex(BraidWord(2, (1,) * 9))


def test_fold_and_compare():
    t = fold(RIGHT_TREFOIL_KH, 5)
    # i - j = -1, -3, -3, -5, -4, -6
    assert t.dims == {4: 2, 2: 2, 0: 1, 1: 1}
    assert compare_conjecture(RIGHT_TREFOIL_KH, HomologyTable(dict(t.dims)), 7)["match"]
    with pytest.raises(ValueError):
        compare_conjecture(RIGHT_TREFOIL_KH, t, 3)
    assert table_to_json({(0, 1): 1}) == {"0,1": 1}
