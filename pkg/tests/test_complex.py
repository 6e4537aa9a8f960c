import pytest

from khsharp import apply_braid, mirror, parse, reference_system
from khsharp.complex import (CHECK, HAT, Generator, GradingError, GradingValue, check_n,
                             enumerate_generators, expected_count, normalize_name, solve_gradings)


def gens(text, k, hand="left"):
    b = parse(text, k)
    if hand == "left":
        b = mirror(b)
    return apply_braid(reference_system(k), b)


@pytest.mark.parametrize("text,k,count", [("s1", 2, 2), ("s1 s1", 2, 8), ("s1 s1 s1", 2, 18),
                                          ("", 1, 1), ("", 2, 1)])
def test_generator_counts(text, k, count):
    d = gens(text, k)
    assert len(enumerate_generators(d)) == count == expected_count(d)


@pytest.mark.parametrize("text,k", [("s1 s2", 3), ("s2 s1 s1", 3), ("s1 s2^-1 s1", 3)])
def test_count_formula(text, k):
    for hand in ("left", "right"):
        d = gens(text, k, hand)
        assert len(enumerate_generators(d)) == expected_count(d)


def test_names_are_unique():
    names = [g.name for g in enumerate_generators(gens("s1 s1 s1", 2))]
    assert len(names) == len(set(names))
    assert "{x1,w2v}" in {normalize_name(n) for n in names}


def test_normalize_name():
    assert normalize_name("{w2^, x1}") == "{x1,w2^}"
    assert normalize_name("{z2,y1v}") == "{y1v,z2}"
    assert normalize_name("{z1,z2}") == "{z1,z2}"


def test_decorations_checked():
    d = gens("s1 s1", 2)
    g = next(g for g in enumerate_generators(d) if g.hats == 1)
    assert g.swap_decorations().swap_decorations() == g
    interior = next(p for p in d.intersections if not p.is_endpoint)
    endpoint = next(p for p in d.intersections if p.is_endpoint)
    with pytest.raises(ValueError):
        Generator((endpoint,), (CHECK,))
    with pytest.raises(ValueError):
        Generator((interior,), ("",))
    assert Generator((interior,), (HAT,)).hats == 1


def test_grading_value():
    v = GradingValue(-1, 2)
    assert str(v) == "2n-1"
    assert v.at(7) == 13
    assert v.lift == 3
    assert v.residue(7) == 13 % 5 == v.lift % 5
    assert str(GradingValue(0, 1)) == "n" and str(GradingValue(3, 0)) == "3"
    assert -v + v == GradingValue()


def test_check_n():
    with pytest.raises(ValueError):
        check_n(3)
    with pytest.warns(UserWarning):
        check_n(3, allow_n3=True)
    with pytest.raises(ValueError):
        check_n(1)
    check_n(4)


def test_solve_gradings_cycle():
    d = gens("s1 s1", 2)
    gs = enumerate_generators(d)
    sites = list(dict.fromkeys(g.points for g in gs))
    a, b = sites[0], sites[1]
    with pytest.raises(GradingError):
        solve_gradings(gs, [(a, b, GradingValue(1, 0)), (b, a, GradingValue(1, 0))])
    out = solve_gradings(gs, [(a, b, GradingValue(1, 0))])
    ga = next(g for g in gs if g.points == a and g.hats == 0)
    gb = next(g for g in gs if g.points == b and g.hats == 0)
    assert out[gb] - out[ga] == GradingValue(1, 0)
