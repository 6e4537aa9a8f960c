"""Golden corpus: braids, published differential relations and grading tables."""
from khsharp.complex import normalize_name


def rel(text):
    """Parse ``"{a} -> {b} + {c}; ..."`` into {source: sorted targets}."""
    out = {}
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        src, tgts = item.split("->")
        out[normalize_name(src)] = sorted(normalize_name(t) for t in tgts.split("+"))
    return dict(sorted(out.items()))


LEFT_HOPF = rel("""
    {x1,z2} -> {y1^,y2v} + {y1v,y2^};
    {x2,z1} -> {y1^,y2v} + {y1v,y2^};
    {y1v,y2^} -> {z1,z2};
    {y1^,y2v} -> {z1,z2}
""")

RIGHT_HOPF = rel("""
    {y1v,y2^} -> {x1,z2} + {x2,z1};
    {y1^,y2v} -> {x1,z2} + {x2,z1};
    {z1,z2} -> {y1v,y2^} + {y1^,y2v}
""")

LEFT_TREFOIL = rel("""
    {x1,w2v} -> {y1v,y2^} + {y1^,y2v};
    {x1,w2^} -> {y1^,y2^} + {y2v,z1} + {y1v,z2};
    {x2,w1v} -> {y1v,y2^} + {y1^,y2v};
    {x2,w1^} -> {y1^,y2^} + {y1v,z2} + {y2v,z1};
    {y1v,z2} -> {w1v,w2^} + {w1^,w2v};
    {y1^,z2} -> {w1^,w2^};
    {y2v,z1} -> {w1v,w2^} + {w1^,w2v};
    {y2^,z1} -> {w1^,w2^};
    {w1v,w2^} -> {z1,z2};
    {w1^,w2v} -> {z1,z2};
    {y1v,y2^} -> {w1v,w2v};
    {y1^,y2v} -> {w1v,w2v}
""")

RIGHT_TREFOIL = rel("""
    {y1v,y2^} -> {x1,w2^} + {x2,w1^};
    {y1^,y2v} -> {x1,w2^} + {x2,w1^};
    {y1v,y2v} -> {x1,w2v} + {x2,w1v};
    {w1v,w2^} -> {y1^,z2} + {y2^,z1};
    {w1^,w2v} -> {y1^,z2} + {y2^,z1};
    {w1v,w2v} -> {y1v,z2} + {y2v,z1};
    {z1,z2} -> {w1v,w2^} + {w1^,w2v};
    {y1^,z2} -> {x1,w2v} + {x2,w1v};
    {y2^,z1} -> {x1,w2v} + {x2,w1v};
    {w1^,w2^} -> {y1v,y2^} + {y1^,y2v}
""")

# (braid text, strands, handedness, relations or None, homology gradings)
CORPUS = {
    "unknot": ("s1", 2, "left", {}, [0, 2]),
    "left hopf": ("s1 s1", 2, "left", LEFT_HOPF, [0, 2, 2, 4]),
    "right hopf": ("s1 s1", 2, "right", RIGHT_HOPF, [0, -2, -2, -4]),
    "left trefoil": ("s1 s1 s1", 2, "left", LEFT_TREFOIL, [0, 2, 2, 3, 4, 5]),
    "right trefoil": ("s1 s1 s1", 2, "right", RIGHT_TREFOIL, [0, -2, -2, -3, -4, -5]),
}

# classical Khovanov homology over F2 of the right trefoil, from the cube by hand
RIGHT_TREFOIL_KH = {(0, 1): 1, (0, 3): 1, (2, 5): 1, (2, 7): 1, (3, 7): 1, (3, 9): 1}


def same_up_to_shift(a, b):
    if len(a) != len(b):
        return False
    if not a:
        return True
    s = min(b) - min(a)
    return sorted(x + s for x in a) == sorted(b)
