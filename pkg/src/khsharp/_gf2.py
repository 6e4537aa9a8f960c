"""Pure-Python GF(2) rank on rows packed into Python ints."""


def pack_rows(rows, ncols):
    out = []
    for row in rows:
        v = 0
        for c in row:
            v |= 1 << c
        out.append(v)
    return out


def rank_packed(rows):
    """Rank of GF(2) rows given as int bitmasks."""
    pivots = {}
    r = 0
    for v in rows:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                r += 1
                break
            v ^= p
    return r


def rank(rows, ncols):
    """``rows`` is a list of iterables of column indices holding a 1."""
    return rank_packed(pack_rows(rows, ncols))
