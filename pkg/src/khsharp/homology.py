"""Laurent polynomials over F2 and graded cohomology over their fraction field."""
from __future__ import annotations

from dataclasses import dataclass

from . import gf2


class LaurentPoly:
    """Element of F2[h, 1/h] stored as ``bits << low``.

    ``terms`` maps exponent to coefficient (always 1 in F2).
    """
    __slots__ = ("low", "bits")

    def __init__(self, terms=None, *, _raw=None):
        if _raw is not None:
            low, bits = _raw
        else:
            exps = [e for e, c in (terms or {}).items() if c % 2]
            low = min(exps) if exps else 0
            bits = 0
            for e in exps:
                bits ^= 1 << (e - low)
        if bits == 0:
            low = 0
        else:
            tz = (bits & -bits).bit_length() - 1
            bits >>= tz
            low += tz
        self.low, self.bits = low, bits

    @classmethod
    def monomial(cls, e):
        return cls(_raw=(e, 1))

    @property
    def terms(self):
        out = {}
        b, e = self.bits, self.low
        while b:
            if b & 1:
                out[e] = 1
            b >>= 1
            e += 1
        return out

    def is_monomial(self):
        return self.bits == 1

    def __bool__(self):
        return self.bits != 0

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and (self.low, self.bits) == (other.low, other.bits)

    def __hash__(self):
        return hash((self.low, self.bits))

    def __add__(self, other):
        if not self.bits:
            return other
        if not other.bits:
            return self
        lo = min(self.low, other.low)
        return LaurentPoly(_raw=(lo, (self.bits << (self.low - lo)) ^ (other.bits << (other.low - lo))))

    __sub__ = __add__

    def __mul__(self, other):
        a, b = self.bits, other.bits
        if not a or not b:
            return LaurentPoly()
        out = 0
        while b:
            if b & 1:
                out ^= a
            a <<= 1
            b >>= 1
        return LaurentPoly(_raw=(self.low + other.low, out))

    def __repr__(self):
        if not self.bits:
            return "0"
        return " + ".join("h" if e == 1 else f"h^{e}" if e else "1" for e in sorted(self.terms))


def _poly_gcd(a: int, b: int) -> int:
    while b:
        while a and a.bit_length() >= b.bit_length():
            a ^= b << (a.bit_length() - b.bit_length())
        a, b = b, a
    return a


def _poly_div(a: int, b: int) -> int:
    q = 0
    while a and a.bit_length() >= b.bit_length():
        s = a.bit_length() - b.bit_length()
        q ^= 1 << s
        a ^= b << s
    if a:
        raise ArithmeticError("inexact division")
    return q


def _primitive(row):
    """Divide a row by its content: the lowest power of h and the gcd of the entries."""
    g = 0
    for v in row.values():
        g = _poly_gcd(g, v.bits) if g else v.bits
    lo = min(v.low for v in row.values())
    return {c: LaurentPoly(_raw=(v.low - lo, _poly_div(v.bits, g) if g > 1 else v.bits))
            for c, v in row.items()}


def rank(matrix, nrows=None, ncols=None) -> int:
    """Rank over the fraction field of F2[h, 1/h].

    ``matrix`` is a dense list of rows or a sparse dict ``{(r, c): poly}``.
    Fraction-free elimination, pivoting on the entry of lowest degree.
    """
    rows = _as_rows(matrix)
    nz = [v for row in rows for v in row.values()]
    if not nz:
        return 0
    first = nz[0]
    if all(v == first for v in nz):
        return gf2.rank([list(r) for r in rows if r], max(max(r) for r in rows if r) + 1)
    rows = [_primitive(r) for r in rows if r]
    rk = 0
    while rows:
        best = None
        for ri, row in enumerate(rows):
            for c, v in row.items():
                key = (v.bits.bit_length(), ri, c)
                if best is None or key < best[0]:
                    best = (key, ri, c)
        _, ri, c = best
        prow = rows.pop(ri)
        p = prow[c]
        nxt = []
        for row in rows:
            a = row.get(c)
            if a:
                new = {}
                for k in set(row) | set(prow):
                    v = row.get(k, LaurentPoly()) * p + prow.get(k, LaurentPoly()) * a
                    if v:
                        new[k] = v
                row = new
            if row:
                nxt.append(_primitive(row))
        rows = nxt
        rk += 1
    return rk


def _as_rows(matrix):
    if isinstance(matrix, dict):
        rows = {}
        for (r, c), v in matrix.items():
            if v:
                rows.setdefault(r, {})[c] = v
        return list(rows.values())
    return [{c: v for c, v in enumerate(row) if v} for row in matrix]


def support_rank(matrix) -> int:
    """Rank over F2 of the 0/1 pattern of nonzero entries."""
    rows = [sorted(r) for r in _as_rows(matrix) if r]
    if not rows:
        return 0
    return gf2.rank(rows, max(max(r) for r in rows) + 1)


@dataclass
class HomologyTable:
    dims: dict

    @property
    def total(self):
        return sum(self.dims.values())

    def to_json(self):
        return {str(k): v for k, v in sorted(self.dims.items())}

    def multiset(self):
        return sorted(k for k, v in self.dims.items() for _ in range(v))


class GradingShiftError(ValueError):
    pass


def graded_homology(generators, matrix, grading) -> HomologyTable:
    """Cohomology dimensions per integer grading.

    ``grading`` maps a generator index to an integer; every nonzero entry
    ``matrix[(t, s)]`` must satisfy ``grading[t] == grading[s] + 1``.
    """
    blocks = {}
    for (t, s), v in matrix.items():
        if not v:
            continue
        if grading[t] != grading[s] + 1:
            raise GradingShiftError(f"entry {s}->{t} shifts grading by {grading[t] - grading[s]}")
        blocks.setdefault(grading[s], {})[(t, s)] = v
    count = {}
    for i in range(len(generators)):
        count[grading[i]] = count.get(grading[i], 0) + 1
    ranks = {g: rank(b) for g, b in blocks.items()}
    dims = {}
    for g, c in count.items():
        d = c - ranks.get(g, 0) - ranks.get(g - 1, 0)
        if d:
            dims[g] = d
    return HomologyTable(dims)


def reduce_table(table: HomologyTable, modulus: int | None) -> dict:
    if not modulus:
        return dict(table.dims)
    out = {}
    for k, v in table.dims.items():
        out[k % modulus] = out.get(k % modulus, 0) + v
    return out


def compare_tables(t1: HomologyTable, t2: HomologyTable, modulus: int | None = None):
    """Return the shift ``s`` with t2 = t1 shifted by s, or a mismatch report."""
    a, b = reduce_table(t1, modulus), reduce_table(t2, modulus)
    if sum(a.values()) != sum(b.values()):
        return {"match": False, "reason": "total rank differs",
                "totals": [sum(a.values()), sum(b.values())]}
    if not a:
        return {"match": True, "shift": 0}
    ka = min(a)
    cands = range(modulus) if modulus else [kb - ka for kb in b]
    for s in cands:
        shifted = {((k + s) % modulus if modulus else k + s): v for k, v in a.items()}
        if shifted == b:
            return {"match": True, "shift": s}
    return {"match": False, "reason": "no global shift aligns the tables"}
