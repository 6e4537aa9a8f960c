# cython: language_level=3, boundscheck=False, wraparound=False
"""GF(2) rank on rows packed into uint64 words."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t

cnp.import_array()


def pack_rows(rows, Py_ssize_t ncols):
    cdef Py_ssize_t words = (ncols + 63) // 64 or 1
    arr = np.zeros((len(rows), words), dtype=np.uint64)
    cdef uint64_t[:, :] a = arr
    cdef Py_ssize_t i, c
    for i, row in enumerate(rows):
        for c in row:
            a[i, c >> 6] |= (<uint64_t>1) << (c & 63)
    return arr


def rank_array(arr):
    cdef uint64_t[:, :] a = np.ascontiguousarray(arr, dtype=np.uint64).copy()
    cdef Py_ssize_t nrows = a.shape[0], words = a.shape[1]
    cdef Py_ssize_t r = 0, col, w, i, j, piv
    cdef uint64_t bit, tmp
    for col in range(words * 64):
        if r == nrows:
            break
        w = col >> 6
        bit = (<uint64_t>1) << (col & 63)
        piv = -1
        for i in range(r, nrows):
            if a[i, w] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(words):
                tmp = a[piv, j]
                a[piv, j] = a[r, j]
                a[r, j] = tmp
        for i in range(nrows):
            if i != r and (a[i, w] & bit):
                for j in range(w, words):
                    a[i, j] ^= a[r, j]
        r += 1
    return r


def rank(rows, Py_ssize_t ncols):
    if not rows:
        return 0
    return rank_array(pack_rows(rows, ncols))
