# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: edit distance and bijection search over tag matrices.

Semantics are identical to the pure-Python twin ``_kernels_py``; tests assert
parity between the two backends. Vertex counts are capped at 10 by callers
(the search is factorial), which lets the matrices live in fixed buffers.
"""

from libc.stdlib cimport free, malloc

BACKEND = "cython"

DEF MAX_N = 10


def levenshtein(str a, str b) -> int:
    """Unit-cost edit distance between two strings (two-row DP)."""
    if a == b:
        return 0
    cdef Py_ssize_t n1 = len(a), n2 = len(b), i, j
    if n1 == 0:
        return n2
    if n2 == 0:
        return n1
    cdef int *row = <int *> malloc((n2 + 1) * sizeof(int))
    if row == NULL:
        raise MemoryError()
    cdef int prev_diag, tmp, best, up, left
    cdef Py_UCS4 ca
    try:
        for j in range(n2 + 1):
            row[j] = <int> j
        for i in range(1, n1 + 1):
            prev_diag = row[0]
            row[0] = <int> i
            ca = a[i - 1]
            for j in range(1, n2 + 1):
                tmp = row[j]
                best = prev_diag if ca == <Py_UCS4> b[j - 1] else prev_diag + 1
                up = row[j] + 1
                if up < best:
                    best = up
                left = row[j - 1] + 1
                if left < best:
                    best = left
                row[j] = best
                prev_diag = tmp
        return row[n2]
    finally:
        free(row)


cdef bint _extend(int i, int n, int *m1, int *m2, int *b1, int *b2,
                  int *assigned, bint *used) noexcept:
    if i == n:
        return True
    cdef int j, k, pk, base1 = i * n
    cdef bint ok
    for j in range(n):
        if used[j] or b1[i] != b2[j] or m1[base1 + i] != m2[j * n + j]:
            continue
        ok = True
        for k in range(i):
            pk = assigned[k]
            if m1[base1 + k] != m2[j * n + pk] or m1[k * n + i] != m2[pk * n + j]:
                ok = False
                break
        if ok:
            assigned[i] = j
            used[j] = True
            if _extend(i + 1, n, m1, m2, b1, b2, assigned, used):
                return True
            used[j] = False
    assigned[i] = -1
    return False


def iso_exists(int n, list m1, list m2, list b1, list b2) -> bool:
    """True iff a vertex bijection maps matrix m1 onto m2 and b1 onto b2."""
    if n == 0:
        return True
    if n > MAX_N:
        raise ValueError(f"iso_exists supports at most {MAX_N} vertices, got {n}")
    cdef int M1[MAX_N * MAX_N]
    cdef int M2[MAX_N * MAX_N]
    cdef int B1[MAX_N]
    cdef int B2[MAX_N]
    cdef int assigned[MAX_N]
    cdef bint used[MAX_N]
    cdef int i
    for i in range(n * n):
        M1[i] = m1[i]
        M2[i] = m2[i]
    for i in range(n):
        B1[i] = b1[i]
        B2[i] = b2[i]
        assigned[i] = -1
        used[i] = False
    return _extend(0, n, M1, M2, B1, B2, assigned, used)
