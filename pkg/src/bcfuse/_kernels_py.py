"""Pure-Python kernels: the fallback twin of the Cython module ``_kernels``.

Both backends expose exactly two functions with identical semantics:

    levenshtein(a, b) -> int
    iso_exists(n, m1, m2, b1, b2) -> bool

``iso_exists`` decides whether a bijection of {0..n-1} exists mapping one
edge-tag matrix onto the other while preserving per-vertex boundary tags.
Matrices are flat row-major lists of interned tag ids (0 = no edge) so the
search is integer-only; callers intern edge/boundary tags beforehand.
"""

from __future__ import annotations

BACKEND = "python"


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance between two strings (two-row DP)."""
    if a == b:
        return 0
    n1, n2 = len(a), len(b)
    if n1 == 0:
        return n2
    if n2 == 0:
        return n1
    row = list(range(n2 + 1))
    for i in range(1, n1 + 1):
        prev_diag = row[0]
        row[0] = i
        ca = a[i - 1]
        for j in range(1, n2 + 1):
            tmp = row[j]
            best = prev_diag if ca == b[j - 1] else prev_diag + 1
            up = row[j] + 1
            if up < best:
                best = up
            left = row[j - 1] + 1
            if left < best:
                best = left
            row[j] = best
            prev_diag = tmp
    return row[n2]


def iso_exists(n: int, m1: list[int], m2: list[int], b1: list[int], b2: list[int]) -> bool:
    """True iff a vertex bijection maps matrix m1 onto m2 and b1 onto b2.

    Backtracking over partial assignments; a vertex pair is compatible when
    boundary tags and self-loops match, and every already-assigned pair agrees
    in both edge directions.
    """
    if n == 0:
        return True
    assigned = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        base1 = i * n
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
                if extend(i + 1):
                    return True
                used[j] = False
        assigned[i] = -1
        return False

    return extend(0)
