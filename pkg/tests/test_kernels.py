"""Kernel tests: both backends against independent oracles, plus parity."""

from __future__ import annotations

import itertools
import os
import random
import subprocess
import sys

import pytest

from bcfuse import _kernels_py, kernels


def _backends():
    mods = [_kernels_py]
    try:
        from bcfuse import _kernels

        mods.append(_kernels)
    except ImportError:
        pass
    return mods


BACKENDS = _backends()
IDS = [m.BACKEND for m in BACKENDS]


def oracle_levenshtein(a: str, b: str) -> int:
    """Textbook full-matrix DP, kept deliberately naive."""
    n1, n2 = len(a), len(b)
    d = [[0] * (n2 + 1) for _ in range(n1 + 1)]
    for i in range(n1 + 1):
        d[i][0] = i
    for j in range(n2 + 1):
        d[0][j] = j
    for i in range(1, n1 + 1):
        for j in range(1, n2 + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
    return d[n1][n2]


def oracle_iso(n, m1, m2, b1, b2) -> bool:
    """Try every permutation outright."""
    for perm in itertools.permutations(range(n)):
        if any(b1[i] != b2[perm[i]] for i in range(n)):
            continue
        if all(
            m1[i * n + j] == m2[perm[i] * n + perm[j]]
            for i in range(n)
            for j in range(n)
        ):
            return True
    return False


@pytest.mark.parametrize("impl", BACKENDS, ids=IDS)
class TestLevenshtein:
    @pytest.mark.parametrize(
        ("a", "b", "expected"),
        [
            ("", "", 0),
            ("", "abc", 3),
            ("abc", "", 3),
            ("abc", "abc", 0),
            ("kitten", "sitting", 3),
            ("flaw", "lawn", 2),
            ("author", "writer", 5),
            ("café", "cafe", 1),
            ("a", "b", 1),
        ],
    )
    def test_known_values(self, impl, a, b, expected):
        assert impl.levenshtein(a, b) == expected

    def test_symmetry_and_oracle_random(self, impl):
        rng = random.Random(42)
        alphabet = "abcdef語é"
        for _ in range(300):
            a = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 12)))
            b = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 12)))
            d = impl.levenshtein(a, b)
            assert d == oracle_levenshtein(a, b)
            assert d == impl.levenshtein(b, a)
            assert abs(len(a) - len(b)) <= d <= max(len(a), len(b))


def _random_case(rng: random.Random, n: int, tags: int = 3):
    m1 = [rng.randrange(0, tags) for _ in range(n * n)]
    b1 = [rng.randrange(0, 2) for _ in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    m2 = [0] * (n * n)
    b2 = [0] * n
    for i in range(n):
        b2[perm[i]] = b1[i]
        for j in range(n):
            m2[perm[i] * n + perm[j]] = m1[i * n + j]
    if rng.random() < 0.5 and n > 0:
        # mutate one cell so roughly half the cases are non-isomorphic
        k = rng.randrange(0, n * n)
        m2[k] = (m2[k] + 1) % tags if tags > 1 else m2[k] + 1
    return m1, m2, b1, b2


@pytest.mark.parametrize("impl", BACKENDS, ids=IDS)
class TestIsoExists:
    def test_empty(self, impl):
        assert impl.iso_exists(0, [], [], [], []) is True

    def test_single_vertex(self, impl):
        assert impl.iso_exists(1, [0], [0], [7], [7]) is True
        assert impl.iso_exists(1, [0], [0], [7], [8]) is False
        assert impl.iso_exists(1, [1], [2], [0], [0]) is False

    def test_triangle_vs_path(self, impl):
        # directed 3-cycle vs 2-edge chain, same vertex count
        tri = [0, 1, 0, 0, 0, 1, 1, 0, 0]
        path = [0, 1, 0, 0, 0, 1, 0, 0, 0]
        b = [0, 0, 0]
        assert impl.iso_exists(3, tri, tri, b, b) is True
        assert impl.iso_exists(3, tri, path, b, b) is False

    def test_permuted_matrix_found(self, impl):
        rng = random.Random(7)
        for _ in range(60):
            n = rng.randrange(1, 7)
            m1 = [rng.randrange(0, 3) for _ in range(n * n)]
            b1 = [rng.randrange(0, 2) for _ in range(n)]
            perm = list(range(n))
            rng.shuffle(perm)
            m2 = [0] * (n * n)
            b2 = [0] * n
            for i in range(n):
                b2[perm[i]] = b1[i]
                for j in range(n):
                    m2[perm[i] * n + perm[j]] = m1[i * n + j]
            assert impl.iso_exists(n, m1, m2, b1, b2) is True

    def test_oracle_random(self, impl):
        rng = random.Random(1234)
        for _ in range(200):
            n = rng.randrange(0, 6)
            m1, m2, b1, b2 = _random_case(rng, n)
            assert impl.iso_exists(n, m1, m2, b1, b2) == oracle_iso(n, m1, m2, b1, b2)


def test_backend_parity():
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    py, cy = BACKENDS[0], BACKENDS[1]
    rng = random.Random(99)
    words = ["paper", "article", "submission", "review", "", "язык", "a" * 40]
    for a in words:
        for b in words:
            assert py.levenshtein(a, b) == cy.levenshtein(a, b)
    for _ in range(150):
        n = rng.randrange(0, 7)
        m1, m2, b1, b2 = _random_case(rng, n, tags=4)
        assert py.iso_exists(n, m1, m2, b1, b2) == cy.iso_exists(n, m1, m2, b1, b2)


def test_cython_vertex_cap():
    try:
        from bcfuse import _kernels
    except ImportError:
        pytest.skip("compiled backend not built")
    n = 11
    with pytest.raises(ValueError):
        _kernels.iso_exists(n, [0] * (n * n), [0] * (n * n), [0] * n, [0] * n)


def test_pure_python_env_override():
    code = (
        "from bcfuse import kernels; print(kernels.BACKEND)"
    )
    env = dict(os.environ, BCFUSE_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True
    )
    assert out.stdout.strip() == "python"


def test_active_backend_exposed():
    assert kernels.BACKEND in {"python", "cython"}
    assert kernels.levenshtein("paper", "paper") == 0
