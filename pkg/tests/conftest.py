"""Shared brute-force oracles for the test suite.

These are deliberately independent of the library code paths they
check: path sets come from permutation enumeration, optima from direct
scans, tropical values from the produced-set formula.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

import pytest

from troplab.builders import edge_count, edge_var
from troplab.circuits import MAXPLUS, MINPLUS, VectorSet, produced_set


def simple_path_vectors(n: int, s: int, t: int) -> VectorSet:
    """Edge vectors of all simple s-t paths in K_n, by enumeration."""
    others = [v for v in range(1, n + 1) if v not in (s, t)]
    vectors = []
    for r in range(len(others) + 1):
        for mids in permutations(others, r):
            walk = [s, *mids, t]
            vec = [0] * edge_count(n)
            for a, b in zip(walk, walk[1:]):
                vec[edge_var(n, a, b) - 1] += 1
            vectors.append(tuple(vec))
    return VectorSet(edge_count(n), vectors)


def spanning_tree_vectors(n: int) -> VectorSet:
    """Edge vectors of all spanning trees of K_n (brute force over subsets)."""
    m = edge_count(n)
    edges = list(combinations(range(1, n + 1), 2))
    vectors = []
    for subset in combinations(range(m), n - 1):
        parent = list(range(n + 1))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        ok = True
        for ei in subset:
            a, b = edges[ei]
            ra, rb = find(a), find(b)
            if ra == rb:
                ok = False
                break
            parent[ra] = rb
        if ok:
            vec = [0] * m
            for ei in subset:
                vec[ei] = 1
            vectors.append(tuple(vec))
    return VectorSet(m, vectors)


def shortest_path_oracle(n: int, s: int, t: int, weights) -> Fraction:
    """Minimum weight over all simple s-t paths, by enumeration."""
    best = None
    for vec in simple_path_vectors(n, s, t):
        total = sum(Fraction(w) * c for w, c in zip(weights, vec))
        if best is None or total < best:
            best = total
    return best


def tropical_value_oracle(circuit, x) -> Fraction:
    """Optimum of <b, x> over the produced set (constant-free circuits)."""
    assert circuit.is_constant_free
    opt = min if circuit.semiring == MINPLUS else max
    assert circuit.semiring in (MINPLUS, MAXPLUS)
    return opt(
        sum(Fraction(xi) * bi for xi, bi in zip(x, b))
        for b in produced_set(circuit)
    )


@pytest.fixture
def rng():
    import random

    return random.Random(20240814)
