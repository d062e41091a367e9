import itertools

import pytest
from hypothesis import given, strategies as st

from geomconn.oracle import (
    NotSquarefreeMonomialError,
    graph_component_count,
    minimal_primes_squarefree,
    minimal_vertex_covers,
    oracle_component_count,
)

from .helpers import disjoint_lines, ideal


def _names(I, primes):
    return [{I.ring.variables[i] for i in P} for P in primes]


def test_minimal_primes_examples():
    L = disjoint_lines(3)
    assert _names(L, minimal_primes_squarefree(L)) == [{"x", "y"}, {"u", "v"}]
    I = ideal(3, "x y z", ["x*y"])
    assert _names(I, minimal_primes_squarefree(I)) == [{"x"}, {"y"}]
    X = ideal(3, "x y", ["x"])
    assert _names(X, minimal_primes_squarefree(X)) == [{"x"}]


def test_rejects_ineligible_generators():
    with pytest.raises(NotSquarefreeMonomialError):
        minimal_primes_squarefree(ideal(3, "x y", ["x^2"]))
    with pytest.raises(NotSquarefreeMonomialError):
        minimal_primes_squarefree(ideal(3, "x y", ["x + y"]))


def test_graph_count_examples():
    assert graph_component_count([frozenset({0, 1}), frozenset({2, 3})], 4) == 2
    assert graph_component_count([frozenset({0}), frozenset({1})], 3) == 1
    assert graph_component_count([frozenset({0})], 3) == 1
    # the irrelevant prime is not a point of Proj
    assert graph_component_count([frozenset({0, 1})], 2) == 0


def test_field_independent():
    for p in (2, 3, 5):
        assert oracle_component_count(disjoint_lines(p)) == 2


def _brute_covers(edges, n):
    covers = [frozenset(S) for k in range(n + 1) for S in itertools.combinations(range(n), k)
              if all(set(S) & e for e in edges)]
    return sorted((c for c in covers if not any(d < c for d in covers)), key=lambda c: (len(c), sorted(c)))


@given(
    n=st.integers(1, 6),
    data=st.data(),
)
def test_covers_match_brute_force(n, data):
    edges = data.draw(st.lists(st.frozensets(st.integers(0, n - 1), min_size=1), max_size=8))
    assert minimal_vertex_covers(edges) == _brute_covers(edges, n)
