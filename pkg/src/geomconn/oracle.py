"""Component count for square-free monomial ideals, by pure combinatorics.

The minimal primes of a square-free monomial ideal are the coordinate primes
on the minimal vertex covers of the generator supports. Two components of
Proj meet iff the union of their prime's variables is not everything; the
count is the number of connected components of that graph.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .groebner import Ideal


class NotSquarefreeMonomialError(ValueError):
    pass


def squarefree_supports(I: Ideal) -> list[frozenset[int]]:
    out = []
    for g in I.generators:
        if len(g.terms) != 1:
            raise NotSquarefreeMonomialError(f"generator {g} is not a monomial")
        (m,) = g.terms
        if any(e > 1 for e in m):
            raise NotSquarefreeMonomialError(f"generator {g} is not square-free")
        out.append(frozenset(i for i, e in enumerate(m) if e))
    return out


def minimal_vertex_covers(supports: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    """Inclusion-minimal sets meeting every support, sorted by (size, members)."""
    edges = sorted({s for s in supports}, key=lambda s: (len(s), sorted(s)))
    if any(not s for s in edges):
        return []  # a unit generator: no primes at all
    # drop supports containing another one; they are covered automatically
    edges = [s for s in edges if not any(t < s for t in edges)]
    covers: set[frozenset[int]] = set()

    def split(chosen: frozenset[int], k: int) -> None:
        while k < len(edges) and edges[k] & chosen:
            k += 1
        if k == len(edges):
            covers.add(chosen)
            return
        for v in sorted(edges[k]):
            split(chosen | {v}, k + 1)

    split(frozenset(), 0)
    minimal = [c for c in covers if not any(d < c for d in covers)]
    return sorted(minimal, key=lambda c: (len(c), sorted(c)))


def minimal_primes_squarefree(I: Ideal) -> list[frozenset[int]]:
    """Minimal primes of I as sets of variable indices."""
    return minimal_vertex_covers(squarefree_supports(I))


def graph_component_count(primes: Sequence[frozenset[int]], n: int) -> int:
    """Components of the graph with an edge when two primes' union misses a variable.

    The irrelevant prime (all n variables) is dropped first, as saturation would.
    """
    full = frozenset(range(n))
    nodes = [P for P in primes if P != full]
    parent = list(range(len(nodes)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if nodes[i] | nodes[j] != full:
                parent[find(i)] = find(j)
    return len({find(i) for i in range(len(nodes))})


def oracle_component_count(I: Ideal) -> int:
    return graph_component_count(minimal_primes_squarefree(I), I.ring.nvars)
