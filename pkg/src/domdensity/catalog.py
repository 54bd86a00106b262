"""Isomorph-free catalogues of small graphs.

Built by one-vertex extension with canonical-form dedup; every isomorphism
class on n vertices arises from some class on n-1 vertices plus one new
neighbourhood, so the construction is exhaustive.  These catalogues are the
populations behind the exhaustive desk-scale suites.
"""

from __future__ import annotations

from functools import cache

from .errors import CapacityError
from .graphs import Graph, bipartition, canonical_form, is_connected

CATALOG_MAX = 8


@cache
def all_graphs(n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class of graphs on n vertices."""
    if not 1 <= n <= CATALOG_MAX:
        raise CapacityError(f"catalogue limited to 1 <= n <= {CATALOG_MAX}")
    if n == 1:
        return (Graph(1, (0,)),)
    reps: dict[tuple[int, int], Graph] = {}
    top = n - 1
    for g in all_graphs(n - 1):
        for mask in range(1 << top):
            nb = [g.neighbors[v] | ((mask >> v & 1) << top) for v in range(top)]
            nb.append(mask)
            candidate = Graph(n, tuple(nb))
            key = canonical_form(candidate)
            if key not in reps:
                reps[key] = candidate
    return tuple(reps.values())


@cache
def connected_graphs(n: int) -> tuple[Graph, ...]:
    return tuple(g for g in all_graphs(n) if is_connected(g))


@cache
def connected_bipartite_graphs(n: int) -> tuple[Graph, ...]:
    return tuple(g for g in connected_graphs(n) if bipartition(g) is not None)
