"""Exact minimum dominating set computation.

``gamma_exact`` is a branch and bound specialised to closed-neighbourhood
covering: vertices are preferred in descending-degree order (ties by index),
the incumbent is seeded by a greedy max-coverage pass, and branches are cut
by two admissible lower bounds, ceil(uncovered / (max degree + 1)) and a
greedily built 2-packing of the uncovered region.  ``gamma_brute`` is the
independent oracle: plain subset enumeration in increasing size order, kept
free of the solver's pruning machinery.

Witnesses are deterministic: among all minimum dominating sets the one whose
sorted vertex tuple is lexicographically smallest is reconstructed by fixing
vertices in ascending order against a feasibility search at the known
optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .errors import CapacityError, PreconditionError
from .graphs import (
    DEFAULT_MAX_PRODUCT_VERTICES,
    Graph,
    bit_list,
    cartesian_product,
    graph_key,
    max_degree,
)

BRUTE_FORCE_LIMIT = 24


@dataclass(frozen=True)
class DominatingSet:
    """A witness set as a vertex bitmask plus its size."""

    vertices: int
    size: int

    @classmethod
    def from_mask(cls, mask: int) -> "DominatingSet":
        return cls(mask, mask.bit_count())

    def members(self) -> list[int]:
        return bit_list(self.vertices)


@dataclass(frozen=True)
class VizingReport:
    gamma_g: int
    gamma_h: int
    gamma_product: int
    holds: bool
    witness_g: DominatingSet
    witness_h: DominatingSet
    witness_product: DominatingSet


def closed_neighborhoods(g: Graph) -> list[int]:
    return [g.neighbors[v] | (1 << v) for v in range(g.n)]


def is_dominating(g: Graph, vertices: int) -> bool:
    """True iff the union of closed neighbourhoods over ``vertices`` is V."""
    if vertices & ~g.vertex_mask:
        raise PreconditionError("candidate set outside the vertex set")
    covered = 0
    m = vertices
    while m:
        low = m & -m
        covered |= g.neighbors[low.bit_length() - 1] | low
        m ^= low
    return covered == g.vertex_mask


class _Search:
    """Branch-and-bound state shared by the optimisation and feasibility passes."""

    def __init__(self, g: Graph):
        self.n = g.n
        self.full = g.vertex_mask
        self.closed = closed_neighborhoods(g)
        self.cover_span = max_degree(g) + 1
        order = sorted(range(g.n), key=lambda v: (-g.neighbors[v].bit_count(), v))
        self.pref = [0] * g.n
        for r, v in enumerate(order):
            self.pref[v] = r
        self.cand_order = [
            tuple(sorted(bit_list(self.closed[v]), key=lambda u: self.pref[u]))
            for v in range(g.n)
        ]
        self.best = g.n

    def greedy_cover(self) -> int:
        covered = 0
        chosen = 0
        while covered != self.full:
            best_v = -1
            best_gain = 0
            for v in range(self.n):
                gain = (self.closed[v] & ~covered).bit_count()
                if gain > best_gain or (gain == best_gain and best_v >= 0
                                        and self.pref[v] < self.pref[best_v]):
                    if gain > 0:
                        best_v, best_gain = v, gain
            chosen |= 1 << best_v
            covered |= self.closed[best_v]
        return chosen

    def lower_bound(self, covered: int) -> int:
        uncovered = self.full & ~covered
        count = uncovered.bit_count()
        lb = -(-count // self.cover_span)
        packing = 0
        taken = 0
        m = uncovered
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            cv = self.closed[v]
            if not cv & taken:
                packing += 1
                taken |= cv
        return packing if packing > lb else lb

    def _pick(self, covered: int, allowed: int) -> int:
        """Uncovered vertex with the fewest allowed dominators (-1 if any has none)."""
        best_v = -1
        best_key = None
        m = self.full & ~covered
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            c = (self.closed[v] & allowed).bit_count()
            if c == 0:
                return -1
            key = (c, self.pref[v])
            if best_key is None or key < best_key:
                best_key, best_v = key, v
        return best_v

    def minimum_size(self, seed: int) -> int:
        self.best = seed.bit_count()
        self._optimise(0, 0, self.full)
        return self.best

    def _optimise(self, count: int, covered: int, allowed: int):
        if covered == self.full:
            self.best = count
            return
        if count + self.lower_bound(covered) >= self.best:
            return
        v = self._pick(covered, allowed)
        if v < 0:
            return
        rest = allowed
        for u in self.cand_order[v]:
            if rest >> u & 1:
                rest ^= 1 << u
                self._optimise(count + 1, covered | self.closed[u], rest)

    def feasible(self, count: int, covered: int, allowed: int, budget: int) -> bool:
        if covered == self.full:
            return True
        if count + self.lower_bound(covered) > budget:
            return False
        v = self._pick(covered, allowed)
        if v < 0:
            return False
        rest = allowed
        for u in self.cand_order[v]:
            if rest >> u & 1:
                rest ^= 1 << u
                if self.feasible(count + 1, covered | self.closed[u], rest, budget):
                    return True
        return False

    def lexmin_witness(self, gamma: int) -> int:
        """Smallest minimum dominating set under sorted-vertex-tuple order."""
        chosen = 0
        covered = 0
        lo = 0
        for step in range(gamma):
            for v in range(lo, self.n):
                grown = covered | self.closed[v]
                allowed = self.full & ~((1 << (v + 1)) - 1)
                if self.feasible(step + 1, grown, allowed, gamma):
                    chosen |= 1 << v
                    covered = grown
                    lo = v + 1
                    break
            else:
                raise AssertionError("witness reconstruction failed")
            if covered == self.full:
                break
        assert covered == self.full and chosen.bit_count() == gamma
        return chosen


def gamma_value(g: Graph, cache: "GammaCache | None" = None) -> int:
    """The domination number alone (cheaper than gamma_exact in scans)."""
    key = None
    if cache is not None:
        key = graph_key(g)
        hit = cache.get(key)
        if hit is not None:
            return hit
    search = _Search(g)
    value = search.minimum_size(search.greedy_cover())
    if cache is not None:
        cache.put(key, value)
    return value


def gamma_exact(g: Graph, cache: "GammaCache | None" = None) -> tuple[int, DominatingSet]:
    """Domination number together with the deterministic lex-min witness."""
    value = gamma_value(g, cache)
    witness = _Search(g).lexmin_witness(value)
    return value, DominatingSet.from_mask(witness)


def gamma_brute(g: Graph) -> int:
    """Oracle: enumerate subsets in increasing size order, n <= 24 enforced."""
    if g.n > BRUTE_FORCE_LIMIT:
        raise CapacityError(f"brute-force oracle limited to n <= {BRUTE_FORCE_LIMIT}")
    closed = closed_neighborhoods(g)
    full = g.vertex_mask
    for size in range(g.n + 1):
        for combo in combinations(range(g.n), size):
            covered = 0
            for v in combo:
                covered |= closed[v]
            if covered == full:
                return size
    raise AssertionError("unreachable: the full vertex set dominates")


def check_vizing(g: Graph, h: Graph, cache: "GammaCache | None" = None,
                 max_vertices: int = DEFAULT_MAX_PRODUCT_VERTICES) -> VizingReport:
    """Evaluate gamma(G box H) >= gamma(G) gamma(H) with exact values."""
    product = cartesian_product(g, h, max_vertices)
    gamma_g, wit_g = gamma_exact(g, cache)
    gamma_h, wit_h = gamma_exact(h, cache)
    gamma_p, wit_p = gamma_exact(product.graph, cache)
    return VizingReport(
        gamma_g=gamma_g,
        gamma_h=gamma_h,
        gamma_product=gamma_p,
        holds=gamma_p >= gamma_g * gamma_h,
        witness_g=wit_g,
        witness_h=wit_h,
        witness_product=wit_p,
    )


class GammaCache:
    """Persistent gamma cache: an append-only text log of "key value" lines.

    The whole log is reloaded at startup; writes go through a single writer
    (this object) and are flushed immediately so scans can be resumed.
    """

    def __init__(self, path: str | Path | None = None):
        self._values: dict[str, int] = {}
        self._path = Path(path) if path is not None else None
        if self._path is not None and self._path.exists():
            for lineno, line in enumerate(self._path.read_text().splitlines(), 1):
                line = line.strip()
                if not line:
                    continue
                key, sep, value = line.rpartition(" ")
                if not sep:
                    raise ValueError(f"{self._path}:{lineno}: malformed cache line")
                self._values[key] = int(value)

    def __len__(self) -> int:
        return len(self._values)

    def get(self, key: str) -> int | None:
        return self._values.get(key)

    def put(self, key: str, value: int):
        known = self._values.get(key)
        if known is not None:
            if known != value:
                raise RuntimeError(
                    f"cache inconsistency for {key!r}: {known} vs {value}")
            return
        self._values[key] = value
        if self._path is not None:
            with self._path.open("a") as fh:
                fh.write(f"{key} {value}\n")
                fh.flush()
