"""Bitset graphs and the structural operations everything else builds on.

Vertices are 0..n-1 and every neighbourhood is a Python int used as a
bitset, so the set algebra in the solver and the exhaustive scans is plain
integer arithmetic (or, and, popcount).  Graphs are immutable after
construction and safe to share across workers.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .errors import CapacityError, ParseError, PreconditionError

DEFAULT_MAX_PRODUCT_VERTICES = 4096
CANONICAL_FORM_MAX = 10

_GRAPH6_HEADER = ">>graph6<<"


def iter_bits(mask: int):
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: ``neighbors[v]`` is the open neighbourhood N(v)."""

    n: int
    neighbors: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph order must be a positive integer")
        if len(self.neighbors) != self.n:
            raise ValueError("neighbor table length does not match order")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.neighbors):
            if nb & ~full:
                raise ValueError(f"neighbour mask of vertex {v} references vertices >= n")
            if nb >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for v, nb in enumerate(self.neighbors):
            m = nb
            while m:
                low = m & -m
                u = low.bit_length() - 1
                m ^= low
                if not self.neighbors[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.neighbors[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.neighbors[u] >> v & 1)

    def edge_count(self) -> int:
        return sum(nb.bit_count() for nb in self.neighbors) // 2

    def edges(self):
        for v in range(self.n):
            m = self.neighbors[v] >> (v + 1)
            while m:
                low = m & -m
                yield v, v + 1 + low.bit_length() - 1
                m ^= low


def from_edges(n: int, edges) -> Graph:
    nb = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError(f"self-loop {u}-{v}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge {u}-{v} outside vertex range 0..{n - 1}")
        nb[u] |= 1 << v
        nb[v] |= 1 << u
    return Graph(n, tuple(nb))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path_graph(n: int) -> Graph:
    return from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    left = (1 << a) - 1
    right = ((1 << b) - 1) << a
    return Graph(a + b, tuple(right if v < a else left for v in range(a + b)))


def star(leaves: int) -> Graph:
    """K_{1,leaves} with the centre at vertex 0."""
    return complete_bipartite(1, leaves)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    nb = list(g.neighbors) + [m << g.n for m in h.neighbors]
    return Graph(g.n + h.n, tuple(nb))


def max_degree(g: Graph) -> int:
    return max(nb.bit_count() for nb in g.neighbors)


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        grown = seen
        for v in iter_bits(frontier):
            grown |= g.neighbors[v]
        frontier = grown & ~seen
        seen = grown
    return seen == g.vertex_mask


# ---------------------------------------------------------------------------
# graph6 interchange format
# ---------------------------------------------------------------------------

def _decode_order(s: str, pos: int) -> tuple[int, int]:
    c = ord(s[pos])
    if not 63 <= c <= 126:
        raise ParseError(f"invalid graph6 byte {s[pos]!r}", offset=pos)
    if c != 126:
        return c - 63, pos + 1
    if pos + 1 < len(s) and ord(s[pos + 1]) == 126:
        start, width, low = pos + 2, 6, 258048
    else:
        start, width, low = pos + 1, 3, 63
    if start + width > len(s):
        raise ParseError("truncated multi-byte order field", offset=len(s))
    n = 0
    for i in range(width):
        c = ord(s[start + i])
        if not 63 <= c <= 126:
            raise ParseError(f"invalid graph6 byte {s[start + i]!r}", offset=start + i)
        n = (n << 6) | (c - 63)
    if n < low:
        raise ParseError("non-minimal multi-byte order encoding", offset=pos)
    return n, start + width


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (optionally prefixed by the standard header)."""
    s = text.rstrip("\r\n")
    pos = 0
    if s.startswith(_GRAPH6_HEADER):
        pos = len(_GRAPH6_HEADER)
    if pos >= len(s):
        raise ParseError("empty graph6 input", offset=pos)
    n, pos = _decode_order(s, pos)
    if n == 0:
        raise ParseError("zero-vertex graphs are not supported", offset=0)
    nbits = n * (n - 1) // 2
    ngroups = (nbits + 5) // 6
    if len(s) - pos < ngroups:
        raise ParseError("truncated adjacency payload", offset=len(s))
    if len(s) - pos > ngroups:
        raise ParseError("trailing data after graph6 payload", offset=pos + ngroups)
    vals = []
    for i in range(ngroups):
        c = ord(s[pos + i])
        if not 63 <= c <= 126:
            raise ParseError(f"invalid graph6 byte {s[pos + i]!r}", offset=pos + i)
        vals.append(c - 63)
    nb = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if vals[k // 6] >> (5 - k % 6) & 1:
                nb[i] |= 1 << j
                nb[j] |= 1 << i
            k += 1
    if ngroups and vals[-1] & ((1 << (6 * ngroups - nbits)) - 1):
        raise ParseError("nonzero padding bits", offset=pos + ngroups - 1)
    return Graph(n, tuple(nb))


def emit_graph6(g: Graph) -> str:
    """Encode ``g`` in graph6 (single-byte order for n <= 62, multi-byte above)."""
    n = g.n
    if n <= 62:
        out = [chr(63 + n)]
    elif n <= 258047:
        out = ["~", chr(63 + (n >> 12 & 63)), chr(63 + (n >> 6 & 63)), chr(63 + (n & 63))]
    else:
        out = ["~", "~"] + [chr(63 + (n >> (6 * i) & 63)) for i in range(5, -1, -1)]
    cur = 0
    filled = 0
    for j in range(1, n):
        col = g.neighbors[j]
        for i in range(j):
            cur = cur << 1 | (col >> i & 1)
            filled += 1
            if filled == 6:
                out.append(chr(63 + cur))
                cur = 0
                filled = 0
    if filled:
        out.append(chr(63 + (cur << (6 - filled))))
    return "".join(out)


def graph_key(g: Graph) -> str:
    """Stable cache key: raw graph6 when short, sha256 of it otherwise.

    Product graphs are built deterministically, so an adjacency-exact key is
    stable across runs; hashing keeps cache lines bounded for large orders.
    """
    g6 = emit_graph6(g)
    if g.n <= 62:
        return g6
    return "sha256:" + hashlib.sha256(g6.encode("ascii")).hexdigest()


# ---------------------------------------------------------------------------
# edge-list text format: one "u v" pair per line, 0-indexed, '#' comments
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    edges = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v'", offset=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex", offset=lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex index", offset=lineno)
        if u == v:
            raise ParseError(f"line {lineno}: self-loop {u}-{v}", offset=lineno)
        edges.append((u, v))
        top = max(top, u, v)
    if not edges:
        raise ParseError("no edges in edge-list input")
    return from_edges(top + 1, edges)


# ---------------------------------------------------------------------------
# bipartitions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BipartiteGraph:
    """A graph together with a certified two-sided partition, |A| <= |B|."""

    graph: Graph
    side_a: int
    side_b: int

    def __post_init__(self):
        g = self.graph
        if self.side_a & self.side_b:
            raise ValueError("sides overlap")
        if (self.side_a | self.side_b) != g.vertex_mask:
            raise ValueError("sides do not cover the vertex set")
        if self.side_a.bit_count() > self.side_b.bit_count():
            raise ValueError("side A must not be larger than side B")
        for v in iter_bits(self.side_a):
            if g.neighbors[v] & self.side_a:
                raise ValueError("edge inside side A")
        for v in iter_bits(self.side_b):
            if g.neighbors[v] & self.side_b:
                raise ValueError("edge inside side B")

    @property
    def size_a(self) -> int:
        return self.side_a.bit_count()

    @property
    def size_b(self) -> int:
        return self.side_b.bit_count()


def bipartition(g: Graph) -> BipartiteGraph | None:
    """Two-colour ``g``; None when an odd cycle exists.

    Deterministic side rule: in each connected component the colour class
    containing the component's lowest-index vertex goes to side A when it is
    the smaller (or equal) class, to side B otherwise.  Summing per-component
    minima keeps |A| <= |B| globally, so downstream reports are reproducible.
    """
    color = [-1] * g.n
    side_a = side_b = 0
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        comp = [1 << start, 0]
        stack = [start]
        while stack:
            v = stack.pop()
            for u in iter_bits(g.neighbors[v]):
                if color[u] < 0:
                    color[u] = color[v] ^ 1
                    comp[color[u]] |= 1 << u
                    stack.append(u)
                elif color[u] == color[v]:
                    return None
        low, high = comp
        if low.bit_count() <= high.bit_count():
            side_a |= low
            side_b |= high
        else:
            side_a |= high
            side_b |= low
    return BipartiteGraph(g, side_a, side_b)


# ---------------------------------------------------------------------------
# Cartesian products and leaf attachment
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LabeledProduct:
    """Cartesian product with the (g, h) -> vertex bijection kept explicit."""

    graph: Graph
    g_order: int
    h_order: int

    def index(self, a: int, b: int) -> int:
        return a * self.h_order + b

    def factors(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.h_order)


def cartesian_product(g: Graph, h: Graph,
                      max_vertices: int = DEFAULT_MAX_PRODUCT_VERTICES) -> LabeledProduct:
    """Cartesian product: (a,b) ~ (a',b') iff equal in one coordinate and
    adjacent in the other.  Vertex (a, b) gets index a * h.n + b."""
    total = g.n * h.n
    if total > max_vertices:
        raise CapacityError(
            f"product order {total} exceeds the {max_vertices}-vertex cap")
    hn = h.n
    nb = [0] * total
    for a in range(g.n):
        base = a * hn
        row_targets = [a2 * hn for a2 in iter_bits(g.neighbors[a])]
        for b in range(hn):
            m = h.neighbors[b] << base
            for tb in row_targets:
                m |= 1 << (tb + b)
            nb[base + b] = m
    return LabeledProduct(Graph(total, tuple(nb)), g.n, h.n)


def attach_leaves(g: Graph, targets: int) -> Graph:
    """Append one pendant vertex per target, in ascending target order."""
    if targets & ~g.vertex_mask:
        raise PreconditionError("targets outside the vertex set")
    if targets == 0:
        return g
    chosen = bit_list(targets)
    nb = list(g.neighbors)
    for i, v in enumerate(chosen):
        leaf = g.n + i
        nb[v] |= 1 << leaf
        nb.append(1 << v)
    return Graph(g.n + len(chosen), tuple(nb))


# ---------------------------------------------------------------------------
# canonical forms for small graphs (catalogues, isomorphism checks)
# ---------------------------------------------------------------------------

def _refined_colors(g: Graph) -> list[int]:
    colors = [g.degree(v) for v in range(g.n)]
    distinct = len(set(colors))
    while True:
        sig = [
            (colors[v], tuple(sorted(colors[u] for u in iter_bits(g.neighbors[v]))))
            for v in range(g.n)
        ]
        remap = {s: i for i, s in enumerate(sorted(set(sig)))}
        colors = [remap[s] for s in sig]
        if len(remap) == distinct:
            return colors
        distinct = len(remap)


def canonical_form(g: Graph) -> tuple[int, int]:
    """Minimal edge-set encoding over all relabelings, as (n, bitmask).

    Permutations are restricted to the colour classes of a degree/neighbour
    refinement, which is sound because the refinement is an isomorphism
    invariant and class order is fixed by the invariant values themselves.
    Exponential in the class sizes, hence the small-order guard.
    """
    if g.n > CANONICAL_FORM_MAX:
        raise CapacityError(f"canonical form limited to n <= {CANONICAL_FORM_MAX}")
    from itertools import permutations, product

    colors = _refined_colors(g)
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(colors[v], []).append(v)
    ordered = [classes[c] for c in sorted(classes)]
    offsets = []
    off = 0
    for members in ordered:
        offsets.append(off)
        off += len(members)
    edge_list = list(g.edges())
    best = None
    pos = [0] * g.n
    for arrangement in product(*(permutations(members) for members in ordered)):
        for ci, arranged in enumerate(arrangement):
            base = offsets[ci]
            for i, v in enumerate(arranged):
                pos[v] = base + i
        key = 0
        for u, v in edge_list:
            i, j = pos[u], pos[v]
            if i > j:
                i, j = j, i
            key |= 1 << (j * (j - 1) // 2 + i)
        if best is None or key < best:
            best = key
    return g.n, best if best is not None else 0


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    return canonical_form(g) == canonical_form(h)
