"""Undirected simple graphs: edge-list parsing, core decomposition, core subgraphs.

Vertices are stored under dense ids 0..n-1; the original (external) ids from the
input edge list are kept in ``Graph.id_map``. All containers are immutable by
convention after construction and safe to share across threads.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

__all__ = [
    "Graph",
    "CoreInfo",
    "EdgeListParseError",
    "parse_edge_list",
    "core_decomposition",
    "k_core_subgraph",
    "induced_subgraph",
]

MAX_EXTERNAL_ID = 2**64 - 1


class EdgeListParseError(ValueError):
    """Malformed edge-list input; carries the 1-based offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


@dataclass
class Graph:
    """Compact undirected simple graph.

    adjacency[v] is the strictly increasing list of neighbors of dense vertex v.
    id_map[v] is the original external id of dense vertex v; index_of inverts it.
    """

    n: int
    adjacency: list[list[int]]
    id_map: list[int]
    index_of: dict[int, int] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.index_of:
            self.index_of = {orig: v for v, orig in enumerate(self.id_map)}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def has_edge(self, u: int, v: int) -> bool:
        a, b = (u, v) if self.degree(u) <= self.degree(v) else (v, u)
        return b in self.adjacency[a] if len(self.adjacency[a]) < 16 else _bisect_has(self.adjacency[a], b)

    def neighbor_sets(self) -> list[set[int]]:
        """Per-vertex neighbor sets; fresh copies, callers may mutate."""
        return [set(a) for a in self.adjacency]

    def validate(self) -> None:
        """Check the structural invariants; raises AssertionError on violation."""
        assert len(self.adjacency) == self.n and len(self.id_map) == self.n
        assert len(set(self.id_map)) == self.n
        for v, nbrs in enumerate(self.adjacency):
            assert all(nbrs[i] < nbrs[i + 1] for i in range(len(nbrs) - 1)), "adjacency not strictly increasing"
            assert v not in nbrs, "self-loop"
            for u in nbrs:
                assert 0 <= u < self.n
                assert v in self.adjacency[u], "asymmetric edge"


def _bisect_has(sorted_list: list[int], x: int) -> bool:
    import bisect

    i = bisect.bisect_left(sorted_list, x)
    return i < len(sorted_list) and sorted_list[i] == x


@dataclass
class CoreInfo:
    """Core numbers, degeneracy, and the deterministic min-degree peeling order."""

    core: list[int]
    degeneracy: int
    degeneracy_order: list[int]


def from_edges(pairs: Iterable[tuple[int, int]]) -> Graph:
    """Build a Graph from (original_id, original_id) pairs.

    Self-loops register the vertex but add no edge; duplicate edges are dropped.
    Dense ids follow first-seen token order.
    """
    id_map: list[int] = []
    index_of: dict[int, int] = {}

    def dense(orig: int) -> int:
        v = index_of.get(orig)
        if v is None:
            v = len(id_map)
            index_of[orig] = v
            id_map.append(orig)
        return v

    edges: set[tuple[int, int]] = set()
    for a, b in pairs:
        u, v = dense(a), dense(b)
        if u == v:
            continue
        edges.add((u, v) if u < v else (v, u))

    adjacency: list[list[int]] = [[] for _ in id_map]
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    for a in adjacency:
        a.sort()
    return Graph(n=len(id_map), adjacency=adjacency, id_map=id_map, index_of=index_of)


def parse_edge_list(source: str | bytes | IO) -> Graph:
    """Parse edge-list text: one edge per line, two whitespace-separated ids.

    Lines starting with '#' or '%' and blank lines are ignored. Duplicate edges
    and self-loops are dropped silently. Raises EdgeListParseError on malformed
    tokens, wrong token counts, ids outside [0, 2^64-1], or input with no edges.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = source
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    pairs: list[tuple[int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(f"expected 2 tokens, found {len(tokens)}", line_no)
        ids = []
        for tok in tokens:
            try:
                value = int(tok)
            except ValueError:
                raise EdgeListParseError(f"malformed integer token {tok!r}", line_no) from None
            if value < 0:
                raise EdgeListParseError(f"negative vertex id {value}", line_no)
            if value > MAX_EXTERNAL_ID:
                raise EdgeListParseError(f"vertex id {value} exceeds 64-bit range", line_no)
            ids.append(value)
        pairs.append((ids[0], ids[1]))

    if not pairs:
        raise EdgeListParseError("no edges in input")
    return from_edges(pairs)


def core_decomposition(g: Graph) -> CoreInfo:
    """Core number of every vertex via min-degree peeling.

    The peeling order removes, at each step, the minimum-degree vertex among the
    remaining ones, breaking ties by smaller dense id; the result is independent
    of input edge order.
    """
    deg = [g.degree(v) for v in range(g.n)]
    core = [0] * g.n
    order: list[int] = []
    removed = [False] * g.n
    heap: list[tuple[int, int]] = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    current = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        current = max(current, d)
        core[v] = current
        order.append(v)
        for u in g.adjacency[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    degeneracy = max(core, default=0)
    return CoreInfo(core=core, degeneracy=degeneracy, degeneracy_order=order)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Induced subgraph on the given dense ids, remapped densely.

    The new dense ids follow ascending old dense id; id_map is composed so it
    still refers to the original external ids.
    """
    keep = sorted(set(vertices))
    remap = {v: i for i, v in enumerate(keep)}
    adjacency = [[remap[u] for u in g.adjacency[v] if u in remap] for v in keep]
    id_map = [g.id_map[v] for v in keep]
    return Graph(n=len(keep), adjacency=adjacency, id_map=id_map)


def k_core_subgraph(g: Graph, info: CoreInfo, c: int) -> Graph:
    """Induced subgraph on vertices with core number >= c (possibly empty)."""
    if c < 0:
        raise ValueError("core level must be >= 0")
    return induced_subgraph(g, [v for v in range(g.n) if info.core[v] >= c])
