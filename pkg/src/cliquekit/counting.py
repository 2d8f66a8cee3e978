"""Exact k-clique counting.

Per-path counts come from binomial arithmetic over the hold/pivot split of
each root-to-leaf path of a clique tree; a brute-force enumerator serves as an
independent oracle at desk scale. All counts are exact integers checked
against the unsigned 128-bit range — overflow raises, never wraps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .clique_tree import CliqueTree, build_clique_tree, iter_paths
from .graph import Graph, core_decomposition, k_core_subgraph

__all__ = [
    "U128_MAX",
    "CountOverflowError",
    "CliqueCounts",
    "PathContribution",
    "binomial",
    "path_contribution",
    "local_counts",
    "brute_force_counts",
    "enumerate_cliques",
    "exact_counts",
    "max_local",
]

U128_MAX = 2**128 - 1


class CountOverflowError(OverflowError):
    """A count left the unsigned 128-bit range."""


def binomial(n: int, r: int) -> int:
    """C(n, r) as an exact integer; 0 when r < 0 or r > n.

    Raises CountOverflowError when the value exceeds the unsigned 128-bit
    range, naming the offending coefficient.
    """
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if r < 0 or r > n:
        return 0
    value = math.comb(n, r)
    if value > U128_MAX:
        raise CountOverflowError(f"binomial({n}, {r}) exceeds the unsigned 128-bit range")
    return value


@dataclass
class PathContribution:
    """k-clique counts carried by one root-to-leaf path with h holds, p pivots."""

    per_pivot: int
    per_hold: int
    path_total: int


def path_contribution(h: int, p: int, k: int) -> PathContribution:
    """Counts contributed by a path: every clique keeps all holds and picks
    k-h of the p pivots. Zero when h > k or k-h > p."""
    if h < 0 or p < 0:
        raise ValueError("h and p must be >= 0")
    if k < 2:
        raise ValueError("k must be >= 2")
    if h > k or k - h > p:
        return PathContribution(0, 0, 0)
    per_hold = binomial(p, k - h)
    per_pivot = binomial(p - 1, k - h - 1) if p > 0 else 0
    return PathContribution(per_pivot=per_pivot, per_hold=per_hold, path_total=per_hold)


@dataclass
class CliqueCounts:
    """Exact per-vertex and total k-clique counts for one graph."""

    per_vertex: list[int]
    total: int
    k: int

    @property
    def n(self) -> int:
        return len(self.per_vertex)


def _check_u128(value: int, what: str) -> int:
    if value > U128_MAX:
        raise CountOverflowError(f"{what} exceeds the unsigned 128-bit range")
    return value


def local_counts(tree: CliqueTree) -> CliqueCounts:
    """Exact per-vertex and total counts from all paths of the tree.

    Every k-clique lives on exactly one root-to-leaf path, so summing the
    per-path contributions counts each clique once.
    """
    k = tree.k
    per_vertex = [0] * tree.n
    total = 0
    for path in iter_paths(tree):
        h = len(path.holds)
        p = len(path.pivots)
        if h > k or k - h > p:
            continue
        contrib = path_contribution(h, p, k)
        for v in path.holds:
            per_vertex[v] += contrib.per_hold
        if contrib.per_pivot:
            for v in path.pivots:
                per_vertex[v] += contrib.per_pivot
        total += contrib.path_total
    _check_u128(total, "total clique count")
    for v, c in enumerate(per_vertex):
        _check_u128(c, f"clique count of vertex {v}")
    return CliqueCounts(per_vertex=per_vertex, total=total, k=k)


def enumerate_cliques(g: Graph, k: int) -> Iterator[tuple[int, ...]]:
    """Yield every k-clique of g as a sorted dense-id tuple.

    Ordered DFS: a partial clique is only extended with common neighbors of
    higher id than its last vertex. Intended for small graphs (n up to ~30).
    """
    if k < 1:
        return
    nbrs = g.neighbor_sets()

    def extend(clique: list[int], cands: list[int]) -> Iterator[tuple[int, ...]]:
        if len(clique) == k:
            yield tuple(clique)
            return
        for i, v in enumerate(cands):
            nv = nbrs[v]
            yield from extend(clique + [v], [u for u in cands[i + 1 :] if u in nv])

    yield from extend([], list(range(g.n)))


def brute_force_counts(g: Graph, k: int) -> CliqueCounts:
    """Independent oracle: count k-cliques by explicit ordered enumeration."""
    per_vertex = [0] * g.n
    total = 0
    for clique in enumerate_cliques(g, k):
        total += 1
        for v in clique:
            per_vertex[v] += 1
    return CliqueCounts(per_vertex=per_vertex, total=total, k=k)


def exact_counts(g: Graph, k: int) -> CliqueCounts:
    """Full pipeline on one graph: restrict to the (k-1)-core, build the
    clique tree there, and scatter the counts back to g's vertex ids.

    Vertices peeled away by the core restriction have count 0.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    info = core_decomposition(g)
    sub = k_core_subgraph(g, info, k - 1)
    tree = build_clique_tree(sub, k)
    sub_counts = local_counts(tree)
    per_vertex = [0] * g.n
    for i, count in enumerate(sub_counts.per_vertex):
        per_vertex[g.index_of[sub.id_map[i]]] = count
    return CliqueCounts(per_vertex=per_vertex, total=sub_counts.total, k=k)


def max_local(counts: CliqueCounts) -> int:
    """Largest per-vertex count: the most k-cliques any single vertex is in."""
    return max(counts.per_vertex, default=0)
