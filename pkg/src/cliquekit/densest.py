"""Extracting a concrete densest-subgraph candidate from converged weights,
plus density evaluation and an exhaustive oracle for tiny graphs.

k-clique density of a vertex set S is (number of k-cliques of the induced
subgraph) / |S|. The extractor sweeps level sets of the weight vector: it
sorts vertices by weight, cuts where the weight strictly decreases, and keeps
the densest prefix.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .clique_tree import build_clique_tree
from .counting import brute_force_counts, enumerate_cliques, local_counts
from .frank_wolfe import WeightVector
from .graph import Graph, core_decomposition, induced_subgraph, k_core_subgraph

__all__ = [
    "ORACLE_MAX_VERTICES",
    "BRUTE_FORCE_DENSITY_LIMIT",
    "OracleSizeError",
    "CdsResult",
    "density",
    "extract_cds",
    "exact_cds_bruteforce",
]

ORACLE_MAX_VERTICES = 16
BRUTE_FORCE_DENSITY_LIMIT = 30


class OracleSizeError(ValueError):
    """Graph too large for the exhaustive densest-subgraph oracle."""


@dataclass
class CdsResult:
    """A vertex set with its exact k-clique count and density.

    vertices holds original (external) ids; density = clique_count / |vertices|.
    """

    vertices: frozenset[int]
    k: int
    clique_count: int
    density: float
    source: str


def _count_in_subset(g: Graph, s: list[int], k: int) -> int:
    sub = induced_subgraph(g, s)
    if sub.n <= BRUTE_FORCE_DENSITY_LIMIT:
        return brute_force_counts(sub, k).total
    info = core_decomposition(sub)
    core = k_core_subgraph(sub, info, k - 1)
    return local_counts(build_clique_tree(core, k)).total


def density(g: Graph, s: Iterable[int], k: int, source: str = "fw-extraction") -> CdsResult:
    """Exact k-clique density of the induced subgraph on dense ids s.

    Counts by brute force up to 30 vertices, otherwise through a fresh clique
    tree on the induced subgraph. The result reports original ids.
    """
    s = sorted(set(s))
    if not s:
        raise ValueError("vertex set must be nonempty")
    if s[0] < 0 or s[-1] >= g.n:
        raise ValueError("vertex set contains ids outside the graph")
    count = _count_in_subset(g, s, k)
    return CdsResult(
        vertices=frozenset(g.id_map[v] for v in s),
        k=k,
        clique_count=count,
        density=count / len(s),
        source=source,
    )


def extract_cds(g: Graph, w: WeightVector, k: int) -> CdsResult:
    """Level-set sweep over the weight vector.

    Vertices are sorted by weight descending (ties by smaller id); every
    prefix ending where the weight strictly decreases is a candidate, and the
    densest candidate wins (ties go to the smaller prefix). Density ties are
    compared exactly on integers. Falls back to the top vertex with density 0
    when the graph has no k-clique.
    """
    if g.n == 0:
        return CdsResult(vertices=frozenset(), k=k, clique_count=0, density=0.0, source="fw-extraction")
    r = w.r
    order = sorted(range(g.n), key=lambda v: (-r[v], v))
    best_set: list[int] | None = None
    best_count = 0
    best_size = 1
    for end in range(1, g.n + 1):
        if end < g.n and r[order[end]] == r[order[end - 1]]:
            continue
        prefix = order[:end]
        count = _count_in_subset(g, prefix, k)
        # exact fraction comparison: count/end > best_count/best_size
        if count * best_size > best_count * end:
            best_set, best_count, best_size = prefix, count, end
    if best_set is None or best_count == 0:
        top = order[0]
        return CdsResult(
            vertices=frozenset({g.id_map[top]}), k=k, clique_count=0, density=0.0, source="fw-extraction"
        )
    return CdsResult(
        vertices=frozenset(g.id_map[v] for v in best_set),
        k=k,
        clique_count=best_count,
        density=best_count / best_size,
        source="fw-extraction",
    )


def exact_cds_bruteforce(g: Graph, k: int) -> CdsResult:
    """Exact densest subgraph by exhausting all nonempty vertex subsets.

    Refuses graphs with more than 16 vertices. Density ties resolve to the
    lexicographically smallest sorted vertex set.
    """
    if g.n > ORACLE_MAX_VERTICES:
        raise OracleSizeError(f"oracle limited to {ORACLE_MAX_VERTICES} vertices, got {g.n}")
    if g.n == 0:
        return CdsResult(vertices=frozenset(), k=k, clique_count=0, density=0.0, source="oracle")

    n = g.n
    size = 1 << n
    cliques_in = np.zeros(size, dtype=np.int64)
    for clique in enumerate_cliques(g, k):
        mask = 0
        for v in clique:
            mask |= 1 << v
        cliques_in[mask] += 1
    # zeta transform: cliques_in[S] = number of k-cliques fully inside S
    for b in range(n):
        shaped = cliques_in.reshape(-1, 2, 1 << b)
        shaped[:, 1, :] += shaped[:, 0, :]

    if cliques_in[size - 1] == 0:
        return CdsResult(
            vertices=frozenset({g.id_map[0]}), k=k, clique_count=0, density=0.0, source="oracle"
        )

    popcount = np.zeros(size, dtype=np.int64)
    for b in range(n):
        popcount += (np.arange(size) >> b) & 1
    popcount[0] = 1  # avoid division by zero; mask 0 scores 0 anyway
    dens = cliques_in / popcount
    top = dens.max()
    candidates = np.flatnonzero(dens >= top * (1.0 - 1e-12))

    def verts_of(mask: int) -> tuple[int, ...]:
        return tuple(v for v in range(n) if mask >> v & 1)

    best_count = -1
    best_size = 1
    best_verts: tuple[int, ...] = ()
    for mask in candidates:
        mask = int(mask)
        count = int(cliques_in[mask])
        sz = int(popcount[mask])
        better = count * best_size > best_count * sz
        if not better and count * best_size == best_count * sz:
            better = verts_of(mask) < best_verts
        if better:
            best_count, best_size = count, sz
            best_verts = verts_of(mask)
    return CdsResult(
        vertices=frozenset(g.id_map[v] for v in best_verts),
        k=k,
        clique_count=best_count,
        density=best_count / best_size,
        source="oracle",
    )
