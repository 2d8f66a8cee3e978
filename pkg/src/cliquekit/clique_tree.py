"""Succinct clique tree: a compressed pivot/hold recursion tree in which every
k-clique of the graph corresponds to exactly one root-to-leaf path.

Each path splits its vertices into hold vertices (present in every clique
counted from the path) and pivot vertices (any subset may join). Construction
prunes branches that cannot reach a k-clique: candidate pools too small for
the remaining depth, and paths that already carry more than k holds.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .graph import CoreInfo, Graph

__all__ = [
    "PIVOT",
    "HOLD",
    "TreeNode",
    "TreeStats",
    "CliqueTree",
    "PathView",
    "build_clique_tree",
    "iter_paths",
    "reorder_paths",
    "dump_tree",
]

PIVOT = "pivot"
HOLD = "hold"

DUMP_HEADER = "sct-dump 1"


@dataclass
class TreeNode:
    """One tree node: a graph vertex with its label and ordered children.

    The root carries vertex=None and label=None.
    """

    vertex: int | None
    label: str | None
    depth: int
    children: list[int] = field(default_factory=list)


@dataclass
class TreeStats:
    node_count: int = 1
    max_depth: int = 0
    pruned_size: int = 0
    pruned_holds: int = 0

    @property
    def pruned_branches(self) -> int:
        return self.pruned_size + self.pruned_holds


@dataclass
class CliqueTree:
    """Arena-backed clique tree built for one fixed clique size k."""

    nodes: list[TreeNode]
    k: int
    n: int
    stats: TreeStats

    @property
    def root(self) -> TreeNode:
        return self.nodes[0]


@dataclass(frozen=True)
class PathView:
    """One root-to-leaf path: its hold set, pivot list, and depth.

    head is the path's first vertex (the child of the virtual root), used by
    the degeneracy ordering.
    """

    holds: frozenset[int]
    pivots: tuple[int, ...]
    depth: int
    head: int

    def vertices(self) -> frozenset[int]:
        return self.holds | frozenset(self.pivots)


def build_clique_tree(
    g: Graph,
    k: int,
    *,
    prune_small_branches: bool = True,
    prune_excess_holds: bool = True,
) -> CliqueTree:
    """Build the clique tree of g for clique size k.

    At every expansion the pivot is the candidate with the most candidate
    neighbors (ties to the smaller id); the pivot child keeps the pivot's
    candidate neighbors, and each non-neighbor becomes a hold child whose
    candidates exclude the holds already branched on. Callers normally pass
    the (k-1)-core of their graph; the build is correct either way.

    The pruning toggles exist for equivalence testing and leave the counted
    cliques unchanged.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    nbrs = g.neighbor_sets()
    nodes = [TreeNode(vertex=None, label=None, depth=0)]
    stats = TreeStats()

    def expand(node_idx: int, cands: set[int], depth: int, holds_on_path: int) -> None:
        if not cands:
            return
        best, best_score = -1, -1
        for v in sorted(cands):
            score = len(nbrs[v] & cands)
            if score > best_score:
                best, best_score = v, score
        pivot = best

        child_cands = nbrs[pivot] & cands
        if prune_small_branches and len(child_cands) + depth + 1 < k:
            stats.pruned_size += 1
        else:
            idx = _add_node(nodes, stats, pivot, PIVOT, depth + 1, node_idx)
            expand(idx, child_cands, depth + 1, holds_on_path)

        holds = sorted(cands - nbrs[pivot] - {pivot})
        for i, h in enumerate(holds):
            if prune_excess_holds and holds_on_path + 1 > k:
                stats.pruned_holds += 1
                continue
            hold_cands = (cands & nbrs[h]).difference(holds[:i])
            if prune_small_branches and len(hold_cands) + depth + 1 < k:
                stats.pruned_size += 1
                continue
            idx = _add_node(nodes, stats, h, HOLD, depth + 1, node_idx)
            expand(idx, hold_cands, depth + 1, holds_on_path + 1)

    expand(0, set(range(g.n)), 0, 0)
    stats.node_count = len(nodes)
    return CliqueTree(nodes=nodes, k=k, n=g.n, stats=stats)


def _add_node(nodes: list[TreeNode], stats: TreeStats, vertex: int, label: str, depth: int, parent: int) -> int:
    idx = len(nodes)
    nodes.append(TreeNode(vertex=vertex, label=label, depth=depth))
    nodes[parent].children.append(idx)
    stats.max_depth = max(stats.max_depth, depth)
    return idx


def iter_paths(tree: CliqueTree) -> Iterator[PathView]:
    """Yield every root-to-leaf path once, in depth-first build order."""
    nodes = tree.nodes
    holds: list[int] = []
    pivots: list[int] = []

    def walk(idx: int, head: int) -> Iterator[PathView]:
        node = nodes[idx]
        stack = holds if node.label == HOLD else pivots
        stack.append(node.vertex)
        if not node.children:
            yield PathView(
                holds=frozenset(holds),
                pivots=tuple(pivots),
                depth=len(holds) + len(pivots),
                head=head,
            )
        else:
            for child in node.children:
                yield from walk(child, head)
        stack.pop()

    for child in nodes[0].children:
        yield from walk(child, nodes[child].vertex)


def reorder_paths(
    tree: CliqueTree,
    ordering: str,
    info: CoreInfo | None = None,
    seed: int = 0,
) -> list[PathView]:
    """Paths of the tree in the requested processing order.

    build: native depth-first order. random: uniform shuffle, deterministic
    per seed. depth: deeper paths first. degeneracy: paths whose head vertex
    has a higher core number first. Sorts are stable, so ties keep build
    order. The degeneracy ordering needs the CoreInfo of the graph the tree
    was built from.
    """
    paths = list(iter_paths(tree))
    if ordering == "build":
        return paths
    if ordering == "random":
        rng = np.random.default_rng(seed)
        return [paths[i] for i in rng.permutation(len(paths))]
    if ordering == "depth":
        return sorted(paths, key=lambda p: -p.depth)
    if ordering == "degeneracy":
        if info is None:
            raise ValueError("degeneracy ordering requires CoreInfo")
        return sorted(paths, key=lambda p: -info.core[p.head])
    raise ValueError(f"unknown ordering {ordering!r}")


def dump_tree(tree: CliqueTree, g: Graph) -> str:
    """Stable text serialization for golden-file tests.

    One node per line in depth-first order: depth, original vertex id, label.
    The first line is a format version header.
    """
    lines = [DUMP_HEADER, "0,-,-"]

    def walk(idx: int) -> None:
        node = tree.nodes[idx]
        lines.append(f"{node.depth},{g.id_map[node.vertex]},{node.label}")
        for child in node.children:
            walk(child)

    for child in tree.nodes[0].children:
        walk(child)
    return "\n".join(lines) + "\n"
