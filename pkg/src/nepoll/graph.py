"""Immutable undirected simple graphs with binary node labels.

Graphs are stored in compressed sparse adjacency form (one sorted neighbor
array plus per-node offsets).  That makes uniform neighbor sampling an O(1)
index lookup and keeps the representation canonical: any edge list describing
the same graph produces bit-identical arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DuplicateEdgeError, IsolatedNodeError, SelfLoopError

EdgePair = tuple[int, int]


@dataclass(frozen=True)
class GraphFlags:
    """Connectivity and bipartiteness, each decided by a full traversal."""

    connected: bool
    bipartite: bool


class Graph:
    """Undirected simple graph over compact node ids 0..n-1.

    Instances are created through :func:`build_graph` and never mutated
    afterwards, so they are safe to share across threads and worker
    processes.  ``edge_end_count`` is the number of edge endpoints
    (twice the edge count), the normalizer of all degree-weighted laws.
    """

    __slots__ = ("node_count", "edges", "indptr", "neighbors", "degrees",
                 "edge_end_count", "min_degree", "original_ids", "_flags")

    def __init__(self, node_count: int, edges: np.ndarray, indptr: np.ndarray,
                 neighbors: np.ndarray, degrees: np.ndarray,
                 original_ids: np.ndarray):
        self.node_count = int(node_count)
        self.edges = edges
        self.indptr = indptr
        self.neighbors = neighbors
        self.degrees = degrees
        self.edge_end_count = int(degrees.sum())
        self.min_degree = int(degrees.min())
        self.original_ids = original_ids
        self._flags: GraphFlags | None = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def neighbors_of(self, v: int) -> np.ndarray:
        return self.neighbors[self.indptr[v]:self.indptr[v + 1]]

    def adjacency_matvec(self, x: np.ndarray) -> np.ndarray:
        """Return A @ x using the adjacency lists (no dense matrix)."""
        return np.add.reduceat(np.asarray(x, dtype=float)[self.neighbors],
                               self.indptr[:-1])

    def edge_pairs(self) -> list[EdgePair]:
        """Edges as (u, v) tuples of compact ids, u < v, sorted."""
        return [(int(u), int(v)) for u, v in self.edges]

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, edges={self.edge_count})"


def build_graph(edge_pairs: Iterable[Sequence[int]],
                node_count: int | None = None) -> Graph:
    """Validate and canonicalize an edge list into a :class:`Graph`.

    Node ids may be arbitrary non-negative integers; they are compacted to
    0..n-1 in ascending id order and the original ids retained for output.
    Passing ``node_count`` pins the id space to 0..node_count-1 instead
    (generators use this); an id in that range that touches no edge is
    rejected as isolated, because the neighborhood poll response is
    undefined for degree-0 nodes.
    """
    seen: set[EdgePair] = set()
    cleaned: list[EdgePair] = []
    for pair in edge_pairs:
        u, v = int(pair[0]), int(pair[1])
        if u < 0 or v < 0:
            raise ValueError(f"negative node id in edge ({u}, {v})")
        if u == v:
            raise SelfLoopError(u)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdgeError(*key)
        seen.add(key)
        cleaned.append(key)
    if not cleaned:
        raise ValueError("a graph needs at least one edge")

    raw = np.asarray(cleaned, dtype=np.int64)
    if node_count is None:
        original_ids = np.unique(raw)
        compact = np.searchsorted(original_ids, raw)
        n = len(original_ids)
    else:
        n = int(node_count)
        if raw.max() >= n:
            raise ValueError(
                f"edge references node {int(raw.max())} outside 0..{n - 1}")
        present = np.bincount(raw.ravel(), minlength=n)
        if (present == 0).any():
            raise IsolatedNodeError(int(np.flatnonzero(present == 0)[0]))
        original_ids = np.arange(n, dtype=np.int64)
        compact = raw

    edges = np.sort(compact, axis=1)
    edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]

    ends = np.concatenate([edges[:, 0], edges[:, 1]])
    other = np.concatenate([edges[:, 1], edges[:, 0]])
    order = np.lexsort((other, ends))
    neighbors = other[order]
    degrees = np.bincount(ends, minlength=n)
    indptr = np.concatenate([[0], np.cumsum(degrees)])
    return Graph(n, edges, indptr.astype(np.int64), neighbors,
                 degrees.astype(np.int64), original_ids)


def graph_flags(g: Graph) -> GraphFlags:
    """Compute (and cache on the graph) connectivity and bipartiteness.

    Connectivity is reachability of every node from node 0; bipartiteness
    is an exact BFS 2-coloring over every component.
    """
    if g._flags is not None:
        return g._flags
    color = np.full(g.node_count, -1, dtype=np.int8)
    bipartite = True
    components = 0
    for root in range(g.node_count):
        if color[root] >= 0:
            continue
        components += 1
        color[root] = 0
        queue = [root]
        while queue:
            v = queue.pop()
            nbrs = g.neighbors_of(v)
            cv = color[v]
            for u in nbrs:
                if color[u] < 0:
                    color[u] = 1 - cv
                    queue.append(int(u))
                elif color[u] == cv:
                    bipartite = False
    flags = GraphFlags(connected=components == 1, bipartite=bipartite)
    g._flags = flags
    return flags


class LabeledGraph:
    """A graph plus one binary label per node, with cached poll responses.

    ``responses[v]`` is the fraction of v's neighbors carrying label 1 --
    the answer node v gives to the neighborhood-expectation poll.
    """

    __slots__ = ("graph", "labels", "responses")

    def __init__(self, graph: Graph, labels):
        labels = np.asarray(labels, dtype=np.int64)
        if labels.shape != (graph.node_count,):
            raise ValueError(
                f"label vector length {labels.shape} != node count "
                f"{graph.node_count}")
        if not np.isin(labels, (0, 1)).all():
            raise ValueError("labels must be 0 or 1")
        self.graph = graph
        self.labels = labels
        self.responses = graph.adjacency_matvec(labels) / graph.degrees

    @property
    def true_fraction(self) -> float:
        """Fraction of nodes labeled 1 (the quantity every poll estimates)."""
        return float(self.labels.mean())

    def nep_response(self, v: int) -> float:
        """Fraction of v's neighbors labeled 1."""
        return float(self.responses[v])

    def __repr__(self) -> str:
        return (f"LabeledGraph(n={self.graph.node_count}, "
                f"true_fraction={self.true_fraction:.4f})")
