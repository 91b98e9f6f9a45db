"""Seeded sampling primitives: uniform nodes, random friends, random walks.

Three node laws drive everything downstream:

* a uniform node (probability 1/n each),
* a random friend: a uniform end of a uniform edge, so node v is drawn
  with probability d(v)/M where M is the number of edge endpoints,
* a random friend of a random node: a uniform neighbor of a uniform node.

All randomness flows through :class:`RandomStream`, whose substreams are
derived deterministically from (seed, key) so that replications are
reproducible regardless of host or execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph


class RandomStream:
    """A PCG64 stream with deterministic substream derivation.

    ``substream(*key)`` yields an independent stream identified by the
    integer tuple ``key``; the same (seed, key) pair always reproduces the
    same sample sequence.
    """

    __slots__ = ("sequence", "generator")

    def __init__(self, seed):
        if isinstance(seed, np.random.SeedSequence):
            self.sequence = seed
        else:
            self.sequence = np.random.SeedSequence(int(seed))
        self.generator = np.random.Generator(np.random.PCG64(self.sequence))

    def substream(self, *key: int) -> "RandomStream":
        child = np.random.SeedSequence(
            entropy=self.sequence.entropy,
            spawn_key=self.sequence.spawn_key + tuple(int(k) for k in key))
        return RandomStream(child)


@dataclass(frozen=True)
class WalkConfig:
    """Length and walker count for random-walk sampling."""

    length: int
    walker_count: int = 1
    lazy: bool = False

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("walk length must be >= 0")
        if self.walker_count < 1:
            raise ValueError("walker count must be >= 1")


def default_walk_length(node_count: int) -> int:
    """Mixing-time heuristic: ten sweeps of log2(n) steps."""
    return 10 * math.ceil(math.log2(max(node_count, 2)))


def sample_random_node(g: Graph, rs: RandomStream) -> int:
    return int(rs.generator.integers(g.node_count))


def sample_random_friend(g: Graph, rs: RandomStream) -> int:
    """Uniform edge, then a fair coin over its two ends.

    Implements the definition directly so the marginal is exactly
    d(v) / edge_end_count.
    """
    e = int(rs.generator.integers(g.edge_count))
    side = int(rs.generator.integers(2))
    return int(g.edges[e, side])


def sample_friend_of_random_node(g: Graph, rs: RandomStream) -> int:
    """Uniform node, then a uniform neighbor of it."""
    v = int(rs.generator.integers(g.node_count))
    j = int(rs.generator.integers(g.degrees[v]))
    return int(g.neighbors[g.indptr[v] + j])


def random_walk_endpoint(g: Graph, start: int, cfg: WalkConfig,
                         rs: RandomStream) -> int:
    """Run one walk of ``cfg.length`` uniform-neighbor steps from ``start``.

    On a connected non-bipartite graph the endpoint law converges to
    d(v)/M as the length grows.  With ``cfg.lazy`` the walker stays put
    with probability 1/2 each step (useful on bipartite graphs, where the
    plain walk has no stationary law).
    """
    gen = rs.generator
    v = int(start)
    for _ in range(cfg.length):
        if cfg.lazy and gen.random() < 0.5:
            continue
        j = int(gen.integers(g.degrees[v]))
        v = int(g.neighbors[g.indptr[v] + j])
    return v


def random_walk_endpoints(g: Graph, starts: np.ndarray, length: int,
                          rs: RandomStream, lazy: bool = False) -> np.ndarray:
    """Vectorized endpoints of independent walks from ``starts``."""
    gen = rs.generator
    cur = np.array(starts, dtype=np.int64)
    for _ in range(length):
        j = gen.integers(0, g.degrees[cur])
        nxt = g.neighbors[g.indptr[cur] + j]
        if lazy:
            stay = gen.random(len(cur)) < 0.5
            nxt = np.where(stay, cur, nxt)
        cur = nxt
    return cur
