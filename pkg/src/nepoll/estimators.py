"""The four polling estimators.

Every estimator queries ``budget`` individuals with replacement and returns
the mean of their responses, so each estimate is an average of values in
[0, 1]:

* ``IP`` intent polling -- uniform nodes report their own label,
* ``UN`` naive neighborhood polling -- uniform nodes report the labeled
  fraction of their neighborhood,
* ``RW`` random-walk polling -- each respondent is the endpoint of an
  independent random walk, so for long walks respondents are distributed
  like random friends (degree-proportionally),
* ``FN`` friend polling -- uniform nodes forward the question to one
  uniform neighbor.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import BipartiteWalkWarning, DisconnectedGraphError
from .graph import LabeledGraph, graph_flags
from .sampling import RandomStream, default_walk_length, random_walk_endpoints

ESTIMATOR_KINDS = ("IP", "UN", "RW", "FN")

# Stable codes used to derive per-estimator substreams.
ESTIMATOR_CODES = {kind: i for i, kind in enumerate(ESTIMATOR_KINDS)}


@dataclass(frozen=True, eq=False)
class PollConfig:
    """One estimator run: how many respondents, how long to walk, which seed.

    ``seed`` may be an integer or a ``numpy.random.SeedSequence`` (the sweep
    harness passes derived substreams).
    """

    budget: int
    walk_length: int | None = None
    seed: object = 0

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be >= 1")


@dataclass(frozen=True, eq=False)
class PollEstimate:
    value: float
    estimator_kind: str
    config: PollConfig


def intent_poll(lg: LabeledGraph, cfg: PollConfig) -> PollEstimate:
    """Average label of ``budget`` uniform nodes."""
    gen = RandomStream(cfg.seed).generator
    picks = gen.integers(0, lg.graph.node_count, size=cfg.budget)
    return PollEstimate(float(lg.labels[picks].mean()), "IP", cfg)


def naive_nep(lg: LabeledGraph, cfg: PollConfig) -> PollEstimate:
    """Average neighborhood response of ``budget`` uniform nodes."""
    gen = RandomStream(cfg.seed).generator
    picks = gen.integers(0, lg.graph.node_count, size=cfg.budget)
    return PollEstimate(float(lg.responses[picks].mean()), "UN", cfg)


def fn_nep(lg: LabeledGraph, cfg: PollConfig) -> PollEstimate:
    """Average response of one uniform neighbor of each uniform node."""
    g = lg.graph
    gen = RandomStream(cfg.seed).generator
    v = gen.integers(0, g.node_count, size=cfg.budget)
    j = gen.integers(0, g.degrees[v])
    friends = g.neighbors[g.indptr[v] + j]
    return PollEstimate(float(lg.responses[friends].mean()), "FN", cfg)


def rw_nep(lg: LabeledGraph, cfg: PollConfig, *,
           exact_friend_mode: bool = False,
           lazy_walk: bool = False) -> PollEstimate:
    """Average response of ``budget`` independent random-walk endpoints.

    Walks start from uniform nodes and run ``cfg.walk_length`` steps
    (default: ten sweeps of log2 n).  ``exact_friend_mode`` is a test hook
    that samples respondents directly from the uniform-edge law instead of
    walking, decoupling estimator logic from walk mixing error; it also
    lifts the connectivity requirement since no walk takes place.
    """
    g = lg.graph
    rs = RandomStream(cfg.seed)
    gen = rs.generator
    if exact_friend_mode:
        e = gen.integers(0, g.edge_count, size=cfg.budget)
        side = gen.integers(0, 2, size=cfg.budget)
        sample = g.edges[e, side]
    else:
        flags = graph_flags(g)
        if not flags.connected:
            raise DisconnectedGraphError(
                "random-walk polling requires a connected graph")
        if flags.bipartite and not lazy_walk:
            warnings.warn("graph is bipartite: plain random walks have no "
                          "stationary law", BipartiteWalkWarning,
                          stacklevel=2)
        length = cfg.walk_length
        if length is None:
            length = default_walk_length(g.node_count)
        starts = gen.integers(0, g.node_count, size=cfg.budget)
        sample = random_walk_endpoints(g, starts, length, rs, lazy=lazy_walk)
    return PollEstimate(float(lg.responses[sample].mean()), "RW", cfg)


def run_estimator(kind: str, lg: LabeledGraph, cfg: PollConfig, *,
                  exact_friend_mode: bool = False) -> PollEstimate:
    """Dispatch by estimator kind (harness convenience)."""
    if kind == "IP":
        return intent_poll(lg, cfg)
    if kind == "UN":
        return naive_nep(lg, cfg)
    if kind == "FN":
        return fn_nep(lg, cfg)
    if kind == "RW":
        return rw_nep(lg, cfg, exact_friend_mode=exact_friend_mode)
    raise ValueError(f"unknown estimator kind {kind!r}")
