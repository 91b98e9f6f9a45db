"""Edge-list and label file readers/writers.

Edge lists use the common SNAP text layout: one edge per line as two
whitespace-separated integers, '#' lines ignored.  Duplicate lines are
tolerated and deduplicated before validation.  Label files carry one
``<node_id> <0|1>`` line per node; nodes absent from the file default to
label 0 and the count of such defaults is returned to the caller.
"""

from __future__ import annotations

import os
from typing import Union

import numpy as np

from .graph import Graph, LabeledGraph, build_graph

PathLike = Union[str, os.PathLike]


def read_edge_list(path: PathLike) -> Graph:
    seen: set[tuple[int, int]] = set()
    pairs: list[tuple[int, int]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected two node ids, "
                                 f"got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: non-integer node id "
                                 f"in {line!r}") from exc
            key = (u, v) if u <= v else (v, u)
            if key in seen:
                continue
            seen.add(key)
            pairs.append((u, v))
    return build_graph(pairs)


def write_edge_list(g: Graph, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# undirected edge list: {g.node_count} nodes, "
                 f"{g.edge_count} edges\n")
        ids = g.original_ids
        for u, v in g.edges:
            fh.write(f"{ids[u]} {ids[v]}\n")


def read_labels(path: PathLike, g: Graph) -> tuple[np.ndarray, int]:
    """Read a label file for ``g``.

    Returns ``(labels, defaulted)`` where ``defaulted`` counts the nodes
    missing from the file that were assigned label 0.
    """
    index = {int(orig): i for i, orig in enumerate(g.original_ids)}
    labels = np.zeros(g.node_count, dtype=np.int64)
    assigned: set[int] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected "
                                 f"'<node_id> <0|1>', got {line!r}")
            node, value = int(parts[0]), int(parts[1])
            if node not in index:
                raise ValueError(f"{path}:{lineno}: node {node} is not in "
                                 f"the graph")
            if value not in (0, 1):
                raise ValueError(f"{path}:{lineno}: label must be 0 or 1, "
                                 f"got {value}")
            compact = index[node]
            if compact in assigned:
                raise ValueError(f"{path}:{lineno}: node {node} labeled "
                                 f"twice")
            assigned.add(compact)
            labels[compact] = value
    return labels, g.node_count - len(assigned)


def read_labeled_graph(edge_path: PathLike,
                       label_path: PathLike) -> tuple[LabeledGraph, int]:
    g = read_edge_list(edge_path)
    labels, defaulted = read_labels(label_path, g)
    return LabeledGraph(g, labels), defaulted


def write_labels(lg: LabeledGraph, path: PathLike) -> None:
    ids = lg.graph.original_ids
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# node labels: {lg.graph.node_count} nodes, "
                 f"true fraction {lg.true_fraction!r}\n")
        for i, label in enumerate(lg.labels):
            fh.write(f"{ids[i]} {label}\n")
