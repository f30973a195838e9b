"""Hypergraph data model and dataset I/O.

A hypergraph is stored as a fixed vertex universe 0..n-1 (with a map back to
the original labels) plus a list of hyperedges, each a sorted tuple of
distinct vertex ids.  Instances are immutable after construction and safe to
share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from .errors import EmptyHypergraphError, ParseError

Edge = tuple[int, ...]


class Hypergraph:
    """Vertex universe plus deduplicated hyperedges over dense 0-based ids.

    ``labels[v]`` is the original label of vertex ``v``.  Edges are sorted
    vertex tuples, stored in lexicographic order, so iteration order is
    deterministic.  Construction does not forbid isolated vertices: split
    hypergraphs used during evaluation keep the full vertex universe.
    """

    def __init__(self, n: int, edges: Sequence[Edge], labels: Sequence | None = None):
        if labels is not None and len(labels) != n:
            raise ValueError(f"{len(labels)} labels for {n} vertices")
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(tuple(e) for e in edges)
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        for e in self.edges:
            if len(e) < 2:
                raise ValueError(f"hyperedge {e} has fewer than two vertices")
            if any(v < 0 or v >= n for v in e):
                raise ValueError(f"hyperedge {e} outside vertex range 0..{n - 1}")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> np.ndarray:
        """Number of incident hyperedges per vertex (hyperdegree)."""
        d = np.zeros(self.n, dtype=np.int64)
        for e in self.edges:
            d[list(e)] += 1
        return d

    @cached_property
    def cardinalities(self) -> np.ndarray:
        return np.array([len(e) for e in self.edges], dtype=np.int64)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def incidence(self) -> sparse.csr_matrix:
        """0/1 incidence matrix, one row per vertex, one column per edge."""
        rows = np.fromiter((v for e in self.edges for v in e), dtype=np.int64)
        cols = np.repeat(np.arange(self.m, dtype=np.int64), self.cardinalities)
        data = np.ones(len(rows))
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.m))

    def with_edges(self, edges: Iterable[Edge]) -> "Hypergraph":
        """Same vertex universe and labels, different edge list."""
        return Hypergraph(self.n, sorted(set(tuple(sorted(e)) for e in edges)), self.labels)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypergraph)
            and self.n == other.n
            and self.edges == other.edges
            and self.labels == other.labels
        )

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class HypergraphStats:
    n: int
    m: int
    mean_degree: float
    mean_cardinality: float


def _parse_line(raw: str, number: int, label_mode: bool) -> list:
    text = raw.strip()
    if not text or text.startswith("#"):
        return []
    tokens = [t.strip() for t in (text.split(",") if "," in text else text.split())]
    tokens = [t for t in tokens if t]
    if label_mode:
        return tokens
    out = []
    for t in tokens:
        try:
            out.append(int(t))
        except ValueError:
            raise ParseError(number, f"non-integer vertex token {t!r}") from None
    return out


def from_label_edges(
    label_edges: Iterable[Iterable], min_cardinality: int = 2
) -> Hypergraph:
    """Normalize raw labeled hyperedges into a :class:`Hypergraph`.

    Drops edges with fewer than ``min_cardinality`` distinct vertices,
    collapses duplicate vertex sets, and maps sorted unique labels to dense
    0-based ids.
    """
    if min_cardinality < 2:
        raise ValueError("min_cardinality must be at least 2")
    kept = []
    for e in label_edges:
        members = frozenset(e)
        if len(members) >= min_cardinality:
            kept.append(members)
    kept = set(kept)
    if not kept:
        raise EmptyHypergraphError("no hyperedges remain after filtering")
    labels = sorted({v for e in kept for v in e})
    index = {lab: i for i, lab in enumerate(labels)}
    edges = sorted(tuple(sorted(index[v] for v in e)) for e in kept)
    return Hypergraph(len(labels), edges, labels)


def loads(text: str, label_mode: bool = False, min_cardinality: int = 2) -> Hypergraph:
    """Parse hyperedge-list text (one edge per line, ',' or whitespace separated)."""
    raw_edges = []
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = _parse_line(line, number, label_mode)
        if tokens:
            raw_edges.append(tokens)
    return from_label_edges(raw_edges, min_cardinality)


def load(path, label_mode: bool = False, min_cardinality: int = 2) -> Hypergraph:
    """Load a hyperedge-list file (UTF-8, '#' comments, LF or CRLF)."""
    return loads(Path(path).read_text(encoding="utf-8"), label_mode, min_cardinality)


def save(g: Hypergraph, path) -> None:
    """Write the canonical form: comma-separated original labels, vertices
    ascending within an edge, edges in lexicographic order."""
    lines = [",".join(str(g.labels[v]) for v in e) for e in g.edges]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def largest_component(g: Hypergraph) -> Hypergraph:
    """Sub-hypergraph induced by the largest clique-expansion component.

    Every hyperedge lies entirely inside one component, so induced edges are
    exactly those whose vertices belong to the winning component.  Ties in
    component size are broken toward the smallest minimum original label.
    """
    if g.m == 0:
        raise EmptyHypergraphError("cannot take a component of an empty hypergraph")
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        r = find(e[0])
        for v in e[1:]:
            parent[find(v)] = r

    members: dict[int, list[int]] = {}
    for v in range(g.n):
        members.setdefault(find(v), []).append(v)
    # Min label works as tie-break because ids are assigned in label order.
    best = max(members.values(), key=lambda vs: (len(vs), -min(vs)))
    keep = set(best)
    vertices = sorted(keep)
    remap = {v: i for i, v in enumerate(vertices)}
    edges = sorted(
        tuple(remap[v] for v in e) for e in g.edges if keep.issuperset(e)
    )
    return Hypergraph(len(vertices), edges, [g.labels[v] for v in vertices])


def stats(g: Hypergraph) -> HypergraphStats:
    """Vertex/edge counts plus mean hyperdegree and mean edge cardinality."""
    if g.m == 0:
        raise EmptyHypergraphError("stats of an empty hypergraph")
    return HypergraphStats(
        n=g.n,
        m=g.m,
        mean_degree=float(g.degrees.sum()) / g.n,
        mean_cardinality=float(g.cardinalities.sum()) / g.m,
    )
