"""Graph values, deterministic generators, and adjacency-matrix conversion.

Nodes are 0-based everywhere. Undirected graphs store their edge set
symmetrically closed, so (u, v) in ``edges`` implies (v, u) as well;
self-loops are rejected outright rather than dropped.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from clusterkit.errors import (
    BadPartitionError,
    BadProbabilityError,
    EndpointOutOfRangeError,
    InvalidGraphError,
    SelfLoopError,
)

STRUCTURED_KINDS = ("path", "ring", "star", "cliques")


@dataclass(frozen=True)
class Graph:
    """A validated graph: node count, edge set of ordered pairs, direction flag."""

    node_count: int
    edges: frozenset[tuple[int, int]]
    directed: bool = False

    def __post_init__(self) -> None:
        if self.node_count < 1:
            raise InvalidGraphError(f"node_count must be >= 1, got {self.node_count}")
        for u, v in self.edges:
            if u == v:
                raise SelfLoopError(f"self-loop at node {u}")
            for e in (u, v):
                if not 0 <= e < self.node_count:
                    raise EndpointOutOfRangeError(
                        f"endpoint {e} outside [0, {self.node_count})"
                    )
            if not self.directed and (v, u) not in self.edges:
                raise InvalidGraphError(
                    f"undirected edge set is not symmetrically closed at ({u}, {v})"
                )

    @classmethod
    def from_edges(cls, node_count, edges, directed=False):
        """Build a Graph from raw (u, v) pairs: dedupe, symmetrize, validate."""
        pairs = set()
        for u, v in edges:
            u, v = int(u), int(v)
            pairs.add((u, v))
            if not directed:
                pairs.add((v, u))
        return cls(node_count=node_count, edges=frozenset(pairs), directed=directed)

    def undirected_pairs(self) -> list[tuple[int, int]]:
        """Canonical (u, v) pairs with u < v; one per undirected edge."""
        return sorted((u, v) for u, v in self.edges if u < v)


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Binary k-by-k link matrix with a zero diagonal.

    Rows are stored as integer bitmasks: bit j of ``rows[i]`` is entry (i, j).
    """

    k: int
    rows: tuple[int, ...] = field(repr=False)

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidGraphError(f"k must be >= 1, got {self.k}")
        if len(self.rows) != self.k:
            raise InvalidGraphError("row count differs from k")
        full = (1 << self.k) - 1
        for i, row in enumerate(self.rows):
            if row & (1 << i):
                raise InvalidGraphError(f"nonzero diagonal at row {i}")
            if row & ~full:
                raise InvalidGraphError(f"row {i} has bits outside [0, k)")

    @classmethod
    def from_dense(cls, entries) -> "AdjacencyMatrix":
        k = len(entries)
        rows = []
        for i, row in enumerate(entries):
            if len(row) != k:
                raise InvalidGraphError("matrix is not square")
            bits = 0
            for j, v in enumerate(row):
                if v not in (0, 1):
                    raise InvalidGraphError(f"entry ({i}, {j}) is not 0 or 1")
                if v:
                    bits |= 1 << j
            rows.append(bits)
        return cls(k=k, rows=tuple(rows))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_dense(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.k)] for row in self.rows]

    def to_numpy(self) -> np.ndarray:
        """Dense float64 copy; bulk path used at benchmark sizes."""
        nbytes = (self.k + 7) // 8
        packed = np.frombuffer(
            b"".join(row.to_bytes(nbytes, "little") for row in self.rows),
            dtype=np.uint8,
        ).reshape(self.k, nbytes)
        bits = np.unpackbits(packed, axis=1, bitorder="little")[:, : self.k]
        return bits.astype(np.float64)

    def is_symmetric(self) -> bool:
        return all(
            (self.rows[i] >> j) & 1 == (self.rows[j] >> i) & 1
            for i in range(self.k)
            for j in range(i + 1, self.k)
        )

    def edge_pairs(self) -> list[tuple[int, int]]:
        """All (i, j) with entry 1."""
        out = []
        for i, row in enumerate(self.rows):
            m = row
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                out.append((i, j))
        return out


def graph_to_adjacency(g: Graph) -> AdjacencyMatrix:
    """Transcribe a validated Graph into its binary adjacency matrix."""
    rows = [0] * g.node_count
    for u, v in g.edges:
        rows[u] |= 1 << v
    return AdjacencyMatrix(k=g.node_count, rows=tuple(rows))


def gen_random_graph(k: int, p: float, seed: int) -> Graph:
    """Undirected G(k, p) with a deterministic, seed-reproducible edge set.

    Each unordered pair is included independently with probability ``p``
    drawn from ``random.Random(seed)`` in row-major pair order, so equal
    (k, p, seed) always gives the identical graph.
    """
    if not 0.0 <= p <= 1.0:
        raise BadProbabilityError(f"p must be in [0, 1], got {p}")
    if k < 1:
        raise InvalidGraphError(f"k must be >= 1, got {k}")
    rng = random.Random(seed)
    edges = [
        (i, j) for i in range(k) for j in range(i + 1, k) if rng.random() < p
    ]
    return Graph.from_edges(k, edges, directed=False)


def gen_structured_graph(kind: str, k: int, parts: int = 1) -> Graph:
    """Known-answer fixture graphs: path, ring, star, or disjoint cliques."""
    if k < 1:
        raise InvalidGraphError(f"k must be >= 1, got {k}")
    if kind == "path":
        edges = [(i, i + 1) for i in range(k - 1)]
    elif kind == "ring":
        edges = [(i, i + 1) for i in range(k - 1)]
        if k > 2:
            edges.append((k - 1, 0))
    elif kind == "star":
        edges = [(0, i) for i in range(1, k)]
    elif kind == "cliques":
        if parts < 1 or k % parts != 0:
            raise BadPartitionError(f"parts={parts} does not divide k={k}")
        size = k // parts
        edges = [
            (base + a, base + b)
            for base in range(0, k, size)
            for a in range(size)
            for b in range(a + 1, size)
        ]
    else:
        raise InvalidGraphError(f"unknown kind {kind!r}; expected one of {STRUCTURED_KINDS}")
    return Graph.from_edges(k, edges, directed=False)
