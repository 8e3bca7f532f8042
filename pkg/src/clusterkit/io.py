"""File formats: whitespace edge lists and sparse coordinate matrices.

Edge lists are UTF-8 text, one "u v" integer pair per line, with ``#``
comment lines and two optional directives before the first edge:
``nodes=<k>`` fixes the node count (otherwise 1 + the largest endpoint)
and ``directed=true|false`` (default false). Duplicate edges collapse;
self-loops are errors.

Coordinate files are the plain-text sparse subset: a
``%%MatrixMarket matrix coordinate real general`` header, ``%`` comments,
a "rows cols nnz" size line, then 1-based "i j value" triplets. Values
are parsed as exact decimals, and every row must sum below 1, since the
format's purpose here is ingesting Markov transient blocks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import IO, Iterable

from clusterkit.closure import WeightMatrix
from clusterkit.errors import (
    BadHeaderError,
    EmptyInputError,
    EndpointOutOfRangeError,
    IndexOutOfRangeError,
    MalformedLineError,
    NegativeEntryError,
    NotSquareError,
    RowSumNotSubstochasticError,
    SelfLoopError,
)
from clusterkit.graphs import Graph
from clusterkit.linalg import Domain, Matrix


def _as_lines(source: str | IO[str]) -> list[str]:
    text = source if isinstance(source, str) else source.read()
    return text.splitlines()


def parse_edge_list(source: str | IO[str]) -> Graph:
    """Parse edge-list text (or a file object) into a validated Graph."""
    declared_k: int | None = None
    directed = False
    edges: list[tuple[int, int]] = []
    max_endpoint = -1
    saw_edge = False
    for lineno, raw in enumerate(_as_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not saw_edge and "=" in line and len(line.split()) == 1:
            key, _, value = line.partition("=")
            if key == "nodes":
                try:
                    declared_k = int(value)
                except ValueError:
                    raise MalformedLineError(
                        f"line {lineno}: nodes directive needs an integer, got {value!r}"
                    ) from None
                if declared_k < 1:
                    raise EmptyInputError(f"line {lineno}: nodes={declared_k} declares no nodes")
                continue
            if key == "directed":
                if value not in ("true", "false"):
                    raise MalformedLineError(
                        f"line {lineno}: directed directive needs true or false, got {value!r}"
                    )
                directed = value == "true"
                continue
            raise MalformedLineError(f"line {lineno}: unknown directive {key!r}")
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedLineError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise MalformedLineError(f"line {lineno}: non-integer token in {line!r}") from None
        saw_edge = True
        if u == v:
            raise SelfLoopError(f"line {lineno}: self-loop at node {u}")
        for e in (u, v):
            if e < 0 or (declared_k is not None and e >= declared_k):
                bound = declared_k if declared_k is not None else "0"
                raise EndpointOutOfRangeError(
                    f"line {lineno}: endpoint {e} outside [0, {bound})"
                )
        max_endpoint = max(max_endpoint, u, v)
        edges.append((u, v))
    if declared_k is None:
        if max_endpoint < 0:
            raise EmptyInputError("no node count derivable: no directives and no edges")
        declared_k = max_endpoint + 1
    return Graph.from_edges(declared_k, edges, directed=directed)


def serialize_edge_list(g: Graph) -> str:
    """Canonical text form; parse_edge_list(serialize_edge_list(g)) == g."""
    lines = [f"nodes={g.node_count}", f"directed={'true' if g.directed else 'false'}"]
    pairs: Iterable[tuple[int, int]] = (
        sorted(g.edges) if g.directed else g.undirected_pairs()
    )
    lines.extend(f"{u} {v}" for u, v in pairs)
    return "\n".join(lines) + "\n"


def parse_matrix_market(source: str | IO[str]) -> WeightMatrix:
    """Parse a coordinate-format file into a substochastic weight matrix.

    Values become exact Fractions (decimal and exponent notation are both
    exact), so a file-driven Markov computation can run on the rational
    backend unchanged.
    """
    lines = _as_lines(source)
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx == len(lines):
        raise BadHeaderError("empty file")
    header = lines[idx].strip().lower().split()
    if (
        len(header) < 4
        or not header[0].startswith("%%matrixmarket")
        or header[1] != "matrix"
        or header[2] != "coordinate"
        or header[3] != "real"
        or (len(header) > 4 and header[4] != "general")
    ):
        raise BadHeaderError(
            "expected '%%MatrixMarket matrix coordinate real general', "
            f"got {lines[idx].strip()!r}"
        )
    idx += 1
    while idx < len(lines) and (
        not lines[idx].strip() or lines[idx].lstrip().startswith("%")
    ):
        idx += 1
    if idx == len(lines):
        raise BadHeaderError("missing size line")
    size_tokens = lines[idx].split()
    if len(size_tokens) != 3:
        raise BadHeaderError(f"size line must be 'rows cols nnz', got {lines[idx]!r}")
    try:
        n_rows, n_cols, nnz = (int(t) for t in size_tokens)
    except ValueError:
        raise BadHeaderError(f"non-integer size line {lines[idx]!r}") from None
    if n_rows != n_cols:
        raise NotSquareError(f"{n_rows} rows but {n_cols} columns")
    if n_rows < 1:
        raise BadHeaderError("matrix must have at least one row")
    idx += 1
    entries: dict[tuple[int, int], Fraction] = {}
    seen = 0
    for lineno in range(idx, len(lines)):
        line = lines[lineno].strip()
        if not line or line.startswith("%"):
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise MalformedLineError(f"line {lineno + 1}: expected 'i j value'")
        try:
            i, j = int(tokens[0]), int(tokens[1])
            value = Fraction(tokens[2])
        except (ValueError, ZeroDivisionError):
            raise MalformedLineError(f"line {lineno + 1}: bad triplet {line!r}") from None
        if not (1 <= i <= n_rows and 1 <= j <= n_cols):
            raise IndexOutOfRangeError(
                f"line {lineno + 1}: index ({i}, {j}) outside 1..{n_rows}"
            )
        if value < 0:
            raise NegativeEntryError(f"line {lineno + 1}: negative value {tokens[2]}")
        entries[(i - 1, j - 1)] = value
        seen += 1
    if seen != nnz:
        raise BadHeaderError(f"size line declares {nnz} entries, file has {seen}")
    zero = Fraction(0)
    rows = tuple(
        tuple(entries.get((i, j), zero) for j in range(n_cols)) for i in range(n_rows)
    )
    sums = [sum(row, zero) for row in rows]
    for i, s in enumerate(sums):
        if s >= 1:
            raise RowSumNotSubstochasticError(f"row {i + 1} sums to {s} >= 1")
    return WeightMatrix(Matrix(n_rows, Domain.RATIONAL, rows), variant=None)
