"""Cluster sizes through substochastic rescaling and matrix inversion.

The pipeline: rescale a binary adjacency matrix S into a strictly
substochastic weight matrix W, invert I - W, and read the size of node
i's cluster off row i of the inverse as its count of nonzero entries.
The inverse is the geometric series I + W + W^2 + ..., so entry (i, j)
is positive exactly when some path links i to j; it is also the
fundamental matrix of an absorbing Markov chain with transient block W,
which is what makes (I - W) invertible in the first place.

Two rescalings are provided:

* ``geometric``: entry (i, j) becomes S[i][j] / (i+1)**j with 1-based
  i and j, so row i's entries form a geometric sequence with ratio
  1/(i+1) and row sums stay below 1 for every finite k. Entries shrink
  fast; in float arithmetic, products along paths underflow beyond
  k = 16, so that combination is refused (``UnderflowSuspectedError``).
* ``uniform``: every entry becomes S[i][j] / (k+1). Numerically tame at
  any practical size and preserves the same nonzero pattern.

The exact-rational backend is authoritative: "is this entry zero" is
decided exactly, never by threshold.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from fractions import Fraction

import numpy as np

from clusterkit import kernels
from clusterkit.errors import (
    IndexOutOfRangeError,
    BoundViolatedError,
    DomainMismatchError,
    NegativeEntryError,
    NotSubstochasticError,
    RowSumNotSubstochasticError,
    UnderflowSuspectedError,
)
from clusterkit.graphs import AdjacencyMatrix
from clusterkit.linalg import (
    ConvergenceConfig,
    Domain,
    Matrix,
    identity_minus,
    neumann_sum,
    solve_inverse,
)

VARIANT_GEOMETRIC = "geometric"
VARIANT_UNIFORM = "uniform"
VARIANTS = (VARIANT_GEOMETRIC, VARIANT_UNIFORM)

BACKEND_EXACT = "exact"
BACKEND_FLOAT = "float"

# Largest k for which float geometric weights are safe: the smallest
# possible path product, ((k+1)**k)**-(k-1), must stay above the smallest
# positive normal float. At k = 17 it does not.
FLOAT_GEOMETRIC_SAFE_K = 17 - 1

# Any genuine path weight at supported sizes is far above this; true zeros
# are exactly 0.0 because elimination never mixes unlinked blocks.
DEFAULT_NONZERO_THRESHOLD = 1e-300


@dataclass(frozen=True)
class WeightMatrix:
    """Nonnegative rescaled link matrix, tagged with its rescaling variant.

    ``variant`` is None for externally supplied matrices (e.g. Markov
    transient blocks read from files). Strict row sums below 1 are
    enforced at construction unless ``require_substochastic=False``;
    transient blocks only need some power to contract, which
    ``expected_absorption_steps`` checks itself.
    """

    matrix: Matrix
    variant: str | None = None
    require_substochastic: InitVar[bool] = True

    def __post_init__(self, require_substochastic: bool) -> None:
        if self.matrix.domain is Domain.BOOL:
            raise DomainMismatchError("weights must be rational or float")
        if self.matrix.domain is Domain.FLOAT:
            negative = bool(np.any(self.matrix.array < 0))
        else:
            negative = any(v < 0 for row in self.matrix.fraction_rows for v in row)
        if negative:
            raise NegativeEntryError("negative entry in weight matrix")
        if require_substochastic:
            for i, s in enumerate(self.row_sums()):
                if s >= 1:
                    raise RowSumNotSubstochasticError(f"row {i} sums to {s} >= 1")

    @property
    def k(self) -> int:
        return self.matrix.k

    @property
    def backend(self) -> str:
        return BACKEND_FLOAT if self.matrix.domain is Domain.FLOAT else BACKEND_EXACT

    def row_sums(self):
        if self.matrix.domain is Domain.FLOAT:
            return [float(x) for x in self.matrix.array.sum(axis=1)]
        return [sum(row, Fraction(0)) for row in self.matrix.fraction_rows]


@dataclass(frozen=True)
class FundamentalMatrix:
    """Inverse of (I - W): nonnegative, diagonal >= 1, pattern = reachability."""

    matrix: Matrix
    backend: str

    @property
    def k(self) -> int:
        return self.matrix.k


@dataclass(frozen=True)
class ClusterReport:
    """Per-node cluster sizes plus the engine and backend that produced them."""

    sizes: tuple[int, ...]
    engine: str
    backend: str
    n_limit: int | None = None
    nonzero_threshold: float | None = None


@dataclass(frozen=True)
class RowBound:
    """Row-sum check: actual sum, analytic ceiling, and the verdict."""

    row: int
    sum: Fraction | float
    bound: Fraction | float
    ok: bool


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def _check_backend(backend: str) -> None:
    if backend not in (BACKEND_EXACT, BACKEND_FLOAT):
        raise ValueError(f"backend must be 'exact' or 'float', got {backend!r}")


def substochastic_transform(
    s: AdjacencyMatrix, variant: str = VARIANT_GEOMETRIC, backend: str = BACKEND_EXACT
) -> WeightMatrix:
    """Rescale a binary adjacency matrix into a strictly substochastic one.

    ``geometric`` divides entry (i, j) by (i+1)**j with 1-based indices;
    ``uniform`` divides everything by k+1. Either way the output is
    positive exactly where the input has a 1 and every row sums below 1.
    """
    _check_variant(variant)
    _check_backend(backend)
    k = s.k
    if backend == BACKEND_EXACT:
        if variant == VARIANT_UNIFORM:
            rows = tuple(
                tuple(Fraction(s.entry(r, c), k + 1) for c in range(k))
                for r in range(k)
            )
        else:
            rows = []
            for r in range(k):
                divisor = 1
                row = []
                for c in range(k):
                    divisor *= r + 2
                    row.append(Fraction(s.entry(r, c), divisor))
                rows.append(tuple(row))
            rows = tuple(rows)
        return WeightMatrix(Matrix(k, Domain.RATIONAL, rows), variant)
    dense = s.to_numpy()
    if variant == VARIANT_UNIFORM:
        arr = dense / (k + 1)
    else:
        bases = np.arange(2, k + 2, dtype=np.float64).reshape(k, 1)
        exponents = -np.arange(1, k + 1, dtype=np.float64)
        with np.errstate(under="ignore"):
            arr = dense * np.power(bases, exponents)
    return WeightMatrix(Matrix.from_array(arr), variant)


def row_sum_bounds(w: WeightMatrix) -> list[RowBound]:
    """Check each row sum of a geometric-variant weight matrix.

    Row i (1-based) can never exceed the full geometric series
    sum_{j=1..k} (i+1)**-j = (1 - (i+1)**-k) / i, and for finite k it must
    stay strictly below 1; the ceiling 1 is approached only by the first
    row as k grows without bound. A sum of 1 or more means the transform
    is broken and raises BoundViolatedError.
    """
    if w.variant != VARIANT_GEOMETRIC:
        raise ValueError("row_sum_bounds applies to the geometric variant only")
    k = w.k
    exact = w.backend == BACKEND_EXACT
    out = []
    for r, total in enumerate(w.row_sums()):
        i = r + 1
        if exact:
            bound = Fraction((i + 1) ** k - 1, i * (i + 1) ** k)
        else:
            bound = (1.0 - float(i + 1) ** -k) / i
        if total >= 1:
            raise BoundViolatedError(f"row {r} sums to {total} >= 1")
        out.append(RowBound(row=r, sum=total, bound=bound, ok=total <= bound))
    return out


def _guard_float_geometric(k: int, variant: str, backend: str) -> None:
    if (
        backend == BACKEND_FLOAT
        and variant == VARIANT_GEOMETRIC
        and k > FLOAT_GEOMETRIC_SAFE_K
    ):
        raise UnderflowSuspectedError(
            f"float geometric weights underflow for k={k} > "
            f"{FLOAT_GEOMETRIC_SAFE_K}; use the exact backend or the "
            "uniform variant"
        )


def fundamental_matrix(
    s: AdjacencyMatrix, variant: str = VARIANT_GEOMETRIC, backend: str = BACKEND_EXACT
) -> FundamentalMatrix:
    """Invert (I - W) for the rescaled weights W of ``s``."""
    _check_variant(variant)
    _check_backend(backend)
    _guard_float_geometric(s.k, variant, backend)
    w = substochastic_transform(s, variant, backend)
    inverse = solve_inverse(identity_minus(w.matrix))
    return FundamentalMatrix(matrix=inverse, backend=backend)


def cluster_sizes_fundamental(
    s: AdjacencyMatrix,
    variant: str = VARIANT_GEOMETRIC,
    backend: str = BACKEND_EXACT,
    nonzero_threshold: float = DEFAULT_NONZERO_THRESHOLD,
) -> ClusterReport:
    """Cluster size of every node via the inverse of (I - W).

    Row i of the inverse is positive at column j exactly when j is
    reachable from i (including i itself), so its nonzero count is the
    size of i's cluster. The exact backend tests entries against zero
    exactly; the float backend counts entries above ``nonzero_threshold``.
    """
    if nonzero_threshold < 0:
        raise ValueError("nonzero_threshold must be >= 0")
    f = fundamental_matrix(s, variant, backend)
    if backend == BACKEND_EXACT:
        sizes = tuple(
            sum(1 for v in row if v != 0) for row in f.matrix.fraction_rows
        )
        return ClusterReport(sizes=sizes, engine="fundamental", backend=backend)
    counts = (f.matrix.array > nonzero_threshold).sum(axis=1)
    return ClusterReport(
        sizes=tuple(int(c) for c in counts),
        engine="fundamental",
        backend=backend,
        nonzero_threshold=nonzero_threshold,
    )


def cluster_size_within_n(s: AdjacencyMatrix, node: int, n: int) -> int:
    """How many nodes lie within n steps of ``node``, itself included.

    Equals the nonzero count of row ``node`` in the boolean power sum
    I + S + ... + S**n; computed by expanding the reachable set n times
    (stopping early once it stops growing, which cannot change the count).
    """
    if not 0 <= node < s.k:
        raise IndexOutOfRangeError(f"node {node} outside [0, {s.k})")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    reached = 1 << node
    for _ in range(n):
        frontier = reached
        grown = reached
        while frontier:
            j = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            grown |= s.rows[j]
        if grown == reached:
            break
        reached = grown
    return reached.bit_count()


def cluster_sizes_power_sum(s: AdjacencyMatrix, n: int | None = None) -> ClusterReport:
    """Cluster sizes from the boolean power sum, all nodes at once.

    With ``n`` unset the sum runs to k-1 steps, past which it cannot grow,
    so the result is the full reachability count per node.
    """
    from clusterkit.linalg import power_sum

    limit = s.k - 1 if n is None else n
    if limit < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    x = power_sum(Matrix.from_bool_rows(s.rows, s.k), limit)
    sizes = tuple(row.bit_count() for row in x.bool_rows)
    return ClusterReport(
        sizes=sizes, engine="power_sum", backend="boolean", n_limit=n
    )


def cluster_sizes_oracle(s: AdjacencyMatrix) -> ClusterReport:
    """Brute-force cluster sizes, the reference every engine must match.

    Symmetric matrices get union-find over the edges; asymmetric ones get
    a per-node reachability sweep, so entry i is the size of i's forward
    reachable set.
    """
    if s.is_symmetric():
        pairs = [(u, v) for u, v in s.edge_pairs() if u < v]
        sizes = kernels.union_find_sizes(s.k, pairs)
        return ClusterReport(sizes=tuple(sizes), engine="oracle", backend="exact")
    sizes = []
    for i in range(s.k):
        reached = 1 << i
        frontier = reached
        while frontier:
            grown = 0
            while frontier:
                j = (frontier & -frontier).bit_length() - 1
                frontier &= frontier - 1
                grown |= s.rows[j]
            frontier = grown & ~reached
            reached |= grown
        sizes.append(reached.bit_count())
    return ClusterReport(sizes=tuple(sizes), engine="oracle", backend="exact")


def reflexive_transitive_closure(s: AdjacencyMatrix) -> Matrix:
    """Boolean matrix of "j reachable from i in zero or more steps".

    Warshall's algorithm on bitmask rows, seeded with I OR S. This is the
    independent pattern oracle for the fundamental matrix: both must light
    up exactly the same entries.
    """
    rows = [s.rows[i] | (1 << i) for i in range(s.k)]
    for j in range(s.k):
        bit = 1 << j
        rj = rows[j]  # rows[j] cannot change during pivot j: i == j is a no-op
        for i in range(s.k):
            if rows[i] & bit:
                rows[i] |= rj
    return Matrix.from_bool_rows(rows, s.k)


def _transient_contraction_ok(q: WeightMatrix) -> bool:
    """True when some power of q has all row sums below 1."""
    sums = q.row_sums()
    if all(s < 1 for s in sums):
        return True
    limit = 10 * q.k
    if q.matrix.domain is Domain.FLOAT:
        v = q.matrix.array.sum(axis=1)
        for _ in range(limit):
            v = q.matrix.array @ v
            if float(v.max()) < 1.0:
                return True
        return False
    rows = q.matrix.fraction_rows
    v = list(sums)
    for _ in range(limit):
        v = [sum((row[j] * v[j] for j in range(q.k)), Fraction(0)) for row in rows]
        if max(v) < 1:
            return True
    return False


def expected_absorption_steps(q: WeightMatrix):
    """Mean steps to absorption from each transient state of a Markov chain.

    ``q`` is the transient-to-transient transition block. The answer is
    the row sums of the inverse of (I - q): entry (i, j) of that inverse
    is the expected number of visits to j starting from i, and summing
    over j counts every step taken before absorption.

    Returns a list of Fractions (rational backend) or a float64 vector.
    Raises NotSubstochasticError when no power of q contracts below row
    sums of 1, i.e. absorption is not guaranteed.
    """
    if not _transient_contraction_ok(q):
        raise NotSubstochasticError(
            "no power of the transient block has all row sums < 1"
        )
    f = solve_inverse(identity_minus(q.matrix))
    if q.matrix.domain is Domain.FLOAT:
        return f.array.sum(axis=1)
    return [sum(row, Fraction(0)) for row in f.fraction_rows]


def neumann_fundamental(
    w: WeightMatrix, cfg: ConvergenceConfig | None = None
) -> tuple[FundamentalMatrix, int]:
    """Fundamental matrix by series summation instead of direct solve."""
    total, terms = neumann_sum(w.matrix, cfg)
    return FundamentalMatrix(matrix=total, backend=w.backend), terms
