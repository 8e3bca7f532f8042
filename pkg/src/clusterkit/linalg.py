"""Square-matrix arithmetic over three scalar domains.

Domains: boolean (OR/AND semiring, rows stored as bitmasks), exact rational
(``fractions.Fraction``, always in lowest terms), and 64-bit float (numpy).
The boolean domain carries reachability patterns; the rational domain is
the authoritative engine wherever "is this entry zero" must be decided
exactly; the float domain trades that certainty for speed.

Exact inversion clears row denominators and runs fraction-free elimination
on integers (see :mod:`clusterkit.kernels`), so no rounding ever occurs in
the rational domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from clusterkit import kernels
from clusterkit.errors import (
    DimensionMismatchError,
    DomainMismatchError,
    NoConvergenceError,
    SingularMatrixError,
)

try:
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _bigint = int

PIVOT_REL_TOL = 1e-12


class Domain(Enum):
    BOOL = "boolean"
    RATIONAL = "rational"
    FLOAT = "float"


class Matrix:
    """Immutable square matrix tagged with its scalar domain.

    Storage is domain-specific: bitmask rows (BOOL), tuples of Fraction
    (RATIONAL), or a locked float64 ndarray (FLOAT). Use ``from_rows`` to
    build one from nested sequences.
    """

    __slots__ = ("k", "domain", "_data")

    def __init__(self, k: int, domain: Domain, data):
        self.k = k
        self.domain = domain
        self._data = data

    @classmethod
    def from_rows(cls, rows, domain: Domain) -> "Matrix":
        k = len(rows)
        if k < 1 or any(len(r) != k for r in rows):
            raise DimensionMismatchError("matrix must be square with k >= 1")
        if domain is Domain.BOOL:
            bits = tuple(
                sum(1 << j for j, v in enumerate(row) if v) for row in rows
            )
            return cls(k, domain, bits)
        if domain is Domain.RATIONAL:
            frac = tuple(tuple(Fraction(v) for v in row) for row in rows)
            return cls(k, domain, frac)
        arr = np.array(rows, dtype=np.float64)
        arr.setflags(write=False)
        return cls(k, domain, arr)

    @classmethod
    def from_bool_rows(cls, bit_rows, k: int) -> "Matrix":
        return cls(k, Domain.BOOL, tuple(bit_rows))

    @classmethod
    def from_array(cls, arr) -> "Matrix":
        a = np.array(arr, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DimensionMismatchError("array must be square with k >= 1")
        a.setflags(write=False)
        return cls(a.shape[0], Domain.FLOAT, a)

    @property
    def bool_rows(self) -> tuple[int, ...]:
        if self.domain is not Domain.BOOL:
            raise DomainMismatchError("bool_rows requires the boolean domain")
        return self._data

    @property
    def fraction_rows(self) -> tuple[tuple[Fraction, ...], ...]:
        if self.domain is not Domain.RATIONAL:
            raise DomainMismatchError("fraction_rows requires the rational domain")
        return self._data

    @property
    def array(self) -> np.ndarray:
        if self.domain is not Domain.FLOAT:
            raise DomainMismatchError("array requires the float domain")
        return self._data

    def entry(self, i: int, j: int):
        if self.domain is Domain.BOOL:
            return bool((self._data[i] >> j) & 1)
        if self.domain is Domain.RATIONAL:
            return self._data[i][j]
        return float(self._data[i, j])

    def to_rows(self) -> list[list]:
        return [[self.entry(i, j) for j in range(self.k)] for i in range(self.k)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.k != other.k or self.domain is not other.domain:
            return False
        if self.domain is Domain.FLOAT:
            return bool(np.array_equal(self._data, other._data))
        return self._data == other._data

    def __hash__(self):
        if self.domain is Domain.FLOAT:
            return hash((self.k, self.domain, self._data.tobytes()))
        return hash((self.k, self.domain, self._data))

    def __repr__(self) -> str:
        return f"Matrix(k={self.k}, domain={self.domain.value})"


@dataclass(frozen=True)
class ConvergenceConfig:
    """Stopping rule for the truncated geometric series.

    ``tolerance`` bounds the sup-norm of the last added power; ``max_terms``
    defaults to 10*k at call time, after which the sum is declared divergent.
    """

    tolerance: float = 1e-12
    max_terms: int | None = None

    def __post_init__(self) -> None:
        if self.tolerance < 0:
            raise ValueError("tolerance must be >= 0")
        if self.max_terms is not None and self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


def identity(k: int, domain: Domain) -> Matrix:
    """The k-by-k identity in the requested domain."""
    if k < 1:
        raise DimensionMismatchError(f"k must be >= 1, got {k}")
    if domain is Domain.BOOL:
        return Matrix(k, domain, tuple(1 << i for i in range(k)))
    if domain is Domain.RATIONAL:
        one, zero = Fraction(1), Fraction(0)
        rows = tuple(
            tuple(one if i == j else zero for j in range(k)) for i in range(k)
        )
        return Matrix(k, domain, rows)
    arr = np.eye(k)
    arr.setflags(write=False)
    return Matrix(k, domain, arr)


def _check_conformable(a: Matrix, b: Matrix) -> None:
    if a.domain is not b.domain:
        raise DomainMismatchError(f"{a.domain.value} vs {b.domain.value}")
    if a.k != b.k:
        raise DimensionMismatchError(f"k={a.k} vs k={b.k}")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product in the operands' semiring.

    Boolean uses (OR, AND); rational and float use (+, *). Rational and
    boolean products are exact.
    """
    _check_conformable(a, b)
    k = a.k
    if a.domain is Domain.BOOL:
        out = []
        for i in range(k):
            acc = 0
            m = a._data[i]
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                acc |= b._data[j]
            out.append(acc)
        return Matrix(k, Domain.BOOL, tuple(out))
    if a.domain is Domain.RATIONAL:
        zero = Fraction(0)
        out_rows = []
        for i in range(k):
            acc = [zero] * k
            for j, aij in enumerate(a._data[i]):
                if aij:
                    brow = b._data[j]
                    for c in range(k):
                        if brow[c]:
                            acc[c] += aij * brow[c]
            out_rows.append(tuple(acc))
        return Matrix(k, Domain.RATIONAL, tuple(out_rows))
    arr = a._data @ b._data
    arr.setflags(write=False)
    return Matrix(k, Domain.FLOAT, arr)


def _mat_add(a: Matrix, b: Matrix) -> Matrix:
    _check_conformable(a, b)
    if a.domain is Domain.BOOL:
        return Matrix(a.k, Domain.BOOL, tuple(x | y for x, y in zip(a._data, b._data)))
    if a.domain is Domain.RATIONAL:
        rows = tuple(
            tuple(x + y for x, y in zip(ra, rb))
            for ra, rb in zip(a._data, b._data)
        )
        return Matrix(a.k, Domain.RATIONAL, rows)
    arr = a._data + b._data
    arr.setflags(write=False)
    return Matrix(a.k, Domain.FLOAT, arr)


def identity_minus(m: Matrix) -> Matrix:
    """I - m in m's (numeric) domain."""
    if m.domain is Domain.BOOL:
        raise DomainMismatchError("identity_minus requires a numeric domain")
    if m.domain is Domain.RATIONAL:
        one = Fraction(1)
        rows = tuple(
            tuple((one if i == j else 0) - v for j, v in enumerate(row))
            for i, row in enumerate(m._data)
        )
        return Matrix(m.k, Domain.RATIONAL, rows)
    arr = np.eye(m.k) - m._data
    arr.setflags(write=False)
    return Matrix(m.k, Domain.FLOAT, arr)


def mat_power(s: Matrix, n: int) -> Matrix:
    """s**n by repeated squaring; n = 0 gives the identity."""
    if n < 0:
        raise ValueError(f"exponent must be >= 0, got {n}")
    result = identity(s.k, s.domain)
    base = s
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def power_sum(s: Matrix, n: int) -> Matrix:
    """Sum of the powers s**0 through s**n in s's semiring.

    In the boolean domain this is computed as (I OR s)**n, which is the
    same matrix: ORing the identity in makes every walk extendable by
    "stay put" steps, so the n-th power already contains all shorter
    walks. Entry (i, j) is then true exactly when j is within n steps
    of i. Numeric domains accumulate the literal sum, which grows
    combinatorially but stays exact for rational entries.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if s.domain is Domain.BOOL:
        reflexive = Matrix(
            s.k, Domain.BOOL, tuple(r | (1 << i) for i, r in enumerate(s._data))
        )
        return mat_power(reflexive, n)
    total = identity(s.k, s.domain)
    p = identity(s.k, s.domain)
    for _ in range(n):
        p = mat_mul(p, s)
        total = _mat_add(total, p)
    return total


def sup_norm(m: Matrix) -> float:
    """Largest absolute entry, as a float."""
    if m.domain is Domain.BOOL:
        raise DomainMismatchError("sup_norm requires a numeric domain")
    if m.domain is Domain.RATIONAL:
        return float(max(abs(v) for row in m._data for v in row))
    return float(np.max(np.abs(m._data)))


def solve_inverse(m: Matrix) -> Matrix:
    """Inverse of a numeric matrix.

    Float: LU with partial pivoting; a pivot below ``PIVOT_REL_TOL`` times
    the largest input entry raises SingularMatrixError. Rational: row
    denominators are cleared and the integer matrix is inverted by
    fraction-free elimination, so the result is exact.
    """
    if m.domain is Domain.BOOL:
        raise DomainMismatchError("solve_inverse requires a numeric domain")
    if m.domain is Domain.FLOAT:
        inv = kernels.lu_inverse(m._data, PIVOT_REL_TOL)
        if inv is None:
            raise SingularMatrixError("pivot below threshold during LU factorization")
        inv.setflags(write=False)
        return Matrix(m.k, Domain.FLOAT, inv)
    k = m.k
    denoms = [math.lcm(*(v.denominator for v in row)) for row in m._data]
    int_rows = [
        [_bigint(v.numerator * (d // v.denominator)) for v in row]
        for row, d in zip(m._data, denoms)
    ]
    result = kernels.ffgj_inverse(int_rows)
    if result is None:
        raise SingularMatrixError("zero pivot during fraction-free elimination")
    numerators, det = result
    det = int(det)
    rows = tuple(
        tuple(Fraction(int(numerators[i][j]) * denoms[j], det) for j in range(k))
        for i in range(k)
    )
    return Matrix(k, Domain.RATIONAL, rows)


def neumann_sum(s: Matrix, cfg: ConvergenceConfig | None = None) -> tuple[Matrix, int]:
    """Truncated geometric series I + s + s**2 + ... and the stop index.

    Terms are added until the newly added power falls below
    ``cfg.tolerance`` in sup-norm; if ``cfg.max_terms`` powers (default
    10*k) never do, the series is declared divergent.

    Returns ``(partial_sum, t)`` where ``s**t`` is the first term below
    tolerance and the sum includes it.
    """
    if s.domain is Domain.BOOL:
        raise DomainMismatchError("neumann_sum requires a numeric domain")
    if cfg is None:
        cfg = ConvergenceConfig()
    max_terms = cfg.max_terms if cfg.max_terms is not None else 10 * s.k
    total = identity(s.k, s.domain)
    if sup_norm(total) < cfg.tolerance:
        return total, 0
    p = total
    for t in range(1, max_terms + 1):
        p = mat_mul(p, s)
        total = _mat_add(total, p)
        if sup_norm(p) < cfg.tolerance:
            return total, t
    raise NoConvergenceError(
        f"increment above {cfg.tolerance} after {max_terms} terms"
    )


def residual_norm(f: Matrix, s: Matrix) -> float:
    """Sup-norm of f @ (I - s) - I; zero when f is the exact inverse."""
    if f.domain is Domain.BOOL or s.domain is Domain.BOOL:
        raise DomainMismatchError("residual_norm requires numeric domains")
    _check_conformable(f, s)
    product = mat_mul(f, identity_minus(s))
    if f.domain is Domain.FLOAT:
        return float(np.max(np.abs(product._data - np.eye(f.k))))
    worst = Fraction(0)
    for i, row in enumerate(product._data):
        for j, v in enumerate(row):
            diff = abs(v - (1 if i == j else 0))
            if diff > worst:
                worst = diff
    return float(worst)
