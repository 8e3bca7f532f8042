"""Timing harness: matrix-inversion engines versus the brute-force oracle.

Each (k, p, seed) cell generates one random graph, runs every requested
engine on it ``repetitions`` times, and keeps the minimum wall time (the
least noisy point estimate at desk scale). Engines must agree on the
cluster sizes; any disagreement aborts the run, because a fast wrong
answer is worthless. No winner is asserted anywhere: dense inversion is
cubic while union-find is near-linear, so which side wins depends
entirely on size and density, and the harness just reports the table.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from clusterkit.closure import (
    BACKEND_EXACT,
    BACKEND_FLOAT,
    VARIANT_GEOMETRIC,
    VARIANT_UNIFORM,
    cluster_sizes_fundamental,
    cluster_sizes_oracle,
    cluster_sizes_power_sum,
)
from clusterkit.errors import EngineUnavailableError, InvalidBenchSpecError
from clusterkit.errors import BenchmarkDisagreementError
from clusterkit.graphs import AdjacencyMatrix, gen_random_graph, graph_to_adjacency

ENGINE_NAMES = (
    "fundamental_exact",
    "fundamental_float_uniform",
    "oracle",
    "power_sum_boolean",
)

# rational entries blow up combinatorially with k; refuse silly sizes
DEFAULT_EXACT_SIZE_LIMIT = 256

_clock = time.perf_counter_ns

CSV_COLUMNS = ("engine", "k", "p", "seed", "wall_time_ns", "sizes_checksum")


@dataclass(frozen=True)
class BenchSpec:
    """What to measure: grid of sizes/densities/seeds times a set of engines."""

    sizes: tuple[int, ...]
    densities: tuple[float, ...]
    seeds: tuple[int, ...]
    engines: tuple[str, ...]
    repetitions: int = 1
    exact_size_limit: int = DEFAULT_EXACT_SIZE_LIMIT

    def __post_init__(self) -> None:
        for name, values in (
            ("sizes", self.sizes),
            ("densities", self.densities),
            ("seeds", self.seeds),
            ("engines", self.engines),
        ):
            if not values:
                raise InvalidBenchSpecError(f"{name} must be nonempty")
        if self.repetitions < 1:
            raise InvalidBenchSpecError("repetitions must be >= 1")
        for engine in self.engines:
            if engine not in ENGINE_NAMES:
                raise InvalidBenchSpecError(
                    f"unknown engine {engine!r}; expected one of {ENGINE_NAMES}"
                )


@dataclass(frozen=True)
class BenchRecord:
    """One engine timing on one graph."""

    engine: str
    k: int
    p: float
    seed: int
    wall_time_ns: int
    sizes_checksum: int


def sizes_checksum(sizes: Sequence[int]) -> int:
    """Stable 64-bit digest of a sizes list, for cross-engine comparison."""
    payload = ",".join(str(s) for s in sizes).encode()
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "big")


def _sizes_fundamental_exact(s: AdjacencyMatrix) -> Sequence[int]:
    return cluster_sizes_fundamental(s, VARIANT_GEOMETRIC, BACKEND_EXACT).sizes


def _sizes_fundamental_float_uniform(s: AdjacencyMatrix) -> Sequence[int]:
    return cluster_sizes_fundamental(s, VARIANT_UNIFORM, BACKEND_FLOAT).sizes


def _sizes_oracle(s: AdjacencyMatrix) -> Sequence[int]:
    return cluster_sizes_oracle(s).sizes


def _sizes_power_sum(s: AdjacencyMatrix) -> Sequence[int]:
    return cluster_sizes_power_sum(s).sizes


_ENGINE_FUNCS: dict[str, Callable[[AdjacencyMatrix], Sequence[int]]] = {
    "fundamental_exact": _sizes_fundamental_exact,
    "fundamental_float_uniform": _sizes_fundamental_float_uniform,
    "oracle": _sizes_oracle,
    "power_sum_boolean": _sizes_power_sum,
}


def run_benchmark(spec: BenchSpec) -> list[BenchRecord]:
    """Run the grid sequentially and return one record per engine per graph."""
    records: list[BenchRecord] = []
    for k in spec.sizes:
        for p in spec.densities:
            for seed in spec.seeds:
                adjacency = graph_to_adjacency(gen_random_graph(k, p, seed))
                group: list[BenchRecord] = []
                for engine in spec.engines:
                    if engine == "fundamental_exact" and k > spec.exact_size_limit:
                        raise EngineUnavailableError(
                            f"fundamental_exact capped at k <= {spec.exact_size_limit}, "
                            f"requested k={k}"
                        )
                    func = _ENGINE_FUNCS[engine]
                    best: int | None = None
                    sizes: Sequence[int] = ()
                    for _ in range(spec.repetitions):
                        start = _clock()
                        sizes = func(adjacency)
                        elapsed = _clock() - start
                        if best is None or elapsed < best:
                            best = elapsed
                    group.append(
                        BenchRecord(
                            engine=engine,
                            k=k,
                            p=p,
                            seed=seed,
                            wall_time_ns=int(best or 0),
                            sizes_checksum=sizes_checksum(sizes),
                        )
                    )
                checksums = {r.sizes_checksum for r in group}
                if len(checksums) > 1:
                    majority = max(
                        checksums,
                        key=lambda c: sum(1 for r in group if r.sizes_checksum == c),
                    )
                    divergent = [r.engine for r in group if r.sizes_checksum != majority]
                    raise BenchmarkDisagreementError(
                        f"engines {divergent} disagree with the rest on "
                        f"(k={k}, p={p}, seed={seed})"
                    )
                records.extend(group)
    return records


def _sorted_records(records: Sequence[BenchRecord]) -> list[BenchRecord]:
    return sorted(records, key=lambda r: (r.k, r.p, r.seed, r.engine))


def emit_report(records: Sequence[BenchRecord], format: str = "csv") -> str:
    """Render records as CSV (fixed column order) or JSON (same field names)."""
    if not records:
        raise InvalidBenchSpecError("no records to report")
    ordered = _sorted_records(records)
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in ordered:
            writer.writerow(
                [r.engine, r.k, r.p, r.seed, r.wall_time_ns, r.sizes_checksum]
            )
        return buf.getvalue()
    if format == "json":
        payload = [
            {
                "engine": r.engine,
                "k": r.k,
                "p": r.p,
                "seed": r.seed,
                "wall_time_ns": r.wall_time_ns,
                "sizes_checksum": r.sizes_checksum,
            }
            for r in ordered
        ]
        return json.dumps(payload, indent=2) + "\n"
    raise InvalidBenchSpecError(f"format must be 'csv' or 'json', got {format!r}")


def records_from_json(text: str) -> list[BenchRecord]:
    """Inverse of emit_report(..., format="json")."""
    return [BenchRecord(**item) for item in json.loads(text)]
