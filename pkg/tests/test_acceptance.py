"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as the
criteria complete.
"""

import random
import time
from fractions import Fraction

import numpy as np
import pytest
import sympy

from clusterkit.bench import BenchSpec, CSV_COLUMNS, emit_report, run_benchmark
from clusterkit.closure import (
    BACKEND_EXACT,
    BACKEND_FLOAT,
    FLOAT_GEOMETRIC_SAFE_K,
    VARIANT_GEOMETRIC,
    VARIANT_UNIFORM,
    WeightMatrix,
    cluster_size_within_n,
    cluster_sizes_fundamental,
    cluster_sizes_oracle,
    cluster_sizes_power_sum,
    expected_absorption_steps,
    fundamental_matrix,
    neumann_fundamental,
    reflexive_transitive_closure,
    row_sum_bounds,
    substochastic_transform,
)
from clusterkit.errors import UnderflowSuspectedError
from clusterkit.graphs import (
    AdjacencyMatrix,
    gen_random_graph,
    gen_structured_graph,
    graph_to_adjacency,
)
from clusterkit.linalg import (
    ConvergenceConfig,
    Matrix,
    identity_minus,
    residual_norm,
    solve_inverse,
)

from _oracles import bfs_within, random_dense_adjacency

DENSITIES = (0.02, 0.05, 0.1, 0.3, 0.7)


def _pattern_rows(fraction_rows):
    return tuple(
        sum(1 << j for j, v in enumerate(row) if v != 0) for row in fraction_rows
    )


def test_criterion_1_pattern_and_size_equivalence():
    """>= 500 random graphs, k in 1..32: exact pattern == closure, sizes == oracle."""
    rng = random.Random(0xACCE551)
    started = time.perf_counter()
    graphs = 0
    for p in DENSITIES:
        for k in range(1, 33):
            repeats = 3 if k <= 8 else (2 if k <= 16 else 1)
            for _ in range(repeats):
                for directed in (False, True):
                    dense = random_dense_adjacency(rng, k, p, directed)
                    s = AdjacencyMatrix.from_dense(dense)
                    f = fundamental_matrix(s, VARIANT_GEOMETRIC, BACKEND_EXACT)
                    assert (
                        _pattern_rows(f.matrix.fraction_rows)
                        == reflexive_transitive_closure(s).bool_rows
                    )
                    report = cluster_sizes_fundamental(
                        s, VARIANT_GEOMETRIC, BACKEND_EXACT
                    )
                    assert report.sizes == cluster_sizes_oracle(s).sizes
                    graphs += 1
    elapsed = time.perf_counter() - started
    assert graphs >= 500
    assert elapsed <= 60.0, f"pattern suite took {elapsed:.1f}s"
    print(
        f"PASS criterion 1: pattern + size equivalence on {graphs} graphs "
        f"in {elapsed:.1f}s"
    )


def test_criterion_2_within_n_matches_bounded_bfs():
    """>= 200 random graphs, k <= 24, every n in 0..k: within-n == BFS, monotone."""
    rng = random.Random(0xACCE552)
    graphs = 0
    for _ in range(200):
        k = rng.randint(1, 24)
        directed = rng.random() < 0.5
        dense = random_dense_adjacency(rng, k, rng.choice((0.05, 0.15, 0.3)), directed)
        s = AdjacencyMatrix.from_dense(dense)
        nodes = range(k) if k <= 10 else rng.sample(range(k), 6)
        for node in nodes:
            prev = 0
            for n in range(k + 1):
                got = cluster_size_within_n(s, node, n)
                assert got == bfs_within(dense, node, n)
                assert got >= prev
                prev = got
        stabilized = cluster_sizes_power_sum(s, k - 1).sizes
        assert stabilized == cluster_sizes_power_sum(s, k).sizes
        assert stabilized == cluster_sizes_oracle(s).sizes
        graphs += 1
    assert graphs >= 200
    print(f"PASS criterion 2: within-n equals depth-limited BFS on {graphs} graphs")


def test_criterion_3_substochasticity_and_bound():
    """All transforms (k <= 64): row sums < 1; geometric sums match the exact bound."""
    rng = random.Random(0xACCE553)
    corpus = []
    for k in (1, 2, 3, 5, 8, 13, 21, 34, 48, 64):
        corpus.append(graph_to_adjacency(gen_random_graph(k, 1.0, 0)))
        corpus.append(graph_to_adjacency(gen_random_graph(k, 0.3, k)))
        if k >= 2:
            corpus.append(graph_to_adjacency(gen_structured_graph("star", k)))
            corpus.append(graph_to_adjacency(gen_structured_graph("ring", k)))
    checked = 0
    for s in corpus:
        for variant in (VARIANT_GEOMETRIC, VARIANT_UNIFORM):
            for backend in (BACKEND_EXACT, BACKEND_FLOAT):
                w = substochastic_transform(s, variant, backend)
                assert all(total < 1 for total in w.row_sums())
                checked += 1
        w = substochastic_transform(s, VARIANT_GEOMETRIC, BACKEND_EXACT)
        for rb in row_sum_bounds(w):
            i = rb.row + 1
            closed_form = Fraction((i + 1) ** s.k - 1, i * (i + 1) ** s.k)
            term_sum = sum(Fraction(1, (i + 1) ** j) for j in range(1, s.k + 1))
            assert rb.bound == closed_form == term_sum
            assert rb.sum <= rb.bound and rb.ok
    # the first-row ceiling approaches exactly 1 as k grows without bound,
    # matching the halving series (1/2)(1/(1 - 1/2)) = 1 summed symbolically
    j, k_sym = sympy.symbols("j k", positive=True, integer=True)
    series = sympy.summation(sympy.Rational(1, 2) ** j, (j, 1, sympy.oo))
    assert series == 1
    assert sympy.Rational(1, 2) * (1 / (1 - sympy.Rational(1, 2))) == 1
    bound_expr = (1 - (2) ** (-k_sym)) / 1
    assert sympy.limit(bound_expr, k_sym, sympy.oo) == 1
    print(
        f"PASS criterion 3: {checked} transform outputs strictly substochastic; "
        "geometric bound matches closed form; first-row limit is 1"
    )


def test_criterion_4_float_uniform_consistency():
    """k in 50/100/200: residual <= 1e-8, series vs solve <= 1e-10, sizes == oracle."""
    cases = ((50, 0.1, 11), (100, 0.05, 12), (200, 0.04, 13))
    for k, p, seed in cases:
        s = graph_to_adjacency(gen_random_graph(k, p, seed))
        w = substochastic_transform(s, VARIANT_UNIFORM, BACKEND_FLOAT)
        f = solve_inverse(identity_minus(w.matrix))
        assert residual_norm(f, w.matrix) <= 1e-8
        f_series, terms = neumann_fundamental(w, ConvergenceConfig(tolerance=1e-12))
        assert terms >= 1
        assert np.max(np.abs(f_series.matrix.array - f.array)) <= 1e-10
        report = cluster_sizes_fundamental(s, VARIANT_UNIFORM, BACKEND_FLOAT)
        assert report.sizes == cluster_sizes_oracle(s).sizes
    print("PASS criterion 4: float uniform residual/series/sizes at k=50,100,200")


def test_criterion_5_markov_bridge():
    """Hand absorption examples exact; t = 1 + Qt within 1e-10 on 100 random Q."""
    from clusterkit.linalg import Domain

    q0 = WeightMatrix(Matrix.from_rows([[Fraction(0)]], Domain.RATIONAL))
    assert expected_absorption_steps(q0) == [Fraction(1)]
    q1 = WeightMatrix(Matrix.from_rows([[Fraction(1, 2)]], Domain.RATIONAL))
    assert expected_absorption_steps(q1) == [Fraction(2)]
    q2 = WeightMatrix(
        Matrix.from_rows(
            [[Fraction(0), Fraction(1, 2)], [Fraction(0), Fraction(0)]],
            Domain.RATIONAL,
        )
    )
    assert expected_absorption_steps(q2) == [Fraction(3, 2), Fraction(1)]

    rng = np.random.default_rng(0xACCE555)
    for _ in range(100):
        k = int(rng.integers(1, 21))
        raw = rng.random((k, k))
        q_arr = raw / raw.sum(axis=1, keepdims=True) * rng.uniform(0.05, 0.95)
        q = WeightMatrix(Matrix.from_array(q_arr))
        t = expected_absorption_steps(q)
        assert np.max(np.abs(t - (1 + q_arr @ t))) <= 1e-10
    print("PASS criterion 5: absorption examples exact; fixed point within 1e-10")


def test_criterion_6_benchmark_harness():
    """Benchmark grid completes with schema-exact CSV and matching checksums."""
    spec = BenchSpec(
        sizes=(64, 256, 1024),
        densities=(0.01, 0.1),
        seeds=(1, 2, 3),
        engines=("oracle", "fundamental_float_uniform"),
        repetitions=1,
    )
    records = run_benchmark(spec)
    assert len(records) == 3 * 2 * 3 * 2
    by_cell = {}
    for r in records:
        by_cell.setdefault((r.k, r.p, r.seed), set()).add(r.sizes_checksum)
    assert all(len(sums) == 1 for sums in by_cell.values())
    csv_text = emit_report(records, "csv")
    lines = csv_text.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + len(records)
    for line in lines[1:]:
        engine, k, p, seed, wall, checksum = line.split(",")
        assert engine in ("oracle", "fundamental_float_uniform")
        assert int(k) in (64, 256, 1024)
        assert float(p) in (0.01, 0.1)
        assert int(seed) in (1, 2, 3)
        assert int(wall) > 0
        assert 0 <= int(checksum) < 2**64
    keys = [
        (int(l.split(",")[1]), float(l.split(",")[2]), int(l.split(",")[3]), l.split(",")[0])
        for l in lines[1:]
    ]
    assert keys == sorted(keys)
    print(
        "PASS criterion 6: benchmark over k=64/256/1024 completed with "
        "schema-exact CSV and equal checksums per cell (no winner asserted)"
    )


def test_criterion_7_underflow_guard():
    """Float geometric refuses k=17; matches oracle on 100 graphs at k <= 16."""
    assert FLOAT_GEOMETRIC_SAFE_K == 16
    s17 = graph_to_adjacency(gen_random_graph(17, 0.4, 7))
    with pytest.raises(UnderflowSuspectedError):
        cluster_sizes_fundamental(s17, VARIANT_GEOMETRIC, BACKEND_FLOAT)

    rng = random.Random(0xACCE557)
    for _ in range(100):
        k = rng.randint(1, 16)
        p = rng.choice((0.05, 0.15, 0.3, 0.6))
        dense = random_dense_adjacency(rng, k, p, directed=rng.random() < 0.5)
        s = AdjacencyMatrix.from_dense(dense)
        report = cluster_sizes_fundamental(s, VARIANT_GEOMETRIC, BACKEND_FLOAT)
        assert report.sizes == cluster_sizes_oracle(s).sizes
    print("PASS criterion 7: k=17 refused; float geometric matches oracle at k<=16")
