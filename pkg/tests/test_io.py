import io as stdio
import random
from fractions import Fraction

import pytest

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
from clusterkit.graphs import Graph, gen_random_graph
from clusterkit.io import parse_edge_list, parse_matrix_market, serialize_edge_list

MM_HEADER = "%%MatrixMarket matrix coordinate real general\n"


class TestParseEdgeList:
    def test_two_edges(self):
        g = parse_edge_list("0 1\n1 2")
        assert g.node_count == 3
        assert g.edges == frozenset({(0, 1), (1, 0), (1, 2), (2, 1)})
        assert not g.directed

    def test_nodes_directive_adds_isolates(self):
        g = parse_edge_list("nodes=4\n0 1")
        assert g.node_count == 4
        assert g.edges == frozenset({(0, 1), (1, 0)})

    def test_directed_directive(self):
        g = parse_edge_list("directed=true\n0 1")
        assert g.directed and g.edges == frozenset({(0, 1)})

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoopError):
            parse_edge_list("0 0")

    def test_comments_and_blank_lines_skipped(self):
        g = parse_edge_list("# a comment\n\n0 1\n")
        assert g.node_count == 2

    def test_duplicates_collapse(self):
        g = parse_edge_list("0 1\n1 0\n0 1")
        assert len(g.edges) == 2

    def test_malformed_token(self):
        with pytest.raises(MalformedLineError):
            parse_edge_list("0 x")

    def test_wrong_token_count(self):
        with pytest.raises(MalformedLineError):
            parse_edge_list("0 1 2")

    def test_endpoint_beyond_declared_k(self):
        with pytest.raises(EndpointOutOfRangeError):
            parse_edge_list("nodes=2\n0 2")

    def test_negative_endpoint(self):
        with pytest.raises(EndpointOutOfRangeError):
            parse_edge_list("0 -1")

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            parse_edge_list("# nothing here\n")

    def test_nodes_zero(self):
        with pytest.raises(EmptyInputError):
            parse_edge_list("nodes=0")

    def test_directive_after_edges_is_malformed(self):
        with pytest.raises(MalformedLineError):
            parse_edge_list("0 1\nnodes=5")

    def test_accepts_file_object_and_crlf(self):
        g = parse_edge_list(stdio.StringIO("0 1\r\n1 2\r\n"))
        assert g.node_count == 3

    def test_round_trip_random(self):
        rng = random.Random(31)
        for _ in range(40):
            k = rng.randint(1, 15)
            g = gen_random_graph(k, rng.random(), rng.randrange(2**32))
            assert parse_edge_list(serialize_edge_list(g)) == g

    def test_round_trip_directed(self):
        g = Graph.from_edges(4, [(0, 1), (2, 0), (3, 2)], directed=True)
        assert parse_edge_list(serialize_edge_list(g)) == g

    def test_round_trip_isolated_nodes(self):
        g = Graph(node_count=5, edges=frozenset())
        assert parse_edge_list(serialize_edge_list(g)) == g


class TestParseMatrixMarket:
    def test_single_entry(self):
        w = parse_matrix_market(MM_HEADER + "1 1 1\n1 1 0.5\n")
        assert w.k == 1
        assert w.matrix.entry(0, 0) == Fraction(1, 2)

    def test_unspecified_entries_are_zero(self):
        w = parse_matrix_market(MM_HEADER + "2 2 1\n1 2 0.25\n")
        assert w.matrix.to_rows() == [
            [Fraction(0), Fraction(1, 4)],
            [Fraction(0), Fraction(0)],
        ]

    def test_row_sum_at_least_one_rejected(self):
        text = MM_HEADER + "2 2 2\n1 1 0.6\n1 2 0.6\n"
        with pytest.raises(RowSumNotSubstochasticError):
            parse_matrix_market(text)

    def test_not_square(self):
        with pytest.raises(NotSquareError):
            parse_matrix_market(MM_HEADER + "2 3 0\n")

    def test_negative_entry(self):
        with pytest.raises(NegativeEntryError):
            parse_matrix_market(MM_HEADER + "1 1 1\n1 1 -0.5\n")

    def test_bad_header(self):
        with pytest.raises(BadHeaderError):
            parse_matrix_market("%%MatrixMarket matrix array real general\n1 1\n0.5\n")

    def test_missing_header(self):
        with pytest.raises(BadHeaderError):
            parse_matrix_market("1 1 1\n1 1 0.5\n")

    def test_index_out_of_bounds(self):
        with pytest.raises(IndexOutOfRangeError):
            parse_matrix_market(MM_HEADER + "1 1 1\n1 2 0.5\n")

    def test_nnz_mismatch(self):
        with pytest.raises(BadHeaderError):
            parse_matrix_market(MM_HEADER + "1 1 2\n1 1 0.5\n")

    def test_comment_lines_inside_body(self):
        w = parse_matrix_market(MM_HEADER + "% sizes next\n2 2 1\n% entry\n1 2 0.1\n")
        assert w.matrix.entry(0, 1) == Fraction(1, 10)

    def test_exponent_notation_is_exact(self):
        w = parse_matrix_market(MM_HEADER + "1 1 1\n1 1 2.5e-2\n")
        assert w.matrix.entry(0, 0) == Fraction(1, 40)
