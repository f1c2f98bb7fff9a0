import pytest
from hypothesis import given, settings, strategies as st

from spdim.errors import InvalidSPTree, NotTreewidth2
from spdim.generators import kelly, random_tw2_poset
from spdim.graphs import Graph, dumps, dumps_dot, loads
from spdim.spembed import (
    EDGE,
    PARALLEL,
    SERIES,
    augment_with_fresh_terminals,
    edge_node,
    embed_into_sp,
    has_treewidth_at_most_2,
    mirror,
    parallel,
    series,
    sp_tree_violations,
    validate_sp_tree,
)

from oracles import all_labeled_graphs, has_k4_minor


def k4():
    return Graph("abcd", [("a", "b"), ("a", "c"), ("a", "d"),
                          ("b", "c"), ("b", "d"), ("c", "d")])


def cycle_graph(n):
    verts = ["v%d" % i for i in range(n)]
    return Graph(verts, list(zip(verts, verts[1:])) + [(verts[-1], verts[0])])


def random_partial_2tree(n, seed):
    return random_tw2_poset(n, seed).cover_graph()


class TestRecognition:
    def test_k4_rejected(self):
        assert not has_treewidth_at_most_2(k4())

    def test_trees_and_cycles(self):
        path = Graph("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
        star = Graph("abcd", [("a", "b"), ("a", "c"), ("a", "d")])
        assert has_treewidth_at_most_2(path)
        assert has_treewidth_at_most_2(star)
        assert has_treewidth_at_most_2(cycle_graph(5))

    def test_kelly3_cover_graph_is_not_tw2(self):
        assert not has_treewidth_at_most_2(kelly(3).cover_graph())

    def test_agrees_with_minor_oracle_small(self):
        for n in range(1, 6):
            for g in all_labeled_graphs(n, Graph):
                assert has_treewidth_at_most_2(g) == (not has_k4_minor(g))


class TestSPTreeAlgebra:
    def test_leaf(self):
        leaf = edge_node("a", "b")
        assert validate_sp_tree(leaf)
        assert leaf.source == "a" and leaf.sink == "b"

    def test_series_needs_shared_terminal(self):
        with pytest.raises(InvalidSPTree):
            series(edge_node("a", "b"), edge_node("c", "d"))

    def test_parallel_needs_same_terminals(self):
        with pytest.raises(InvalidSPTree):
            parallel(edge_node("a", "b"), edge_node("a", "c"))

    def test_parallel_extra_shared_vertex_invalid(self):
        left = series(edge_node("a", "m"), edge_node("m", "b"))
        right = series(edge_node("a", "m"), edge_node("m", "b"))
        with pytest.raises(InvalidSPTree):
            parallel(left, right)

    def test_violations_reported_on_forged_node(self):
        left = series(edge_node("a", "m"), edge_node("m", "b"))
        bad = type(left)(PARALLEL, left, left, "a", "b", left.vertices, left.edges)
        assert sp_tree_violations(bad)

    def test_mirror_round_trip(self):
        tree = parallel(edge_node("a", "b"),
                        series(edge_node("a", "c"), edge_node("c", "b")))
        rev = mirror(tree)
        assert rev.source == "b" and rev.sink == "a"
        assert validate_sp_tree(rev)
        assert rev.edges == tree.edges
        again = mirror(rev)
        assert again.source == "a" and again.edges == tree.edges


class TestEmbedding:
    def test_single_edge(self):
        g = Graph("ab", [("a", "b")])
        emb = embed_into_sp(g)
        assert emb.sp.kind == EDGE
        assert emb.host == g
        assert not emb.added_edges and not emb.added_vertices

    def test_path_series_of_two_leaves(self):
        g = Graph("abc", [("a", "b"), ("b", "c")])
        emb = embed_into_sp(g)
        assert emb.host == g
        assert not emb.added_edges
        assert (emb.source, emb.sink) == ("a", "c")
        assert emb.sp.kind == SERIES
        assert emb.sp.left.kind == EDGE and emb.sp.right.kind == EDGE

    def test_four_cycle_host_unchanged(self):
        g = cycle_graph(4)
        emb = embed_into_sp(g)
        assert emb.host == g
        assert not emb.added_edges
        assert validate_sp_tree(emb.sp)

    def test_isolated_vertices_get_connectors(self):
        g = Graph("ab", [])
        emb = embed_into_sp(g)
        assert validate_sp_tree(emb.sp)
        assert set(g.vertices) <= set(emb.host.vertices)
        assert len(emb.added_vertices) == 2

    def test_empty_graph(self):
        emb = embed_into_sp(Graph([], []))
        assert validate_sp_tree(emb.sp)
        assert len(emb.host.vertices) == 2

    def test_k4_refused(self):
        with pytest.raises(NotTreewidth2):
            embed_into_sp(k4())

    def test_pendants_on_k4_minus_edge_block(self):
        # The two degree-2 vertices of K4-e each carry a pendant; their
        # pendant ends are not jointly usable as terminals.
        g = Graph("abcdpq",
                  [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"),
                   ("c", "p"), ("d", "q")])
        emb = embed_into_sp(g)
        assert validate_sp_tree(emb.sp)
        assert g.edges <= emb.host.edges

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=1, max_value=40), st.integers(min_value=0, max_value=10**6))
    def test_random_partial_2trees_embed(self, n, seed):
        g = random_partial_2tree(n, seed)
        emb = embed_into_sp(g)
        assert g.edges <= emb.host.edges
        assert set(g.vertices) <= set(emb.host.vertices)
        assert validate_sp_tree(emb.sp)
        assert has_treewidth_at_most_2(emb.host)
        assert emb.host.edges - g.edges == emb.added_edges

    def test_exhaustive_small_graphs_embed(self):
        for n in range(1, 6):
            for g in all_labeled_graphs(n, Graph):
                if has_treewidth_at_most_2(g):
                    emb = embed_into_sp(g)
                    assert validate_sp_tree(emb.sp)
                    assert g.edges <= emb.host.edges
                    assert has_treewidth_at_most_2(emb.host)


class TestAugment:
    def test_single_edge_becomes_three_path(self):
        emb = augment_with_fresh_terminals(embed_into_sp(Graph("ab", [("a", "b")])))
        assert len(emb.host.vertices) == 4
        assert len(emb.host.edges) == 3
        assert emb.source not in ("a", "b") and emb.sink not in ("a", "b")

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=1, max_value=25), st.integers(min_value=0, max_value=10**6))
    def test_fresh_terminals_and_counts(self, n, seed):
        g = random_partial_2tree(n, seed)
        base = embed_into_sp(g)
        emb = augment_with_fresh_terminals(base)
        assert emb.source not in g.vertices and emb.sink not in g.vertices
        assert len(emb.host.vertices) == len(base.host.vertices) + 2
        assert len(emb.host.edges) == len(base.host.edges) + 2
        assert validate_sp_tree(emb.sp)


class TestGraphText:
    def test_round_trip(self):
        g = Graph("abc", [("a", "b"), ("b", "c")])
        assert loads(dumps(g)) == g

    def test_malformed_edge_line(self):
        from spdim.errors import ParseError
        with pytest.raises(ParseError) as err:
            loads("vertices: a b\na -- z\n")
        assert err.value.line == 2

    def test_dot_dashed_fill_edges(self):
        g = Graph("abc", [("a", "b"), ("b", "c")])
        dot = dumps_dot(g, dashed_edges=[("b", "c")])
        assert '"a" -- "b";' in dot
        assert '"b" -- "c" [style=dashed];' in dot
