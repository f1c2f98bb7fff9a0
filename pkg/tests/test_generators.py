import pytest

from spdim.errors import BadParameter
from spdim.exactdim import dimension_exact
from spdim.generators import (
    antichain,
    chain,
    forest_poset,
    generate,
    kelly,
    random_tw2_poset,
    standard_example,
)
from spdim.spembed import has_treewidth_at_most_2


class TestStandardExample:
    def test_comparabilities(self):
        for n in (2, 3, 5):
            sn = standard_example(n)
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    assert sn.less("a%d" % i, "b%d" % j) == (i != j)
                    assert not sn.less("b%d" % i, "a%d" % j)

    def test_cover_graph_is_perfect_matching_at_2(self):
        g = standard_example(2).cover_graph()
        assert g.edges == frozenset({("a1", "b2"), ("a2", "b1")})

    def test_incomparable_count(self):
        assert len(standard_example(2).incomparable_pairs()) == 8

    def test_bad_parameter(self):
        with pytest.raises(BadParameter):
            standard_example(1)


class TestKelly:
    def test_structure_sizes(self):
        for n in (2, 3, 5):
            k = kelly(n)
            assert len(k.elements) == 4 * n + 2

    def test_induced_standard_example_is_exact(self):
        for n in (2, 3, 4):
            k = kelly(n)
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    assert k.less("a%d" % i, "b%d" % j) == (i != j)
                    aa = k.less("a%d" % i, "a%d" % j) or k.less("a%d" % j, "a%d" % i)
                    bb = k.less("b%d" % i, "b%d" % j) or k.less("b%d" % j, "b%d" % i)
                    assert not aa and not bb

    def test_treewidth(self):
        assert has_treewidth_at_most_2(kelly(2).cover_graph())
        assert not has_treewidth_at_most_2(kelly(3).cover_graph())
        assert not has_treewidth_at_most_2(kelly(4).cover_graph())

    def test_dimension_at_least_two(self):
        assert dimension_exact(kelly(2), cap=200).dimension >= 2

    def test_bad_parameter(self):
        with pytest.raises(BadParameter):
            kelly(1)


class TestChainsAntichains:
    def test_chain(self):
        c = chain(5)
        assert dimension_exact(c).dimension == 1
        assert len(c.cover_graph().edges) == 4

    def test_antichain(self):
        a = antichain(3)
        assert dimension_exact(a).dimension == 2
        assert not a.cover_graph().edges

    def test_single(self):
        assert len(chain(1)) == 1
        assert len(antichain(1)) == 1

    def test_bad_parameter(self):
        with pytest.raises(BadParameter):
            chain(0)
        with pytest.raises(BadParameter):
            antichain(0)


class TestRandomFamilies:
    def test_determinism(self):
        for family in ("random_tw2", "forest"):
            a = generate(family, 17, seed=123)
            b = generate(family, 17, seed=123)
            assert a == b
            assert generate(family, 17, seed=124) != a

    def test_random_tw2_always_in_class(self):
        for seed in range(150):
            p = random_tw2_poset(1 + seed % 35, seed)
            assert has_treewidth_at_most_2(p.cover_graph())

    def test_singleton(self):
        assert len(random_tw2_poset(1, 0)) == 1

    def test_forest_cover_graph_is_acyclic(self):
        for seed in range(40):
            g = forest_poset(1 + seed % 10, seed).cover_graph()
            assert len(g.edges) < len(g.vertices) or len(g.vertices) == 0
            assert has_treewidth_at_most_2(g)

    def test_forest_dimension_small_sample(self):
        for seed in range(40):
            p = forest_poset(1 + seed % 8, seed)
            assert dimension_exact(p, cap=100).dimension <= 3

    def test_unknown_family(self):
        with pytest.raises(BadParameter):
            generate("zigzag", 3)

    def test_bad_parameter(self):
        with pytest.raises(BadParameter):
            random_tw2_poset(0, 1)
        with pytest.raises(BadParameter):
            forest_poset(0, 1)
