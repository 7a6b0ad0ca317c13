"""
Unit tests for graphcolor.coloring: first-fit greedy coloring, verification,
color-class orders and the bounds greedy coloring must respect.
"""
import networkx as nx
import numpy as np
import pytest

from benchmark import synthetic_graphs as sg
from graphcolor.coloring import (
    UNCOLORED,
    Coloring,
    color_class_order,
    count_colors,
    greedy_color,
    is_first_fit,
    verify,
)
from graphcolor.exact import chromatic_exact
from graphcolor.graph_core import from_edge_list
from graphcolor.ordering import MetricTable, random_order
from graphcolor.schemas import ALL_STRATEGIES, REFERENCE_WEIGHTS, OrderingSpec, Strategy


def _spec(strategy):
    return OrderingSpec(
        strategy=strategy,
        seed=11 if strategy == Strategy.RANDOM else None,
        weights=REFERENCE_WEIGHTS if strategy == Strategy.WEIGHTED else None,
    )


class TestGreedyColor:
    def test_path_identity_order(self, p4):
        c = greedy_color(p4, [0, 1, 2, 3])
        assert c.colors.tolist() == [0, 1, 0, 1]
        assert c.num_colors == 2

    def test_triangle_needs_three(self, triangle_with_tail):
        c = greedy_color(triangle_with_tail, [3, 2, 1, 0])
        assert c.colors.tolist() == [2, 0, 1, 0]
        assert c.num_colors == 3

    def test_empty_graph(self):
        c = greedy_color(sg.path(0), [])
        assert c.num_colors == 0 and c.complete

    def test_edgeless_graph_one_color(self):
        g = from_edge_list(5, [])
        assert greedy_color(g, range(5)).num_colors == 1

    def test_invalid_order_rejected(self, p4):
        with pytest.raises(ValueError, match="permutation"):
            greedy_color(p4, [0, 1, 1, 3])
        with pytest.raises(ValueError, match="permutation"):
            greedy_color(p4, [0, 1, 2])

    def test_ell_below_one_rejected(self, p4):
        with pytest.raises(ValueError, match="ell"):
            greedy_color(p4, [0, 1, 2, 3], ell=0)

    def test_matches_networkx_greedy(self):
        for seed in range(5):
            g = sg.gnp(80, 0.1, seed=seed)
            order = random_order(g.n, seed)
            nxg = nx.Graph()
            nxg.add_nodes_from(range(g.n))
            nxg.add_edges_from(g.edges().tolist())
            expected = nx.greedy_color(nxg, strategy=lambda G, colors: iter(order.tolist()))
            ours = greedy_color(g, order)
            assert ours.colors.tolist() == [expected[v] for v in range(g.n)]

    def test_distance_two_star_all_distinct(self):
        g = sg.star(6)
        c = greedy_color(g, range(g.n), ell=2)
        assert c.num_colors == 7
        assert verify(g, c, ell=2)

    def test_distance_two_cycle(self):
        g = sg.cycle(9)
        c = greedy_color(g, range(g.n), ell=2)
        assert verify(g, c, ell=2)
        assert c.num_colors >= 3

    def test_distance_ell_matches_power_graph(self):
        g = sg.gnp(40, 0.06, seed=3)
        order = random_order(g.n, 1)
        nxg = nx.Graph()
        nxg.add_nodes_from(range(g.n))
        nxg.add_edges_from(g.edges().tolist())
        power = nx.power(nxg, 3)
        expected = nx.greedy_color(power, strategy=lambda G, colors: iter(order.tolist()))
        ours = greedy_color(g, order, ell=3)
        assert ours.colors.tolist() == [expected[v] for v in range(g.n)]

    def test_crown_interleaved_uses_n_colors(self):
        for n in range(3, 9):
            g = sg.crown(n)
            c = greedy_color(g, sg.crown_interleaved_order(n))
            assert c.num_colors == n
            assert chromatic_exact(g).chi == 2


class TestVerify:
    def test_detects_conflict(self, p4):
        assert not verify(p4, Coloring.from_colors([0, 0, 1, 0]))

    def test_detects_incomplete(self, p4):
        assert not verify(p4, Coloring.from_colors([0, 1, UNCOLORED, 1]))

    def test_distance_two_conflict(self, p4):
        c = Coloring.from_colors([0, 1, 0, 1])
        assert verify(p4, c, ell=1)
        assert not verify(p4, c, ell=2)

    def test_wrong_length(self, p4):
        assert not verify(p4, Coloring.from_colors([0, 1, 0]))


class TestColorClasses:
    def test_count_colors(self):
        assert count_colors(Coloring.from_colors([0, 2, 1, 2])) == 3
        assert count_colors(np.array([4, 4])) == 1

    def test_color_class_order(self):
        order = color_class_order(Coloring.from_colors([1, 0, 1, 0, 2]))
        assert order.tolist() == [1, 3, 0, 2, 4]

    def test_is_first_fit(self, p4):
        order = [0, 1, 2, 3]
        assert is_first_fit(p4, order, greedy_color(p4, order))
        assert not is_first_fit(p4, order, Coloring.from_colors([0, 2, 0, 1]))

    def test_optimal_order_recovery(self):
        rng = np.random.default_rng(7)
        for i in range(100):
            n = int(rng.integers(4, 13))
            g = sg.gnp(n, float(rng.choice([0.2, 0.4, 0.6])), seed=1000 + i)
            exact = chromatic_exact(g)
            c = greedy_color(g, color_class_order(exact.witness))
            assert c.num_colors == exact.chi


class TestGreedyBounds:
    def _check(self, graphs):
        for g in graphs:
            table = MetricTable(g)
            for strategy in ALL_STRATEGIES:
                order = table.permutation(_spec(strategy))
                c = greedy_color(g, order)
                assert verify(g, c), strategy
                assert c.num_colors <= g.max_degree + 1, strategy
                assert is_first_fit(g, order, c)

    def test_small_sweep(self):
        self._check([sg.gnp(40, p, seed=s) for s, p in enumerate([0.05, 0.2, 0.5])])

    @pytest.mark.slow
    def test_random_graph_sweep(self):
        rng = np.random.default_rng(2025)
        graphs = []
        for i in range(200):
            n = int(rng.integers(2, 201))
            p = float(rng.choice([0.05, 0.2, 0.5]))
            graphs.append(sg.gnp(n, p, seed=i))
        self._check(graphs)
