import itertools
import os
import unittest

import networkx as nx

from lambdamap.bijection import term_to_map
from lambdamap.enumeration import enumerate_terms
from lambdamap.errors import DisconnectedGraphError, MalformedMapError
from lambdamap.graphs import bridges, is_bridgeless, map_to_dot, underlying_graph
from lambdamap.maps import smooth_root
from lambdamap.terms import is_decomposable, lambda_lift, parse_term

SLOW = os.getenv("LAMBDAMAP_SLOW_TESTS") == "1"

PETERSEN = "\\a.\\b.\\c.\\d.\\e. a (\\f. c (e (b (d f))))"


def brute_force_bridges(g: nx.MultiGraph):
    found = set()
    for u, w, key in g.edges(keys=True):
        h = g.copy()
        h.remove_edge(u, w, key)
        if not nx.is_connected(h):
            found.add(frozenset((u, w)))
    return found


def edge_keys(found):
    return {key for _, _, key in found}


class BridgeTests(unittest.TestCase):
    def test_path_has_only_bridges(self):
        self.assertEqual(len(bridges(nx.path_graph(3))), 2)

    def test_cycle_has_none(self):
        self.assertEqual(bridges(nx.cycle_graph(3)), set())

    def test_parallel_edges_are_not_bridges(self):
        g = nx.MultiGraph()
        g.add_edge("a", "b", key="first")
        g.add_edge("a", "b", key="second")
        g.add_edge("b", "c", key="tail")
        self.assertEqual(edge_keys(bridges(g)), {"tail"})

    def test_parallel_edges_with_default_keys(self):
        g = nx.MultiGraph()
        g.add_edge("a", "b")
        g.add_edge("a", "b")
        g.add_edge("b", "c")
        self.assertEqual(bridges(g), {("b", "c", 0)})

    def test_path_with_default_keys(self):
        g = nx.MultiGraph([("a", "b"), ("b", "c")])
        self.assertEqual({frozenset((u, w)) for u, w, _ in bridges(g)}, {frozenset("ab"), frozenset("bc")})

    def test_loops_are_never_bridges(self):
        g = nx.MultiGraph()
        g.add_edge(0, 0, key="loop")
        g.add_edge(0, 1, key="edge")
        self.assertEqual(edge_keys(bridges(g)), {"edge"})

    def test_disconnected_input(self):
        g = nx.Graph()
        g.add_edges_from([(0, 1), (2, 3)])
        with self.assertRaises(DisconnectedGraphError):
            bridges(g)

    def test_agrees_with_deleting_each_edge(self):
        checked = 0
        for n, m, seed in itertools.product(range(2, 13), (0, 3, 8), range(4)):
            g = nx.MultiGraph(nx.gnm_random_graph(n, n - 1 + m, seed=seed))
            if not nx.is_connected(g):
                continue
            self.assertEqual({frozenset((u, w)) for u, w, _ in bridges(g)}, brute_force_bridges(g))
            checked += 1
        self.assertGreater(checked, 20)


class UnderlyingGraphTests(unittest.TestCase):
    def test_identity(self):
        g = underlying_graph(term_to_map(parse_term("\\x. x")))
        self.assertEqual(g.number_of_nodes(), 2)
        self.assertEqual(g.number_of_edges(), 2)
        self.assertEqual(nx.number_of_selfloops(g), 1)

    def test_trivial_map(self):
        g = underlying_graph(term_to_map(parse_term("x", "x")))
        self.assertEqual(g.number_of_nodes(), 1)
        self.assertEqual(g.number_of_edges(), 0)

    def test_petersen(self):
        g = underlying_graph(smooth_root(term_to_map(parse_term(PETERSEN))))
        self.assertEqual(g.number_of_nodes(), 10)
        self.assertEqual(g.number_of_edges(), 15)
        self.assertTrue(nx.is_isomorphic(nx.Graph(g), nx.petersen_graph()))

    def test_b_smooths_to_k4(self):
        g = underlying_graph(smooth_root(term_to_map(parse_term("\\x.\\y.\\z. x (y z)"))))
        self.assertTrue(nx.is_isomorphic(nx.Graph(g), nx.complete_graph(4)))


class BridgelessTests(unittest.TestCase):
    def test_identity_is_bridgeless(self):
        self.assertTrue(is_bridgeless(term_to_map(parse_term("\\x. x"))))

    def test_argument_edge_is_a_bridge(self):
        m = term_to_map(parse_term("\\x. x (\\y. y)"))
        self.assertFalse(is_bridgeless(m))

    def test_two_of_five_size_three_maps_are_bridgeless(self):
        verdicts = [is_bridgeless(term_to_map(c.to_linear())) for c in enumerate_terms(3, 0)]
        self.assertEqual(len(verdicts), 5)
        self.assertEqual(sum(verdicts), 2)

    def test_open_map_rejected(self):
        with self.assertRaises(MalformedMapError):
            is_bridgeless(term_to_map(parse_term("x y", "x,y")))

    def _check_indecomposable_iff_bridgeless(self, max_size: int, max_free: int) -> None:
        for n in range(max_size + 1):
            for k in range(max_free + 1):
                for c in enumerate_terms(n, k):
                    t = c.to_linear()
                    self.assertEqual(
                        is_bridgeless(term_to_map(lambda_lift(t))),
                        not is_decomposable(t),
                        str(c),
                    )

    def test_indecomposable_iff_bridgeless(self):
        self._check_indecomposable_iff_bridgeless(7, 0)
        self._check_indecomposable_iff_bridgeless(4, 2)

    @unittest.skipUnless(SLOW, "set LAMBDAMAP_SLOW_TESTS=1")
    def test_indecomposable_iff_bridgeless_size_nine(self):
        self._check_indecomposable_iff_bridgeless(9, 0)


class DotTests(unittest.TestCase):
    def test_marks_root_and_boundary(self):
        dot = map_to_dot(term_to_map(parse_term("\\z. x z", "x")))
        self.assertTrue(dot.startswith("graph map {"))
        self.assertIn("v0 [shape=box", dot)
        self.assertIn('label="x1"', dot)
        self.assertTrue(dot.rstrip().endswith("}"))


if __name__ == "__main__":
    unittest.main()
