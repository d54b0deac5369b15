import itertools
import os
import unittest

from lambdamap.bijection import term_to_map
from lambdamap.coloring import (
    DeskCheckReport,
    KleinElement,
    edge_three_colorings,
    fourct_desk_check,
    has_proper_three_typing,
    is_three_typing,
    klein_imp,
    klein_mul,
    three_typings,
    typing_coloring_correspondence,
    typing_to_edge_coloring,
)
from lambdamap.enumeration import enumerate_terms
from lambdamap.errors import BudgetExceededError, MalformedMapError, OpenTermError
from lambdamap.maps import ClassicalMap, Permutation, smooth_root
from lambdamap.terms import is_decomposable, parse_term

SLOW = os.getenv("LAMBDAMAP_SLOW_TESTS") == "1"

ONE, R, G, B = KleinElement.ONE, KleinElement.R, KleinElement.G, KleinElement.B
COMPOSE = "\\x.\\y.\\z. x (y z)"


def theta_map() -> ClassicalMap:
    v = Permutation.from_cycles([(0, 1, 2), (3, 4, 5)])
    e = Permutation.from_cycles([(0, 3), (1, 4), (2, 5)])
    return ClassicalMap(tuple(range(6)), v, e)


def brute_force_edge_colorings(m: ClassicalMap) -> int:
    edges = m.edges
    count = 0
    for colors in itertools.product((R, G, B), repeat=len(edges)):
        at = {}
        for (a, b), c in zip(edges, colors):
            at[a] = at[b] = c
        if all(len({at[d] for d in vertex}) == 3 for vertex in m.vertices):
            count += 1
    return count


class KleinGroupTests(unittest.TestCase):
    def test_table(self):
        self.assertIs(klein_mul(R, G), B)
        self.assertIs(klein_mul(G, B), R)
        self.assertIs(klein_imp(R, B), G)
        for x in KleinElement:
            self.assertIs(klein_mul(x, x), ONE)
            self.assertIs(klein_mul(ONE, x), x)
            self.assertIs(klein_imp(ONE, x), x)

    def test_group_laws(self):
        for x, y, z in itertools.product(KleinElement, repeat=3):
            self.assertIs(klein_mul(klein_mul(x, y), z), klein_mul(x, klein_mul(y, z)))
            self.assertIs(klein_mul(x, y), klein_mul(y, x))

    def test_parse_and_print(self):
        self.assertIs(KleinElement.parse("r"), R)
        self.assertIs(KleinElement.parse("1"), ONE)
        self.assertEqual(str(ONE), "1")
        self.assertEqual(str(G), "G")


class ThreeTypingTests(unittest.TestCase):
    def test_identity(self):
        typings = three_typings(parse_term("\\x. x"), proper_only=True)
        self.assertEqual(len(typings), 3)
        self.assertTrue(all(t.root is ONE for t in typings))
        self.assertEqual(len(three_typings(parse_term("\\x. x"))), 4)

    def test_bridged_term_has_no_proper_typing(self):
        t = parse_term("\\x. x (\\y. y)")
        self.assertEqual(three_typings(t, proper_only=True), [])
        self.assertFalse(has_proper_three_typing(t))

    def test_composition_typing(self):
        typings = three_typings(parse_term(COMPOSE), proper_only=True)
        self.assertEqual(len(typings), 6)
        wanted = {
            "root/body/body/body/fn": R,
            "root/body/body/body/arg/fn": G,
            "root/body/body/body/arg/arg": R,
            "root/body/body/body/arg": B,
            "root/body/body/body": G,
            "root": ONE,
        }
        self.assertTrue(any(all(t.value(p) is c for p, c in wanted.items()) for t in typings))
        self.assertTrue(all(t.is_proper for t in typings))

    def test_open_terms_rejected(self):
        with self.assertRaises(OpenTermError):
            three_typings(parse_term("\\y. x y", "x"))

    def test_root_is_always_unit(self):
        for n in (1, 3, 5):
            for c in enumerate_terms(n, 0):
                t = c.to_linear()
                for typing in three_typings(t):
                    self.assertIs(typing.root, ONE)
                    self.assertTrue(is_three_typing(t, typing))

    def test_decomposable_terms_have_no_proper_typing(self):
        for n in (1, 3, 5, 7):
            for c in enumerate_terms(n, 0):
                t = c.to_linear()
                if is_decomposable(t):
                    self.assertFalse(has_proper_three_typing(t), str(c))


class EdgeColoringTests(unittest.TestCase):
    def test_theta(self):
        self.assertEqual(len(edge_three_colorings(theta_map())), 6)

    def test_k4(self):
        k4 = smooth_root(term_to_map(parse_term(COMPOSE)))
        colorings = edge_three_colorings(k4)
        self.assertEqual(len(colorings), 6)
        for coloring in colorings:
            for vertex in k4.vertices:
                self.assertEqual({coloring.color_of(d) for d in vertex}, {R, G, B})

    def test_bridge_forbids_coloring(self):
        m = smooth_root(term_to_map(parse_term("\\x.\\y. x (y (\\z. z))")))
        self.assertEqual(edge_three_colorings(m), [])

    def test_matches_brute_force(self):
        for c in enumerate_terms(5, 0):
            m = smooth_root(term_to_map(c.to_linear()))
            self.assertEqual(len(edge_three_colorings(m)), brute_force_edge_colorings(m), str(c))

    def test_rejects_non_trivalent(self):
        v = Permutation.from_cycles([(0, 1)])
        e = Permutation.from_cycles([(0, 1)])
        with self.assertRaises(MalformedMapError):
            edge_three_colorings(ClassicalMap((0, 1), v, e))


class CorrespondenceTests(unittest.TestCase):
    def test_typings_map_onto_colorings(self):
        t = parse_term(COMPOSE)
        typings = three_typings(t, proper_only=True)
        images = {typing_to_edge_coloring(t, typing) for typing in typings}
        self.assertEqual(len(images), len(typings))
        self.assertEqual(images, set(edge_three_colorings(smooth_root(term_to_map(t)))))

    def test_examples(self):
        self.assertTrue(typing_coloring_correspondence(parse_term(COMPOSE)))
        self.assertTrue(typing_coloring_correspondence(parse_term("\\x. x (\\y. y)")))

    def test_all_closed_terms_up_to_seven(self):
        for n in (3, 5, 7):
            for c in enumerate_terms(n, 0):
                self.assertTrue(typing_coloring_correspondence(c.to_linear()), str(c))


class DeskCheckTests(unittest.TestCase):
    def test_up_to_five(self):
        report = fourct_desk_check(5)
        self.assertEqual(report.checked, {1: 1, 3: 1, 5: 4})
        self.assertTrue(report.passed)
        self.assertEqual(report.total, 6)

    def test_single_size(self):
        report = fourct_desk_check(1)
        self.assertEqual(report.checked, {1: 1})
        self.assertTrue(report.passed)

    def test_up_to_seven_in_parallel(self):
        report = fourct_desk_check(7, workers=2)
        self.assertEqual(report.checked[7], 24)
        self.assertTrue(report.passed)

    def test_budget(self):
        with self.assertRaises(BudgetExceededError):
            fourct_desk_check(13, budget=11)

    def test_report_lines(self):
        report = DeskCheckReport(3, {1: 1, 3: 1}, ["\\x. x (\\y. y)"])
        self.assertFalse(report.passed)
        self.assertEqual(report.lines()[-1], "FAILED")

    @unittest.skipUnless(SLOW, "set LAMBDAMAP_SLOW_TESTS=1")
    def test_up_to_nine(self):
        report = fourct_desk_check(9)
        self.assertEqual(report.checked[9], 176)
        self.assertEqual(report.total, 206)
        self.assertTrue(report.passed)


if __name__ == "__main__":
    unittest.main()
