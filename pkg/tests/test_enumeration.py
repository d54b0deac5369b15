import os
import unittest

from lambdamap.enumeration import count_terms, enumerate_terms, is_planar
from lambdamap.errors import LambdaMapError
from lambdamap.terms import CanonicalTerm, alpha_canonical, is_decomposable, is_exchange_free, parse_term

SLOW = os.getenv("LAMBDAMAP_SLOW_TESTS") == "1"

CLOSED = {1: 1, 3: 5, 5: 60, 7: 1105, 9: 27120}
INDECOMPOSABLE = {1: 1, 3: 2, 5: 20, 7: 352, 9: 8624, 11: 266784}
PLANAR_INDECOMPOSABLE = {1: 1, 3: 1, 5: 4, 7: 24, 9: 176, 11: 1456}


class EnumerateTests(unittest.TestCase):
    def test_smallest_cases(self):
        self.assertEqual([str(c) for c in enumerate_terms(1, 0)], ["\\x. x"])
        self.assertEqual([str(c) for c in enumerate_terms(0, 1)], ["x"])
        self.assertEqual(list(enumerate_terms(0, 0)), [])
        self.assertEqual(list(enumerate_terms(2, 0)), [])

    def test_size_three(self):
        terms = list(enumerate_terms(3, 0))
        self.assertEqual(len(terms), 5)
        self.assertIn(alpha_canonical(parse_term("\\x. x (\\y. y)")), terms)
        self.assertIn(alpha_canonical(parse_term("(\\x. x) (\\y. y)")), terms)

    def test_emission_is_sorted_and_unique(self):
        terms = list(enumerate_terms(5, 1))
        encodings = [c.encoding() for c in terms]
        self.assertEqual(encodings, sorted(encodings))
        self.assertEqual(len(set(terms)), len(terms))

    def test_every_term_is_linear_with_the_right_shape(self):
        for c in enumerate_terms(4, 2):
            t = c.to_linear()
            self.assertEqual(len(t.context), 2)
            self.assertIsInstance(c, CanonicalTerm)

    def test_closed_counts_by_enumeration(self):
        for n in (1, 3, 5, 7):
            self.assertEqual(sum(1 for _ in enumerate_terms(n, 0)), CLOSED[n])

    def test_indecomposable_counts_by_enumeration(self):
        for n in (1, 3, 5, 7):
            terms = list(enumerate_terms(n, 0, "indecomposable"))
            self.assertEqual(len(terms), INDECOMPOSABLE[n])
            self.assertFalse(any(is_decomposable(c.to_linear()) for c in terms))

    def test_planar_indecomposable_counts_by_enumeration(self):
        for n in (1, 3, 5, 7):
            self.assertEqual(count_terms(n, 0, "planar-indecomposable"), PLANAR_INDECOMPOSABLE[n])

    def test_filters_are_nested(self):
        everything = set(enumerate_terms(5, 0))
        indecomposable = set(enumerate_terms(5, 0, "indecomposable"))
        planar = set(enumerate_terms(5, 0, "planar"))
        both = set(enumerate_terms(5, 0, "planar-indecomposable"))
        self.assertLessEqual(indecomposable, everything)
        self.assertEqual(both, planar & indecomposable)
        self.assertEqual(set(enumerate_terms(5, 0, "bridgeless-map")), indecomposable)

    def test_planar_means_exchange_free(self):
        for n in (1, 3, 5, 7):
            for c in enumerate_terms(n, 0):
                t = c.to_linear()
                self.assertEqual(is_planar(t), is_exchange_free(t), str(c))

    def test_parallel_filter_matches_inline(self):
        inline = list(enumerate_terms(5, 0, "planar"))
        self.assertEqual(list(enumerate_terms(5, 0, "planar", workers=2)), inline)

    def test_unknown_filter(self):
        with self.assertRaises(LambdaMapError):
            list(enumerate_terms(3, 0, "normal"))

    @unittest.skipUnless(SLOW, "set LAMBDAMAP_SLOW_TESTS=1")
    def test_size_nine_by_enumeration(self):
        self.assertEqual(sum(1 for _ in enumerate_terms(9, 0)), CLOSED[9])
        self.assertEqual(sum(1 for _ in enumerate_terms(9, 0, "indecomposable")), INDECOMPOSABLE[9])
        self.assertEqual(count_terms(9, 0, "planar-indecomposable"), PLANAR_INDECOMPOSABLE[9])

    @unittest.skipUnless(SLOW, "set LAMBDAMAP_SLOW_TESTS=1")
    def test_size_eleven_indecomposable_by_enumeration(self):
        self.assertEqual(sum(1 for _ in enumerate_terms(11, 0, "indecomposable")), INDECOMPOSABLE[11])


class CountTests(unittest.TestCase):
    def test_closed_counts(self):
        for n, expected in CLOSED.items():
            self.assertEqual(count_terms(n, 0), expected)

    def test_indecomposable_counts(self):
        for n, expected in INDECOMPOSABLE.items():
            self.assertEqual(count_terms(n, 0, "indecomposable"), expected)

    def test_even_sizes_have_no_closed_terms(self):
        for n in range(0, 12, 2):
            self.assertEqual(count_terms(n, 0), 0)

    def test_counts_match_enumeration_for_open_terms(self):
        for n in range(5):
            for k in range(4):
                self.assertEqual(count_terms(n, k), sum(1 for _ in enumerate_terms(n, k)), (n, k))
                self.assertEqual(
                    count_terms(n, k, "indecomposable"),
                    sum(1 for _ in enumerate_terms(n, k, "indecomposable")),
                    (n, k),
                )

    def test_negative_arguments(self):
        self.assertEqual(count_terms(-1, 0), 0)
        self.assertEqual(list(enumerate_terms(1, -1)), [])


if __name__ == "__main__":
    unittest.main()
