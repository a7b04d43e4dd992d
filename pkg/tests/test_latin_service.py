"""Partial latin squares, bitrade validation, homogeneity and transversals."""

import unittest

from hypothesis import given, settings

from bitrade.models import Axis, Bitrade, Entry, InvalidBitradeError, Label, LabelError, PartialLatinSquare
from bitrade.services.generator_service import cyclic_shift_bitrade, example2, intercalate, reference_partition
from bitrade.services.latin_service import (
    NotATransversalSubsetError,
    SquareMismatchError,
    bitrade_from_squares,
    disjoint_union,
    homogeneity_witness,
    is_k_homogeneous,
    is_transversal,
    relabel,
    sub_bitrade,
    validate_bitrade,
    validate_pls,
)
from bitrade.services.permutation_service import orbits, tau_representation

from support import square_differences, square_pairs


class LabelTest(unittest.TestCase):
    def test_integer_labels_sort_numerically_before_text(self):
        labels = [Label(Axis.ROW, value) for value in ("10", "b", "2", "a")]
        self.assertEqual(["2", "10", "a", "b"], [label.value for label in sorted(labels)])

    def test_blank_labels_are_rejected(self):
        with self.assertRaises(LabelError):
            Label(Axis.SYMBOL, "")
        with self.assertRaises(LabelError):
            Label(Axis.SYMBOL, "a b")

    def test_entry_parses_dart_notation(self):
        self.assertEqual(Entry.of(1, 4, 2), Entry.parse("1:4:2"))
        self.assertEqual("1:4:2", str(Entry.of(1, 4, 2)))
        with self.assertRaises(LabelError):
            Entry.parse("1:4")


class ValidatePlsTest(unittest.TestCase):
    def test_latin_square_has_no_violations(self):
        self.assertTrue(validate_pls(example2().t_dia).ok)

    def test_duplicate_cell_and_repeated_symbols_are_reported(self):
        report = validate_pls(PartialLatinSquare.of([(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2)]))
        self.assertFalse(report.ok)
        self.assertEqual({"PLS"}, set(report.rules()))
        messages = " ".join(v.message for v in report.violations)
        self.assertIn("cell (1,1)", messages)
        self.assertIn("row 1", messages)
        self.assertIn("column 2", messages)


class ValidateBitradeTest(unittest.TestCase):
    def test_reference_bitrades_are_valid(self):
        for b in (intercalate(), example2(), cyclic_shift_bitrade(4)):
            self.assertTrue(validate_bitrade(b.t_dia, b.t_oti).ok)

    def test_missing_partner_breaks_r2_and_r3(self):
        b = example2()
        t_oti = PartialLatinSquare(b.t_oti.entries - {Entry.of(1, 1, 3)})
        report = validate_bitrade(b.t_dia, t_oti)
        self.assertIn("R2", report.rules())
        self.assertIn("1:1:1", {v.subject for v in report.violations if v.rule == "R2"})

    def test_shared_entry_breaks_r1(self):
        b = intercalate()
        report = validate_bitrade(b.t_dia, b.t_dia)
        self.assertIn("R1", report.rules())

    def test_latin_failure_reports_only_pls(self):
        t_dia = PartialLatinSquare(example2().t_dia.entries | {Entry.of(1, 1, 4)})
        report = validate_bitrade(t_dia, example2().t_oti)
        self.assertEqual({"PLS"}, set(report.rules()))

    def test_build_raises_with_the_report(self):
        b = example2()
        with self.assertRaises(InvalidBitradeError) as caught:
            Bitrade.build(b.t_dia, PartialLatinSquare(b.t_oti.entries - {Entry.of(4, 4, 2)}))
        self.assertFalse(caught.exception.report.ok)

    @settings(max_examples=40, deadline=None)
    @given(square_differences())
    def test_differences_of_latin_squares_are_bitrades(self, b):
        self.assertTrue(validate_bitrade(b.t_dia, b.t_oti).ok)
        self.assertFalse(b.t_dia.entries & b.t_oti.entries)


class BitradeFromSquaresTest(unittest.TestCase):
    def test_cyclic_table_and_its_shift(self):
        n = 3
        first = PartialLatinSquare.of((i, j, (i + j) % n) for i in range(n) for j in range(n))
        second = PartialLatinSquare.of((i, j, (i + j + 1) % n) for i in range(n) for j in range(n))
        self.assertEqual(cyclic_shift_bitrade(3), bitrade_from_squares(first, second))

    def test_squares_of_different_orders_are_rejected(self):
        small = PartialLatinSquare.of([(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)])
        large = PartialLatinSquare.of((i, j, (i + j) % 3) for i in range(3) for j in range(3))
        with self.assertRaises(SquareMismatchError):
            bitrade_from_squares(small, large)

    def test_partial_square_is_rejected(self):
        partial = PartialLatinSquare.of([(0, 0, 0), (0, 1, 1), (1, 0, 1)])
        full = PartialLatinSquare.of([(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)])
        with self.assertRaises(SquareMismatchError):
            bitrade_from_squares(partial, full)

    @settings(max_examples=40, deadline=None)
    @given(square_pairs())
    def test_swapping_the_squares_swaps_the_halves(self, squares):
        first, second = squares
        b = bitrade_from_squares(first, second)
        self.assertEqual(b.swapped(), bitrade_from_squares(second, first))
        self.assertEqual(b.t_dia.rows, b.t_oti.rows)
        self.assertEqual(b.t_dia.cols, b.t_oti.cols)
        self.assertEqual(b.t_dia.symbols, b.t_oti.symbols)

    @settings(max_examples=20, deadline=None)
    @given(square_pairs())
    def test_a_square_against_itself_is_empty(self, squares):
        for square in squares:
            b = bitrade_from_squares(square, square)
            self.assertTrue(b.is_empty)
            self.assertEqual(Bitrade.empty(), b)


class HomogeneityTest(unittest.TestCase):
    def test_reference_homogeneity(self):
        self.assertTrue(is_k_homogeneous(intercalate(), 2))
        self.assertFalse(is_k_homogeneous(intercalate(), 3))
        self.assertTrue(is_k_homogeneous(example2(), 3))
        self.assertTrue(is_k_homogeneous(cyclic_shift_bitrade(5), 5))

    def test_empty_bitrade_is_not_homogeneous(self):
        self.assertFalse(is_k_homogeneous(Bitrade.empty(), 3))

    def test_witness_names_the_offending_line(self):
        label, count = homogeneity_witness(intercalate(), 3)
        self.assertEqual(Axis.ROW, label.axis)
        self.assertEqual(2, count)
        self.assertIsNone(homogeneity_witness(example2(), 3))


class TransversalTest(unittest.TestCase):
    def test_reference_classes_are_transversals(self):
        for cls in reference_partition("example2"):
            self.assertTrue(is_transversal(cls, example2()))

    def test_repeated_row_is_not_a_transversal(self):
        chosen = {Entry.of(1, 1, 1), Entry.of(1, 2, 3), Entry.of(3, 3, 3), Entry.of(4, 4, 4)}
        self.assertFalse(is_transversal(chosen, example2()))

    def test_repeated_symbol_is_not_a_transversal(self):
        chosen = {Entry.of(1, 1, 1), Entry.of(2, 2, 2), Entry.of(3, 4, 1), Entry.of(4, 3, 1)}
        self.assertFalse(is_transversal(chosen, example2()))

    def test_entries_outside_t_dia_are_rejected(self):
        with self.assertRaises(NotATransversalSubsetError):
            is_transversal({Entry.of(1, 1, 3)}, example2())


class ConstructionTest(unittest.TestCase):
    def test_relabel_moves_every_matching_label(self):
        mapping = {Label(Axis.SYMBOL, "0"): Label(Axis.SYMBOL, "x"), Label(Axis.SYMBOL, "1"): Label(Axis.SYMBOL, "y")}
        moved = relabel(intercalate(), mapping)
        self.assertEqual({"x", "y"}, {label.value for label in moved.t_dia.symbols})
        self.assertEqual(4, len(moved))

    def test_disjoint_union_and_its_components(self):
        union = disjoint_union(example2(), intercalate())
        self.assertEqual(16, len(union))
        components = orbits(tau_representation(union))
        self.assertEqual([12, 4], sorted((len(c) for c in components), reverse=True))

        first = sub_bitrade(union, components[0])
        self.assertEqual(12, len(first))
        self.assertTrue(is_k_homogeneous(first, 3))
        self.assertTrue(all(label.value.startswith("a") for label in first.t_dia.rows))


if __name__ == "__main__":
    unittest.main()
