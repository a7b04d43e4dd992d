"""Tau representation, the T1-T4 conditions and the permutation-to-bitrade construction."""

import unittest

from hypothesis import given, settings

from bitrade.models import Bitrade, Entry, PartialLatinSquare
from bitrade.services.generator_service import (
    cyclic_shift_bitrade,
    example2,
    intercalate,
    reference_tau_cycles,
)
from bitrade.services.latin_service import bitrade_from_squares, disjoint_union
from bitrade.services.permutation_service import (
    CycleNotationError,
    EmptyBitradeError,
    Permutation,
    TauRep,
    TConditionError,
    beta_maps,
    bitrade_from_tau,
    check_t_conditions,
    cycle_label_text,
    is_primary,
    orbits,
    parse_permutation,
    rename_cycle_labels,
    restrict,
    tau_from_text,
    tau_representation,
    tau_to_text,
)

from support import corpus, square_differences

EXAMPLE2_TAU = (
    "(1:1:1,1:4:2,1:2:3)(2:1:3,2:3:4,2:2:2)(3:2:4,3:4:1,3:3:3)(4:1:2,4:4:4,4:3:1)\n"
    "(1:1:1,2:1:3,4:1:2)(1:2:3,2:2:2,3:2:4)(1:4:2,3:4:1,4:4:4)(2:3:4,3:3:3,4:3:1)\n"
    "(1:1:1,4:3:1,3:4:1)(1:2:3,3:3:3,2:1:3)(1:4:2,4:1:2,2:2:2)(2:3:4,4:4:4,3:2:4)\n"
)


def roundtrip(b: Bitrade) -> Bitrade:
    t = tau_representation(b)
    return rename_cycle_labels(bitrade_from_tau(t), t)


class PermutationTest(unittest.TestCase):
    def test_products_act_on_the_right(self):
        sigma = Permutation.from_cycles([[1, 2]])
        tau = Permutation.from_cycles([[2, 3]])
        self.assertEqual(3, (sigma * tau).image(1))
        self.assertEqual(Permutation.from_cycles([[1, 3, 2]]), sigma * tau)

    def test_cycles_are_canonical(self):
        perm = Permutation.from_cycles([[5, 4], [3, 1, 2], [7]])
        self.assertEqual(((1, 2, 3), (4, 5)), perm.cycles)
        self.assertEqual("(1,2,3)(4,5)", str(perm))
        self.assertEqual((3, 2), perm.cycle_type())
        self.assertEqual((7,), perm.cycle_of(7))

    def test_inverse_and_powers(self):
        perm = Permutation.from_cycles([[1, 2, 3]])
        self.assertTrue((perm * perm.inverse()).is_identity)
        self.assertTrue((perm ** 3).is_identity)
        self.assertEqual(perm.inverse(), perm ** -1)
        self.assertEqual("()", str(Permutation.identity()))

    def test_overlapping_cycles_are_rejected(self):
        with self.assertRaises(ValueError):
            Permutation.from_cycles([[1, 2], [2, 3]])

    def test_parse_accepts_a_name_prefix(self):
        self.assertEqual(Permutation.from_cycles([["a", "b"], ["c", "d"]]), parse_permutation("tau1 = (a,b)(c, d)"))
        with self.assertRaises(CycleNotationError):
            parse_permutation("(a,b) junk")


class TauRepresentationTest(unittest.TestCase):
    def test_beta_maps_change_one_coordinate(self):
        b = example2()
        beta = beta_maps(b)
        source = Entry.of(1, 1, 3)
        self.assertEqual([Entry.of(2, 1, 3), Entry.of(1, 2, 3), Entry.of(1, 1, 1)], [beta[axis][source] for axis in range(3)])
        for axis in range(3):
            self.assertEqual(b.t_dia.entries, set(beta[axis].values()))
            self.assertEqual(source, beta.inverse(axis)[beta[axis][source]])

    def test_reference_tau_permutations(self):
        for name, b in (("intercalate", intercalate()), ("example2", example2())):
            expected = TauRep.from_cycles(*reference_tau_cycles(name))
            self.assertEqual(expected, tau_representation(b), name)

    def test_example2_cycle_notation(self):
        self.assertEqual(EXAMPLE2_TAU, tau_to_text(tau_representation(example2())))

    def test_text_codec_round_trip(self):
        t = tau_representation(example2())
        self.assertEqual(t, tau_from_text(tau_to_text(t)))

    def test_text_codec_needs_three_lines(self):
        with self.assertRaises(CycleNotationError):
            tau_from_text("(a,b)\n(a,b)\n")

    def test_empty_bitrade_has_no_tau_representation(self):
        with self.assertRaises(EmptyBitradeError):
            tau_representation(Bitrade.empty())

    def test_reference_bitrades_satisfy_every_condition(self):
        for b in (intercalate(), example2(), cyclic_shift_bitrade(3)):
            self.assertEqual([], tau_representation(b).t_status.failing())

    def test_union_fails_only_transitivity(self):
        t = tau_representation(disjoint_union(example2(), intercalate()))
        self.assertEqual(["T4"], check_t_conditions(t).failing())
        self.assertEqual(2, len(orbits(t)))
        self.assertEqual(12, len(restrict(t, orbits(t)[0]).omega))

    def test_primary(self):
        self.assertTrue(is_primary(example2()))
        self.assertFalse(is_primary(disjoint_union(example2(), intercalate())))
        with self.assertRaises(EmptyBitradeError):
            is_primary(Bitrade.empty())


class BitradeFromTauTest(unittest.TestCase):
    def test_cycle_labels(self):
        u = bitrade_from_tau(tau_representation(intercalate()))
        self.assertEqual(4, len(u))
        self.assertEqual({"(0:0:0,0:1:1)", "(1:0:1,1:1:0)"}, {label.value for label in u.t_dia.rows})

    def test_reference_round_trips(self):
        for b in (intercalate(), example2(), cyclic_shift_bitrade(4)):
            self.assertEqual(b, roundtrip(b))

    def test_abstract_permutations(self):
        t = TauRep.from_cycles([["a", "b"], ["c", "d"]], [["a", "c"], ["b", "d"]], [["a", "d"], ["b", "c"]])
        u = bitrade_from_tau(t)
        self.assertEqual(4, len(u))
        self.assertEqual([], tau_representation(u).t_status.failing())

    def test_fixed_points_are_rejected(self):
        t = TauRep.from_cycles([["a", "b"]], [["a", "b"]], [])
        with self.assertRaises(TConditionError) as caught:
            bitrade_from_tau(t)
        self.assertIn("T3", caught.exception.failing)

    def test_order_three_corpus_round_trips(self):
        for b in corpus(3):
            status = tau_representation(b).t_status
            self.assertTrue(status.t1 and status.t2 and status.t3)
            self.assertEqual(b, roundtrip(b))

    def test_order_four_corpus_round_trips(self):
        for b in corpus(4):
            status = tau_representation(b).t_status
            self.assertTrue(status.t1 and status.t2 and status.t3)
            self.assertEqual(b, roundtrip(b))

    @settings(max_examples=40, deadline=None)
    @given(square_differences())
    def test_random_differences_round_trip(self, b):
        self.assertEqual(b, roundtrip(b))

    @settings(max_examples=40, deadline=None)
    @given(square_differences())
    def test_cycle_counts_are_line_counts(self, b):
        t = tau_representation(b)
        lines = (b.t_dia.rows, b.t_dia.cols, b.t_dia.symbols)
        for perm, labels in zip(t.tau, lines):
            # a line of T⋄ may split into several cycles
            self.assertGreaterEqual(len(perm.cycles), len(labels))

        u = bitrade_from_tau(t)
        t_u = tau_representation(u)
        self.assertEqual(len(u.t_dia.rows), len(t_u.tau[0].cycles))
        self.assertEqual(len(u.t_dia.cols), len(t_u.tau[1].cycles))
        self.assertEqual(len(u.t_dia.symbols), len(t_u.tau[2].cycles))
        self.assertEqual([len(perm.cycles) for perm in t.tau], [len(perm.cycles) for perm in t_u.tau])

    def test_reference_cycle_counts_are_line_counts(self):
        for b in (intercalate(), example2(), cyclic_shift_bitrade(5)):
            t = tau_representation(b)
            self.assertEqual(
                [len(b.t_dia.rows), len(b.t_dia.cols), len(b.t_dia.symbols)],
                [len(perm.cycles) for perm in t.tau],
            )

    def test_a_line_split_into_two_cycles(self):
        n = 4
        first = PartialLatinSquare.of((i, j, (i + j) % n) for i in range(n) for j in range(n))
        swap = {0: 1, 1: 0, 2: 3, 3: 2}
        second = PartialLatinSquare.of((i, j, swap[(i + j) % n]) for i in range(n) for j in range(n))
        t = tau_representation(bitrade_from_squares(first, second))
        self.assertEqual(8, len(t.tau[0].cycles))
        self.assertEqual(4, len(bitrade_from_squares(first, second).t_dia.rows))

    @settings(max_examples=40, deadline=None)
    @given(square_differences())
    def test_permutations_survive_the_construction_up_to_renaming(self, b):
        t = tau_representation(b)
        u = tau_representation(bitrade_from_tau(t))

        def renamed(x):
            return Entry.of(*(cycle_label_text(perm.cycle_of(x)) for perm in t.tau))

        self.assertEqual({renamed(x) for x in t.omega}, set(u.omega))
        for perm, image in zip(t.tau, u.tau):
            for x in t.omega:
                self.assertEqual(renamed(perm.image(x)), image.image(renamed(x)))


if __name__ == "__main__":
    unittest.main()
