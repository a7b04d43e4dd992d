"""Plane lifts of 3-homogeneous bitrades and their SVG rendering."""

import math
import unittest
from unittest.mock import patch

from bitrade.models import Entry
from bitrade.services.generator_service import example2, intercalate, reference_partition
from bitrade.services.partition_service import three_transversal_partition
from bitrade.services.permutation_service import TauRep, tau_representation
from bitrade.services.tessellation_service import (
    LabelConflict,
    TessellationDrawing,
    TessellationError,
    cartographic_order,
    lift_to_plane,
    sector_classes,
    theta,
    translation_periods,
    triangle_group_action,
    words_to,
)
from bitrade.utils.lattice import (
    BLACK,
    ORIGIN,
    STAR,
    WHITE,
    Point,
    centroid_key,
    color_of,
    from_black_coords,
    rotate,
    shaded_at,
    to_black_coords,
)
from bitrade.utils.svg import count_elements, polygons, render_svg

BASE = Entry.of(1, 1, 1)


def side_lengths(vertices):
    points = [v.xy() for v in vertices]
    return [math.dist(points[i], points[(i + 1) % 3]) for i in range(3)]


class LatticeTest(unittest.TestCase):
    def test_three_turns_are_the_identity(self):
        v = Point(5, 3)
        self.assertEqual(Point(-7, 1), rotate(v))
        self.assertEqual(v, rotate(v, 3))

    def test_vertex_colours(self):
        self.assertEqual(BLACK, color_of(ORIGIN))
        self.assertEqual(WHITE, color_of(Point(1, 1)))
        self.assertEqual(STAR, color_of(Point(-1, 1)))
        self.assertEqual(STAR, color_of(Point(2, 0)))
        with self.assertRaises(ValueError):
            color_of(Point(1, 0))

    def test_black_coordinates(self):
        for m, n in ((1, 0), (0, 1), (2, -3), (-4, 5)):
            v = from_black_coords(m, n)
            self.assertEqual(BLACK, color_of(v))
            self.assertEqual((m, n), to_black_coords(v))

    def test_relation_of_the_triangle_group(self):
        base = shaded_at(ORIGIN, 0)
        self.assertEqual(base, triangle_group_action(base, (1, 2, 3)))
        self.assertEqual(base, triangle_group_action(base, (1, 1, 1)))
        self.assertEqual(base, triangle_group_action(base, (2, -2)))
        self.assertEqual(shaded_at(ORIGIN, 1), triangle_group_action(base, (1,)))


class LiftToPlaneTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.drawing = lift_to_plane(example2(), BASE, 6)

    def test_radius_zero_draws_only_the_base(self):
        d = lift_to_plane(example2(), BASE, 0)
        self.assertEqual(1, len(d.triangles))
        self.assertEqual(BASE, d.triangles[0].label)
        self.assertEqual(0, d.triangles[0].sector)

    def test_rejects_bitrades_that_do_not_tile_the_plane(self):
        with self.assertRaises(TessellationError):
            lift_to_plane(intercalate(), Entry.of(0, 0, 0), 2)
        with self.assertRaises(TessellationError):
            lift_to_plane(example2(), Entry.of(1, 1, 3), 2)
        with self.assertRaises(TessellationError):
            lift_to_plane(example2(), BASE, -1)

    def test_triangles_are_unit_and_oriented_by_shading(self):
        for triangle in self.drawing.triangles:
            for length in side_lengths(triangle.vertices):
                self.assertAlmostEqual(1.0, length)
            self.assertEqual(triangle.shaded, triangle.is_anticlockwise())
            self.assertEqual((BLACK, WHITE, STAR), tuple(color_of(v) for v in triangle.vertices))

    def test_triangles_around_the_origin(self):
        by_key = self.drawing.by_key()
        labels = [by_key[centroid_key(shaded_at(ORIGIN, sector))].label for sector in range(3)]
        self.assertEqual([BASE, Entry.of(1, 4, 2), Entry.of(1, 2, 3)], labels)

    def test_labels_come_from_the_bitrade(self):
        b = example2()
        for triangle in self.drawing.shaded:
            self.assertIn(triangle.label, b.t_dia.entries)
        for triangle in self.drawing.unshaded:
            self.assertIn(triangle.label, b.t_oti.entries)
        self.assertEqual(b.t_dia.entries, {t.label for t in self.drawing.shaded})

    def test_vertex_labels_agree_with_every_triangle(self):
        for triangle in self.drawing.shaded:
            for point, value in zip(triangle.vertices, triangle.label.values()):
                self.assertEqual(value, self.drawing.vertex_labels[point])

    def test_sectors_refine_the_partition(self):
        partition = three_transversal_partition(example2())
        grouped = sector_classes(self.drawing)
        for sector in range(3):
            self.assertTrue(grouped[sector])
            self.assertLessEqual(grouped[sector], partition.classes[sector])
        self.assertEqual([set(cls) for cls in reference_partition("example2")], [grouped[k] for k in range(3)])

    def test_translation_periods_lie_in_the_black_lattice(self):
        periods = translation_periods(self.drawing)
        self.assertTrue(periods)
        for period in periods:
            self.assertEqual(BLACK, color_of(period))
            to_black_coords(period)
            self.assertIn(Point(-period.p, -period.q), periods)

    def test_translation_by_a_period_preserves_every_label(self):
        def norm2(v):
            return (v.p * v.p + 3 * v.q * v.q) / 4

        periods = sorted(translation_periods(self.drawing), key=lambda v: (norm2(v), v))
        v1 = periods[0]
        v2 = next(v for v in periods if v1.p * v.q - v1.q * v.p != 0)
        diameter = math.sqrt(max(norm2(v) for v in (v1, v2, v1 + v2, v1 - v2)))

        wide = lift_to_plane(example2(), BASE, 3 * diameter)
        by_key = wide.by_key()
        checked = 0
        for triangle in wide.triangles:
            for v in (v1, v2, ORIGIN - v1, ORIGIN - v2):
                image = by_key.get(triangle.key + Point(3 * v.p, 3 * v.q))
                if image is None:
                    continue
                checked += 1
                self.assertEqual(triangle.shaded, image.shaded)
                self.assertEqual(triangle.label, image.label, (triangle.key, v))
        self.assertGreater(checked, len(wide.triangles))

    def test_words_are_labelled_through_theta(self):
        t = tau_representation(example2())
        targets = [t_.key for t_ in self.drawing.shaded[:20]]
        words = words_to(self.drawing, targets)
        self.assertEqual(set(targets), set(words))
        by_key = self.drawing.by_key()
        base = shaded_at(ORIGIN, 0)
        for key, word in words.items():
            self.assertEqual(key, centroid_key(triangle_group_action(base, word)))
            self.assertEqual(by_key[key].label, theta(t, word).image(BASE))

    def test_theta_respects_the_group_relation(self):
        t = tau_representation(example2())
        self.assertTrue(theta(t, (1, 2, 3)).is_identity)
        self.assertTrue(theta(t, (2, 2, 2)).is_identity)

    def test_inconsistent_permutations_conflict(self):
        t = tau_representation(example2())
        broken = TauRep((t.tau[0].inverse(), t.tau[1], t.tau[2]))
        with patch("bitrade.services.tessellation_service.tau_representation", return_value=broken):
            with self.assertRaises(LabelConflict) as caught:
                lift_to_plane(example2(), BASE, 2)
            self.assertTrue(caught.exception.conflicts)
            lift_to_plane(example2(), BASE, 2, strict=False)

    def test_cartographic_order(self):
        self.assertEqual(4, cartographic_order(tau_representation(intercalate())))
        self.assertEqual(0, cartographic_order(tau_representation(example2())) % 12)
        with self.assertRaises(TessellationError):
            cartographic_order(tau_representation(example2()), cap=5)


class RenderSvgTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.drawing = lift_to_plane(example2(), BASE, 2)
        cls.document = render_svg(cls.drawing)

    def test_one_polygon_per_triangle(self):
        self.assertEqual(len(self.drawing.triangles), count_elements(self.document, "polygon"))
        self.assertEqual(len(self.drawing.triangles), count_elements(self.document, "text"))
        for points in polygons(self.document):
            for i in range(3):
                self.assertAlmostEqual(1.0, math.dist(points[i], points[(i + 1) % 3]), places=3)

    def test_output_is_deterministic(self):
        self.assertEqual(self.document, render_svg(lift_to_plane(example2(), BASE, 2)))

    def test_options(self):
        bare = render_svg(self.drawing, show_labels=False, shade_color="#ff0000")
        self.assertEqual(0, count_elements(bare, "text"))
        self.assertIn(b'fill="#ff0000"', bare)
        self.assertEqual(2, count_elements(render_svg(self.drawing, show_axes=True), "line") - count_elements(bare, "line"))

    def test_empty_drawing(self):
        document = render_svg(TessellationDrawing((), 0.0, None))
        self.assertTrue(document.startswith(b"<?xml"))
        self.assertEqual(0, count_elements(document, "polygon"))

    def test_lattice_outline(self):
        d = lift_to_plane(example2(), BASE, 2, lattice=((2, 0), (0, 2)))
        self.assertEqual((from_black_coords(2, 0), from_black_coords(0, 2)), d.lattice)
        self.assertIn(b'class="domain"', render_svg(d))
        self.assertNotIn(b'class="domain"', self.document)


if __name__ == "__main__":
    unittest.main()
