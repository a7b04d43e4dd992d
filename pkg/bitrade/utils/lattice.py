"""
Exact arithmetic on the unit triangular lattice.

A point (p, q) stands for x = p/2, y = q·√3/2, so every lattice vertex has
integer coordinates with p ≡ q (mod 2) and 2π/3 rotations stay integral.
Vertices are 3-coloured black/star/white by (p − 3q)/2 mod 3; the origin is
black and (1, 0) (p = 2, q = 0) is a star vertex.
"""

from __future__ import annotations

from fractions import Fraction
from math import sqrt
from typing import NamedTuple, Tuple

SQRT3 = sqrt(3.0)

BLACK, WHITE, STAR = "black", "white", "star"
_COLOR_BY_RESIDUE = {0: BLACK, 1: STAR, 2: WHITE}


class Point(NamedTuple):
    p: int
    q: int

    def __add__(self, other: "Point") -> "Point":  # type: ignore[override]
        return Point(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.p - other.p, self.q - other.q)

    def xy(self) -> Tuple[float, float]:
        return (self.p / 2.0, self.q * SQRT3 / 2.0)


ORIGIN = Point(0, 0)
# The shaded triangle directly above the black vertex at the origin.
WHITE_ABOVE = Point(1, 1)
STAR_ABOVE = Point(-1, 1)
STAR_ON_X_AXIS = Point(2, 0)

# Black-vertex lattice basis: (3/2, √3/2) and (3/2, −√3/2).
BLACK_BASIS = (Point(3, 1), Point(3, -1))


def rotate(v: Point, turns: int = 1) -> Point:
    """Rotate about the origin by turns·2π/3 anticlockwise."""
    for _ in range(turns % 3):
        v = Point((-v.p - 3 * v.q) // 2, (v.p - v.q) // 2)
    return v


def rotate_about(v: Point, centre: Point, turns: int = 1) -> Point:
    return centre + rotate(v - centre, turns)


def color_of(v: Point) -> str:
    if (v.p - v.q) % 2:
        raise ValueError(f"{v} is not a lattice vertex")
    return _COLOR_BY_RESIDUE[((v.p - 3 * v.q) // 2) % 3]


def from_black_coords(m: int, n: int) -> Point:
    return Point(m * BLACK_BASIS[0].p + n * BLACK_BASIS[1].p, m * BLACK_BASIS[0].q + n * BLACK_BASIS[1].q)


def to_black_coords(v: Point) -> Tuple[int, int]:
    """Inverse of from_black_coords for vectors of the black lattice."""
    if v.p % 3:
        raise ValueError(f"{v} is not in the black-vertex lattice")
    third = v.p // 3
    if (third + v.q) % 2:
        raise ValueError(f"{v} is not in the black-vertex lattice")
    return ((third + v.q) // 2, (third - v.q) // 2)


def from_vertex_coords(i: int, j: int) -> Point:
    """i·(1, 0) + j·(1/2, √3/2)."""
    return Point(2 * i + j, j)


ShadedTriangle = Tuple[Point, Point, Point]


def shaded_at(black: Point, sector: int) -> ShadedTriangle:
    """Sector 0 is directly above the black vertex, 1 lower-left, 2 lower-right."""
    return (black, black + rotate(WHITE_ABOVE, sector), black + rotate(STAR_ABOVE, sector))


def sector_of(triangle: ShadedTriangle) -> int:
    offset = triangle[1] - triangle[0]
    for sector in range(3):
        if rotate(WHITE_ABOVE, sector) == offset:
            return sector
    raise ValueError(f"{triangle} is not a shaded triangle")


def rotate_triangle(triangle: ShadedTriangle, pivot: int, turns: int = 1) -> ShadedTriangle:
    """Rotate a shaded triangle about its own black (0), white (1) or star (2) vertex."""
    centre = triangle[pivot]
    return tuple(rotate_about(v, centre, turns) for v in triangle)  # type: ignore[return-value]


def unshaded_across_solid(triangle: ShadedTriangle) -> ShadedTriangle:
    """The unshaded triangle sharing the black–white side; vertices still ordered black, white, star."""
    black, white, star = triangle
    return (black, white, black + white - star)


def centroid_key(triangle: ShadedTriangle) -> Point:
    """Three times the centroid; exact and unique per triangle."""
    return Point(sum(v.p for v in triangle), sum(v.q for v in triangle))


def within_radius(triangle: ShadedTriangle, radius: Fraction) -> bool:
    key = centroid_key(triangle)
    # centroid = (Σp/6, Σq·√3/6)
    return key.p * key.p + 3 * key.q * key.q <= 36 * radius * radius
