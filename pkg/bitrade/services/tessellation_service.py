"""
Lift a 3-homogeneous bitrade to its labelled tessellation of the Euclidean plane.

The base shaded triangle sits directly above the black vertex at the origin,
with the x axis running through a star vertex. Breadth-first search applies
the rotations ρ₁, ρ₂, ρ₃ (2π/3 anticlockwise about a triangle's black, white
or star vertex) and their inverses, and labels each reached triangle through
θ: ρᵢ ↦ τᵢ. Positions are exact; floats only appear when drawing.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from ..models import Bitrade, BitradeError, Entry
from ..utils.lattice import (
    BLACK,
    ORIGIN,
    STAR,
    WHITE,
    Point,
    ShadedTriangle,
    centroid_key,
    from_black_coords,
    rotate_triangle,
    sector_of,
    shaded_at,
    unshaded_across_solid,
    within_radius,
)
from .latin_service import is_k_homogeneous
from .permutation_service import Permutation, TauRep, tau_representation

logger = logging.getLogger(__name__)

DEFAULT_GROUP_CAP = 100_000

Word = Sequence[int]


class TessellationError(BitradeError, ValueError):
    """Raised when a bitrade cannot be lifted to the plane."""


class LabelConflict(TessellationError):
    """Two paths reached the same triangle or vertex with different labels."""

    def __init__(self, conflicts: Sequence[Tuple[Point, str, str]]):
        self.conflicts = tuple(conflicts)
        first = self.conflicts[0]
        super().__init__(f"{len(self.conflicts)} labelling conflict(s); first at {first[0]}: {first[1]} vs {first[2]}")


@dataclass(frozen=True)
class PlanarTriangle:
    """A unit triangle of the tessellation; vertices ordered black, white, star."""

    label: Entry
    shaded: bool
    vertices: ShadedTriangle

    @property
    def colors(self) -> Tuple[str, str, str]:
        return (BLACK, WHITE, STAR)

    @property
    def key(self) -> Point:
        return centroid_key(self.vertices)

    @property
    def label_anchor(self) -> Tuple[float, float]:
        xs, ys = zip(*(v.xy() for v in self.vertices))
        return (sum(xs) / 3.0, sum(ys) / 3.0)

    @property
    def sector(self) -> Optional[int]:
        """0 above, 1 lower-left, 2 lower-right of the black vertex; None for unshaded triangles."""
        return sector_of(self.vertices) if self.shaded else None

    def is_anticlockwise(self) -> bool:
        (x0, y0), (x1, y1), (x2, y2) = (v.xy() for v in self.vertices)
        return (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0) > 0


@dataclass(frozen=True)
class TessellationDrawing:
    triangles: Tuple[PlanarTriangle, ...]
    radius: float
    base: Optional[Entry]
    vertex_labels: Dict[Point, str] = field(default_factory=dict)
    revisits: int = 0
    lattice: Optional[Tuple[Point, Point]] = None
    axes: str = "origin at a black vertex; +x through a star vertex; +y bisects the base shaded triangle"

    @property
    def shaded(self) -> List[PlanarTriangle]:
        return [t for t in self.triangles if t.shaded]

    @property
    def unshaded(self) -> List[PlanarTriangle]:
        return [t for t in self.triangles if not t.shaded]

    def by_key(self) -> Dict[Point, PlanarTriangle]:
        return {t.key: t for t in self.triangles}


def _rho(triangle: ShadedTriangle, generator: int, inverse: bool = False) -> ShadedTriangle:
    return rotate_triangle(triangle, generator - 1, 2 if inverse else 1)


def triangle_group_action(triangle: ShadedTriangle, word: Word) -> ShadedTriangle:
    """Apply a word in ρ₁, ρ₂, ρ₃, left to right; -i stands for ρᵢ⁻¹."""
    for letter in word:
        triangle = _rho(triangle, abs(letter), letter < 0)
    return triangle


def theta(t: TauRep, word: Word) -> Permutation:
    """The image of a word under θ: ρᵢ ↦ τᵢ."""
    result: Permutation = Permutation.identity()
    for letter in word:
        perm = t.tau[abs(letter) - 1]
        result = result * (perm.inverse() if letter < 0 else perm)
    return result


def lift_to_plane(
    b: Bitrade,
    base: Entry,
    radius: Union[float, Fraction],
    lattice: Optional[Tuple[Tuple[int, int], Tuple[int, int]]] = None,
    strict: bool = True,
) -> TessellationDrawing:
    """
    Label every shaded triangle whose centroid lies within `radius` of the
    origin, plus the unshaded triangle across each one's solid side. The base
    triangle is always drawn. `lattice` (two vectors in the black-vertex basis)
    only adds the fundamental-domain outline.
    """
    if not is_k_homogeneous(b, 3):
        raise TessellationError("Only 3-homogeneous bitrades tessellate the Euclidean plane.")
    if base not in b.t_dia.entries:
        raise TessellationError(f"Base {base} is not an entry of T⋄.")
    if radius < 0:
        raise TessellationError("Radius must be nonnegative.")

    limit = Fraction(radius)
    t = tau_representation(b)
    forward = [perm.mapping for perm in t.tau]
    backward = [perm.inverse().mapping for perm in t.tau]

    start = shaded_at(ORIGIN, 0)
    labels: Dict[Point, Tuple[ShadedTriangle, Entry]] = {centroid_key(start): (start, base)}
    conflicts: List[Tuple[Point, str, str]] = []
    revisits = 0
    queue = deque([(start, base)])
    while queue:
        triangle, x = queue.popleft()
        for generator in (1, 2, 3):
            for inverse, images in ((False, forward), (True, backward)):
                neighbour = _rho(triangle, generator, inverse)
                if not within_radius(neighbour, limit):
                    continue
                y = images[generator - 1][x]
                key = centroid_key(neighbour)
                if key in labels:
                    revisits += 1
                    if labels[key][1] != y:
                        conflicts.append((key, str(labels[key][1]), str(y)))
                    continue
                labels[key] = (neighbour, y)
                queue.append((neighbour, y))

    oti_by_cell = {(e.row, e.col): e for e in b.t_oti.entries}
    vertex_labels: Dict[Point, str] = {}

    def claim(point: Point, text: str) -> None:
        known = vertex_labels.setdefault(point, text)
        if known != text:
            conflicts.append((point, known, text))

    triangles: List[PlanarTriangle] = []
    for key in sorted(labels):
        triangle, x = labels[key]
        triangles.append(PlanarTriangle(x, True, triangle))
        for point, value in zip(triangle, x.values()):
            claim(point, value)

    for key in sorted(labels):
        triangle, x = labels[key]
        across = unshaded_across_solid(triangle)
        if not within_radius(across, limit):
            continue
        partner = oti_by_cell[(x.row, x.col)]
        triangles.append(PlanarTriangle(partner, False, across))
        claim(across[2], partner.sym.value)

    if conflicts and strict:
        raise LabelConflict(conflicts)
    logger.debug("Lifted %d shaded triangles (%d revisits) within radius %s", len(labels), revisits, radius)

    outline = None
    if lattice is not None:
        outline = (from_black_coords(*lattice[0]), from_black_coords(*lattice[1]))
    return TessellationDrawing(tuple(triangles), float(radius), base, vertex_labels, revisits, outline)


def translation_periods(d: TessellationDrawing) -> Set[Point]:
    """Nonzero translations carrying some shaded triangle onto another with the same label."""
    by_label: Dict[Entry, List[Point]] = {}
    for triangle in d.shaded:
        by_label.setdefault(triangle.label, []).append(triangle.vertices[0])
    periods = set()
    for blacks in by_label.values():
        for first in blacks:
            for second in blacks:
                if first != second:
                    periods.add(second - first)
    return periods


def cartographic_order(t: TauRep, cap: int = DEFAULT_GROUP_CAP) -> int:
    """Order of G = ⟨τ₁, τ₂, τ₃⟩ by closure; raises when more than `cap` elements appear."""
    identity: Permutation = Permutation.identity()
    seen = {identity}
    frontier: List[Permutation] = [identity]
    while frontier:
        following = []
        for element in frontier:
            for perm in t.tau:
                product = element * perm
                if product not in seen:
                    seen.add(product)
                    following.append(product)
                    if len(seen) > cap:
                        raise TessellationError(f"Cartographic group exceeds {cap} elements.")
        frontier = following
    return len(seen)


def sector_classes(d: TessellationDrawing) -> Dict[int, Set[Entry]]:
    """Labels of shaded triangles grouped by their position around the black vertex."""
    grouped: Dict[int, Set[Entry]] = {0: set(), 1: set(), 2: set()}
    for triangle in d.shaded:
        grouped[triangle.sector].add(triangle.label)
    return grouped


def words_to(d: TessellationDrawing, targets: Iterable[Point]) -> Dict[Point, Tuple[int, ...]]:
    """Shortest ρ-words from the base triangle to each target centroid key, within the drawing."""
    inside = {t.key for t in d.shaded}
    start = shaded_at(ORIGIN, 0)
    paths: Dict[Point, Tuple[int, ...]] = {centroid_key(start): ()}
    queue = deque([start])
    wanted = set(targets)
    while queue and not wanted <= set(paths):
        triangle = queue.popleft()
        for letter in (1, -1, 2, -2, 3, -3):
            neighbour = _rho(triangle, abs(letter), letter < 0)
            key = centroid_key(neighbour)
            if key in inside and key not in paths:
                paths[key] = paths[centroid_key(triangle)] + (letter,)
                queue.append(neighbour)
    return {key: paths[key] for key in wanted if key in paths}
