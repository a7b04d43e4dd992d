"""Hypermap embedding of a tau representation, its canonical triangulation and genus."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Generic, List, NamedTuple, Tuple

import networkx as nx

from ..models import BitradeError
from .permutation_service import D, Permutation, TauRep, TConditionError, cycle_label_text, orbits, restrict

logger = logging.getLogger(__name__)

BLACK, WHITE, STAR = "black", "white", "star"
COLORS = (BLACK, WHITE, STAR)

# Side styles of the canonical triangulation.
SOLID, DOTTED, DASHED = "solid", "dotted", "dashed"


class GenusError(BitradeError, ArithmeticError):
    """Raised when the genus formula has no nonnegative integer solution."""


class Vertex(NamedTuple):
    color: str
    index: int

    @property
    def name(self) -> str:
        return f"{self.color[0]}{self.index}"


@dataclass(frozen=True)
class Hypermap(Generic[D]):
    """
    The bipartite graph of Walsh's construction: black vertices are the cycles
    of σ, white vertices the cycles of α, and each dart keys one edge. The
    rotation at a vertex is its cycle, read anticlockwise.
    """

    tau: TauRep[D]
    black_vertices: Tuple[Tuple[D, ...], ...]
    white_vertices: Tuple[Tuple[D, ...], ...]
    edges: Dict[D, Tuple[Vertex, Vertex]]
    rotation: Dict[Vertex, Tuple[D, ...]]

    @property
    def graph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        for index, cycle in enumerate(self.black_vertices):
            graph.add_node(Vertex(BLACK, index), cycle=cycle)
        for index, cycle in enumerate(self.white_vertices):
            graph.add_node(Vertex(WHITE, index), cycle=cycle)
        for dart in sorted(self.edges):
            black, white = self.edges[dart]
            graph.add_edge(black, white, key=dart)
        return graph

    def next_around(self, vertex: Vertex, dart: D) -> D:
        """The next dart anticlockwise around a vertex."""
        darts = self.rotation[vertex]
        return darts[(darts.index(dart) + 1) % len(darts)]


@dataclass(frozen=True)
class Triangle:
    black: Vertex
    white: Vertex
    star: Vertex
    shaded: bool


@dataclass(frozen=True)
class Triangulation(Generic[D]):
    """
    Combinatorial canonical triangulation. Shaded triangles are keyed by dart.
    Unshaded triangles are keyed by their (row, column, symbol) cycle-index
    triple, the T⊗ triple that the tau-to-bitrade construction assigns them.
    """

    shaded: Dict[D, Triangle]
    unshaded: Dict[Tuple[int, int, int], Triangle]
    adjacency: Tuple[Tuple[D, Tuple[int, int, int], str], ...]

    def neighbours_of_unshaded(self, key: Tuple[int, int, int]) -> List[Tuple[D, str]]:
        return sorted((dart, side) for dart, other, side in self.adjacency if other == key)


@dataclass(frozen=True)
class GenusReport:
    z_sigma: int
    z_alpha: int
    z_phi: int
    omega_size: int
    euler_rhs: int
    genus: int
    surface_name: str

    @property
    def geometry(self) -> str:
        """Geometry of the universal cover tessellation."""
        return {0: "spherical", 1: "euclidean"}.get(self.genus, "hyperbolic")

    def to_dict(self) -> Dict[str, object]:
        return {
            "z_sigma": self.z_sigma,
            "z_alpha": self.z_alpha,
            "z_phi": self.z_phi,
            "omega_size": self.omega_size,
            "euler_rhs": self.euler_rhs,
            "genus": self.genus,
            "surface_name": self.surface_name,
            "kind": surface_kind(self.euler_rhs),
            "geometry": self.geometry,
        }


def combinatorial_hypermap(sigma: Permutation[D], alpha: Permutation[D]) -> TauRep[D]:
    """Complete [σ, α] with φ = (σα)⁻¹ so that σαφ = 1."""
    return TauRep((sigma, alpha, (sigma * alpha).inverse()))


def hypermap_from_tau(t: TauRep[D]) -> Hypermap[D]:
    """σ = τ₁, α = τ₂, φ = τ₃; the tau representation must satisfy T1-T4."""
    failing = t.t_status.failing()
    if failing:
        raise TConditionError(failing, f"Not a connected hypermap; failing condition(s): {', '.join(failing)}")

    sigma, alpha, _ = t.tau
    black_of = sigma.cycle_index()
    white_of = alpha.cycle_index()
    edges = {dart: (Vertex(BLACK, black_of[dart]), Vertex(WHITE, white_of[dart])) for dart in t.omega}
    rotation: Dict[Vertex, Tuple[D, ...]] = {}
    for index, cycle in enumerate(sigma.cycles):
        rotation[Vertex(BLACK, index)] = cycle
    for index, cycle in enumerate(alpha.cycles):
        rotation[Vertex(WHITE, index)] = cycle
    return Hypermap(t, sigma.cycles, alpha.cycles, edges, rotation)


def faces(t: TauRep[D]) -> List[Tuple[D, ...]]:
    """The cycles of φ = τ₃; each is a face holding one star vertex."""
    return list(t.tau[2].cycles)


def surface_name(genus: int) -> str:
    return {0: "sphere", 1: "torus"}.get(genus, f"genus-{genus}")


def surface_kind(euler_rhs: int) -> str:
    """Sphere for an Euler characteristic of 2, torus for 0, hyperbolic below."""
    if euler_rhs % 2 or euler_rhs > 2:
        raise GenusError(f"Euler characteristic {euler_rhs} does not belong to an orientable surface.")
    return {2: "sphere", 0: "torus"}.get(euler_rhs, "hyperbolic")


def genus(t: TauRep[D]) -> GenusReport:
    """Solve z(σ) + z(α) + z(φ) − |Ω| = 2 − 2g for a connected tau representation."""
    if not t.t_status.t4:
        raise TConditionError(["T4"], "Genus is defined per orbit; use genus_by_orbit for disconnected input.")

    z = [len(perm.cycles) for perm in t.tau]
    omega_size = len(t.omega)
    euler_rhs = sum(z) - omega_size
    if euler_rhs % 2 or euler_rhs > 2:
        raise GenusError(f"z(σ)+z(α)+z(φ)−|Ω| = {euler_rhs} is not of the form 2 − 2g.")
    g = (2 - euler_rhs) // 2
    return GenusReport(z[0], z[1], z[2], omega_size, euler_rhs, g, surface_name(g))


def genus_by_orbit(t: TauRep[D]) -> List[GenusReport]:
    return [genus(restrict(t, orbit)) for orbit in orbits(t)]


def canonical_triangulation(h: Hypermap[D]) -> Triangulation[D]:
    """
    One shaded triangle per dart x with vertices (τ₁-cycle, τ₂-cycle, τ₃-cycle) of x.
    The unshaded triangle U(y) = (τ₁-cycle of y, τ₂-cycle of yτ₁, τ₃-cycle of yτ₁τ₂)
    lies across the dotted side of y, the solid side of yτ₁ and the dashed side of yτ₁τ₂.
    """
    tau1, tau2, tau3 = h.tau.tau
    index = [perm.cycle_index() for perm in h.tau.tau]

    shaded = {
        x: Triangle(Vertex(BLACK, index[0][x]), Vertex(WHITE, index[1][x]), Vertex(STAR, index[2][x]), True)
        for x in h.tau.omega
    }

    unshaded: Dict[Tuple[int, int, int], Triangle] = {}
    adjacency = []
    for y in sorted(h.tau.omega):
        y1 = tau1.image(y)
        y2 = tau2.image(y1)
        key = (index[0][y], index[1][y1], index[2][y2])
        unshaded[key] = Triangle(Vertex(BLACK, key[0]), Vertex(WHITE, key[1]), Vertex(STAR, key[2]), False)
        adjacency.extend([(y, key, DOTTED), (y1, key, SOLID), (y2, key, DASHED)])

    if len(unshaded) != len(shaded):
        raise BitradeError("Unshaded triangles collided; the input violates T2.")
    logger.debug("Canonical triangulation with %d shaded and %d unshaded triangles", len(shaded), len(unshaded))
    return Triangulation(shaded, unshaded, tuple(sorted(adjacency, key=lambda item: (item[0], item[2]))))


def rotate_shaded(h: Hypermap[D], dart: D, color: str) -> D:
    """Rotate a shaded triangle anticlockwise about its black, white or star vertex."""
    perm = h.tau.tau[COLORS.index(color)]
    return perm.image(dart)


def _dot_string(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hypermap_to_dot(h: Hypermap[D]) -> str:
    """DOT source: black vertices filled, white hollow, edges labelled by their dart."""
    lines = ["graph hypermap {", "  node [shape=circle, fontsize=10];"]
    for index, cycle in enumerate(h.black_vertices):
        label = _dot_string(cycle_label_text(cycle))
        lines.append(f"  b{index} [label={label}, style=filled, fillcolor=black, fontcolor=white];")
    for index, cycle in enumerate(h.white_vertices):
        label = _dot_string(cycle_label_text(cycle))
        lines.append(f"  w{index} [label={label}, style=solid, fillcolor=white];")
    for dart in sorted(h.edges):
        black, white = h.edges[dart]
        lines.append(f"  {black.name} -- {white.name} [label={_dot_string(str(dart))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
