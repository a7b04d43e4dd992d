"""
Drápal's tau representation of a bitrade.

Permutations act on the right: for a product στ the dart is moved by σ first
and then by τ, so x(στ) = (xσ)τ. Darts are the entries of T⋄.
"""

from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Generic,
    Hashable,
    Iterable,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
)

import networkx as nx

from ..models import Axis, Bitrade, BitradeError, Entry, Label, LabelError, PartialLatinSquare
from .latin_service import relabel

logger = logging.getLogger(__name__)

D = TypeVar("D", bound=Hashable)

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class EmptyBitradeError(BitradeError, ValueError):
    """Raised when an operation needs at least one entry."""


class TConditionError(BitradeError, ValueError):
    """Raised when permutations fail the conditions a construction requires."""

    def __init__(self, failing: Sequence[str], message: Optional[str] = None):
        self.failing = tuple(failing)
        super().__init__(message or f"Permutations fail condition(s): {', '.join(self.failing)}")


class CycleNotationError(BitradeError, ValueError):
    """Raised for malformed cycle notation."""


@dataclass(frozen=True)
class Permutation(Generic[D]):
    """
    A finite permutation stored by its moved points.

    Cycles are kept in canonical form: each rotated so its least dart comes
    first, and sorted by that dart. Fixed points never appear.
    """

    mapping: Mapping[D, D] = field(default_factory=dict)
    cycles: Tuple[Tuple[D, ...], ...] = field(init=False, compare=False)

    def __post_init__(self) -> None:
        mapping = {x: y for x, y in dict(self.mapping).items() if x != y}
        if set(mapping.values()) != set(mapping):
            raise ValueError("Mapping is not a permutation of its moved points.")
        object.__setattr__(self, "mapping", mapping)
        object.__setattr__(self, "cycles", _canonical_cycles(mapping))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.mapping == other.mapping

    def __hash__(self) -> int:
        return hash(self.cycles)

    @classmethod
    def identity(cls) -> "Permutation[D]":
        return cls({})

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[D]]) -> "Permutation[D]":
        mapping: Dict[D, D] = {}
        for cycle in cycles:
            cycle = list(cycle)
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"Cycle repeats a point: {cycle}")
            if len(cycle) < 2:
                continue
            for index, point in enumerate(cycle):
                if point in mapping:
                    raise ValueError(f"Cycles are not disjoint at {point}")
                mapping[point] = cycle[(index + 1) % len(cycle)]
        return cls(mapping)

    @property
    def moved(self) -> FrozenSet[D]:
        return frozenset(self.mapping)

    def image(self, x: D) -> D:
        return self.mapping.get(x, x)

    def inverse(self) -> "Permutation[D]":
        return Permutation({y: x for x, y in self.mapping.items()})

    def __mul__(self, other: "Permutation[D]") -> "Permutation[D]":
        """Right-action product: apply self, then other."""
        points = set(self.mapping) | set(other.mapping)
        return Permutation({x: other.image(self.image(x)) for x in points})

    def __pow__(self, exponent: int) -> "Permutation[D]":
        base = self if exponent >= 0 else self.inverse()
        result: Permutation[D] = Permutation.identity()
        for _ in range(abs(exponent)):
            result = result * base
        return result

    @property
    def is_identity(self) -> bool:
        return not self.mapping

    def cycle_index(self) -> Dict[D, int]:
        """Map each moved dart to the position of its cycle in canonical order."""
        return {dart: index for index, cycle in enumerate(self.cycles) for dart in cycle}

    def cycle_of(self, x: D) -> Tuple[D, ...]:
        for cycle in self.cycles:
            if x in cycle:
                return cycle
        return (x,)

    def cycle_type(self) -> Tuple[int, ...]:
        return tuple(sorted((len(cycle) for cycle in self.cycles), reverse=True))

    def format(self, dart_format: Callable[[D], str] = str) -> str:
        if not self.cycles:
            return "()"
        return "".join("(" + ",".join(dart_format(x) for x in cycle) + ")" for cycle in self.cycles)

    def __str__(self) -> str:
        return self.format()


def _canonical_cycles(mapping: Mapping[D, D]) -> Tuple[Tuple[D, ...], ...]:
    seen = set()
    cycles = []
    for start in sorted(mapping):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        x = mapping[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = mapping[x]
        cycles.append(tuple(cycle))
    return tuple(cycles)


class TConditions(NamedTuple):
    t1: bool
    t2: bool
    t3: bool
    t4: bool

    def failing(self) -> List[str]:
        return [name.upper() for name, value in self._asdict().items() if not value]

    def to_dict(self) -> Dict[str, bool]:
        return dict(self._asdict())


@dataclass(frozen=True)
class TauRep(Generic[D]):
    """Three permutations [τ₁, τ₂, τ₃] acting on Ω = Mov(τ₁) ∪ Mov(τ₂) ∪ Mov(τ₃)."""

    tau: Tuple[Permutation[D], Permutation[D], Permutation[D]]

    @classmethod
    def from_cycles(cls, *cycle_lists: Iterable[Sequence[D]]) -> "TauRep[D]":
        if len(cycle_lists) != 3:
            raise ValueError("Exactly three permutations are required.")
        return cls(tuple(Permutation.from_cycles(cycles) for cycles in cycle_lists))

    @property
    def omega(self) -> FrozenSet[D]:
        return frozenset().union(*(perm.moved for perm in self.tau))

    @cached_property
    def t_status(self) -> TConditions:
        return check_t_conditions(self)

    def __iter__(self):
        return iter(self.tau)


@dataclass(frozen=True)
class BetaTriple:
    """β₁, β₂, β₃ : T⊗ → T⋄, where βᵣ changes only coordinate r."""

    beta: Tuple[Dict[Entry, Entry], Dict[Entry, Entry], Dict[Entry, Entry]]

    def __getitem__(self, axis: int) -> Dict[Entry, Entry]:
        return self.beta[axis]

    def inverse(self, axis: int) -> Dict[Entry, Entry]:
        return {target: source for source, target in self.beta[axis].items()}


def beta_maps(b: Bitrade) -> BetaTriple:
    """For every T⊗ entry and axis r, the unique T⋄ entry agreeing on the two other coordinates."""
    maps = []
    for axis in Axis:
        others = [other for other in Axis if other != axis]
        index = {(entry.coordinate(others[0]), entry.coordinate(others[1])): entry for entry in b.t_dia.entries}
        beta: Dict[Entry, Entry] = {}
        for entry in b.t_oti.entries:
            target = index.get((entry.coordinate(others[0]), entry.coordinate(others[1])))
            if target is None or target.coordinate(axis) == entry.coordinate(axis):
                raise BitradeError(f"β{axis + 1} undefined at {entry}; the bitrade failed validation upstream.")
            beta[entry] = target
        maps.append(beta)
    return BetaTriple(tuple(maps))


def tau_representation(b: Bitrade) -> TauRep[Entry]:
    """τ₁ = β₂⁻¹β₃, τ₂ = β₃⁻¹β₁, τ₃ = β₁⁻¹β₂ as permutations of T⋄."""
    if b.is_empty:
        raise EmptyBitradeError("The empty bitrade has no tau representation.")

    beta = beta_maps(b)
    inverse = [beta.inverse(axis) for axis in Axis]
    tau = []
    for first, second in ((Axis.COLUMN, Axis.SYMBOL), (Axis.SYMBOL, Axis.ROW), (Axis.ROW, Axis.COLUMN)):
        tau.append(Permutation({x: beta[second][inverse[first][x]] for x in b.t_dia.entries}))
    rep = TauRep(tuple(tau))
    logger.debug("Tau representation over %d darts with cycle counts %s", len(b), [len(p.cycles) for p in rep.tau])
    return rep


def orbits(t: TauRep[D]) -> List[FrozenSet[D]]:
    """Orbits of ⟨τ₁, τ₂, τ₃⟩ on Ω, ordered by least dart."""
    graph = nx.Graph()
    graph.add_nodes_from(t.omega)
    for perm in t.tau:
        graph.add_edges_from(perm.mapping.items())
    components = [frozenset(component) for component in nx.connected_components(graph)]
    return sorted(components, key=min)


def check_t_conditions(t: TauRep[D]) -> TConditions:
    omega = t.omega
    tau1, tau2, tau3 = t.tau

    t1 = all(tau3.image(tau2.image(tau1.image(x))) == x for x in omega)

    indices = [perm.cycle_index() for perm in t.tau]
    t2 = True
    for i in range(3):
        for j in range(i + 1, 3):
            shared = Counter((indices[i][x], indices[j][x]) for x in omega if x in indices[i] and x in indices[j])
            if any(count > 1 for count in shared.values()):
                t2 = False

    t3 = all(perm.moved == omega for perm in t.tau)
    t4 = len(orbits(t)) == 1
    return TConditions(t1, t2, t3, t4)


def _require(t: TauRep, *names: str) -> None:
    status = t.t_status
    failing = [name for name in names if not getattr(status, name.lower())]
    if failing:
        raise TConditionError(failing)


def cycle_label_text(cycle: Sequence) -> str:
    return "(" + ",".join(str(x) for x in cycle) + ")"


def bitrade_from_tau(t: TauRep[D]) -> Bitrade:
    """
    Rows, columns and symbols are the cycles of τ₁, τ₂, τ₃. T⋄ holds the cycle
    triples sharing a dart; T⊗ holds (ρ₁, ρ₂, ρ₃) for distinct x, x', x'' with
    xρ₁ = x', x'ρ₂ = x'', x''ρ₃ = x.
    """
    _require(t, "T1", "T2", "T3")
    tau1, tau2, tau3 = t.tau
    labels: List[Dict[D, Label]] = []
    for axis, perm in zip(Axis, t.tau):
        labels.append({dart: Label(axis, cycle_label_text(cycle)) for cycle in perm.cycles for dart in cycle})

    t_dia = set()
    t_oti = set()
    for x in t.omega:
        t_dia.add(Entry(labels[0][x], labels[1][x], labels[2][x]))
        x1 = tau1.image(x)
        x2 = tau2.image(x1)
        if len({x, x1, x2}) == 3 and tau3.image(x2) == x:
            t_oti.add(Entry(labels[0][x], labels[1][x1], labels[2][x2]))
    return Bitrade.build(PartialLatinSquare(frozenset(t_dia)), PartialLatinSquare(frozenset(t_oti)))


def rename_cycle_labels(u: Bitrade, t: TauRep[Entry]) -> Bitrade:
    """
    Replace every cycle label produced by bitrade_from_tau with the label its
    darts share in the original bitrade (row for τ₁ cycles, and so on).
    """
    mapping: Dict[Label, Label] = {}
    for axis, perm in zip(Axis, t.tau):
        for cycle in perm.cycles:
            originals = {dart.coordinate(axis) for dart in cycle}
            if len(originals) != 1:
                raise LabelError(f"Darts of cycle {cycle_label_text(cycle)} disagree on their {axis.noun}.")
            mapping[Label(axis, cycle_label_text(cycle))] = originals.pop()
    return relabel(u, mapping)


def restrict(t: TauRep[D], darts: Iterable[D]) -> TauRep[D]:
    """Restriction to a union of orbits."""
    keep = frozenset(darts)
    return TauRep(tuple(
        Permutation({x: y for x, y in perm.mapping.items() if x in keep}) for perm in t.tau
    ))


def is_primary(b: Bitrade) -> bool:
    if b.is_empty:
        raise EmptyBitradeError("Primality is undefined for the empty bitrade.")
    return len(orbits(tau_representation(b))) == 1


def tau_to_text(t: TauRep, dart_format: Callable = str) -> str:
    """One permutation per line in cycle notation; darts rendered as r:c:s."""
    return "\n".join(perm.format(dart_format) for perm in t.tau) + "\n"


def parse_permutation(line: str) -> Permutation:
    body = line.strip()
    if "=" in body:
        body = body.split("=", 1)[1].strip()
    leftover = _CYCLE_RE.sub("", body).strip()
    if leftover:
        raise CycleNotationError(f"Unexpected text outside cycles: {leftover!r}")
    cycles = []
    for group in _CYCLE_RE.findall(body):
        tokens = [token.strip() for token in group.split(",") if token.strip()]
        cycles.append(tokens)
    return Permutation.from_cycles(cycles)


def tau_from_text(text: str) -> TauRep:
    """
    Parse three lines of cycle notation. Darts written as r:c:s become
    entries; any other tokens are kept as plain strings.
    """
    lines = [line.split("#", 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if len(lines) != 3:
        raise CycleNotationError(f"Expected three permutation lines, found {len(lines)}.")
    try:
        perms = [parse_permutation(line) for line in lines]
    except ValueError as exc:
        raise CycleNotationError(str(exc)) from exc

    tokens = set().union(*(perm.moved for perm in perms))
    if tokens and all(token.count(":") == 2 for token in tokens):
        try:
            convert = {token: Entry.parse(token) for token in tokens}
        except LabelError as exc:
            raise CycleNotationError(str(exc)) from exc
        perms = [Permutation({convert[x]: convert[y] for x, y in perm.mapping.items()}) for perm in perms]
    return TauRep(tuple(perms))
