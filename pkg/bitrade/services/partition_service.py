"""
Partition of a 3-homogeneous bitrade into three transversals.

Every shaded triangle of the plane tessellation sits above, to the lower-left
or to the lower-right of its black vertex. Each of ρ₁, ρ₂, ρ₃ moves a triangle
one position further round that cycle, so labelling darts by position means
label(xτᵢ) = label(x) + 1 (mod 3) for every generator. The classes are the
label preimages.
"""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..helpers import ParseError
from ..models import Bitrade, BitradeError, Entry, ValidationReport, Violation
from .latin_service import homogeneity_witness, is_k_homogeneous, is_transversal
from .permutation_service import orbits, tau_representation

logger = logging.getLogger(__name__)

NOT_3_HOMOGENEOUS = "not_3_homogeneous"
INCONSISTENT_LABELING = "inconsistent_labeling"
DEFAULT_ORACLE_CAP = 18


class PartitionFailure(BitradeError):
    """The partition could not be built; `kind` names why and `witness` shows where."""

    def __init__(self, kind: str, witness: Any, message: str):
        self.kind = kind
        self.witness = witness
        super().__init__(message)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "witness": [str(item) for item in self.witness], "message": str(self)}


class OracleCapExceeded(BitradeError, ValueError):
    """Raised when brute force is asked to search a bitrade larger than its cap."""


@dataclass(frozen=True)
class TransversalPartition:
    classes: Tuple[FrozenSet[Entry], FrozenSet[Entry], FrozenSet[Entry]]
    labeling: Dict[Entry, int]

    @classmethod
    def from_labeling(cls, labeling: Dict[Entry, int]) -> "TransversalPartition":
        classes = tuple(frozenset(x for x, label in labeling.items() if label == index) for index in range(3))
        return cls(classes, dict(labeling))

    def class_set(self) -> FrozenSet[FrozenSet[Entry]]:
        """The classes as an unordered set, for comparisons that ignore class order."""
        return frozenset(self.classes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "classes": [[list(entry.values()) for entry in sorted(cls)] for cls in self.classes],
            "labeling": {str(entry): self.labeling[entry] for entry in sorted(self.labeling)},
        }


def partition_to_json(p: TransversalPartition) -> str:
    return json.dumps(p.to_dict(), indent=2, ensure_ascii=False) + "\n"


def partition_from_json(text: str) -> TransversalPartition:
    """Inverse of partition_to_json; a missing labeling is rebuilt from the class order."""
    try:
        payload = json.loads(text)
        classes = tuple(frozenset(Entry.of(*item) for item in cls) for cls in payload["classes"])
        labeling = {Entry.parse(key): int(value) for key, value in payload.get("labeling", {}).items()}
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"Malformed partition document: {exc}") from exc
    if len(classes) != 3:
        raise ParseError("A partition has exactly three classes.")
    if not labeling:
        labeling = {entry: index for index, cls in enumerate(classes) for entry in cls}
    return TransversalPartition(classes, labeling)


def three_transversal_partition(
    b: Bitrade,
    base: Optional[Entry] = None,
    canonical: bool = True,
) -> TransversalPartition:
    """
    Label propagation per orbit of ⟨τ₁, τ₂, τ₃⟩, starting from the least dart
    (or `base` inside its own orbit) with label 0. Every revisited dart is
    checked; a contradiction raises PartitionFailure(inconsistent_labeling).
    With `canonical`, labels are rotated per orbit so its least dart is in class 0.
    """
    if not is_k_homogeneous(b, 3):
        witness = homogeneity_witness(b, 3) or ()
        raise PartitionFailure(
            NOT_3_HOMOGENEOUS,
            witness,
            "Bitrade is not 3-homogeneous"
            + (f": {witness[0].axis.noun} {witness[0]} occurs {witness[1]} time(s)" if witness else "."),
        )

    t = tau_representation(b)
    labeling: Dict[Entry, int] = {}
    for orbit in orbits(t):
        start = base if base is not None and base in orbit else min(orbit)
        labeling[start] = 0
        queue = deque([start])
        while queue:
            x = queue.popleft()
            expected = (labeling[x] + 1) % 3
            for generator, perm in enumerate(t.tau, start=1):
                y = perm.image(x)
                if y not in labeling:
                    labeling[y] = expected
                    queue.append(y)
                elif labeling[y] != expected:
                    raise PartitionFailure(
                        INCONSISTENT_LABELING,
                        (x, y),
                        f"τ{generator} sends {x} (label {labeling[x]}) to {y}, "
                        f"already labelled {labeling[y]} instead of {expected}",
                    )
        if canonical:
            shift = labeling[min(orbit)]
            for x in orbit:
                labeling[x] = (labeling[x] - shift) % 3
        logger.debug("Labelled orbit of %d darts from base %s", len(orbit), start)

    return TransversalPartition.from_labeling(labeling)


def verify_partition(p: TransversalPartition, b: Bitrade) -> ValidationReport:
    """Disjointness, coverage, transversality per class and the propagation rule. Never raises."""
    violations: List[Violation] = []
    seen: Dict[Entry, int] = {}
    for index, cls in enumerate(p.classes):
        for entry in sorted(cls):
            if entry in seen:
                violations.append(Violation("DISJOINT", str(entry), f"{entry} lies in classes {seen[entry]} and {index}"))
            else:
                seen[entry] = index

    for entry in sorted(b.t_dia.entries - set(seen)):
        violations.append(Violation("COVER", str(entry), f"{entry} of T⋄ is in no class"))
    for entry in sorted(set(seen) - b.t_dia.entries):
        violations.append(Violation("COVER", str(entry), f"{entry} is not an entry of T⋄"))

    for index, cls in enumerate(p.classes):
        if cls <= b.t_dia.entries and not is_transversal(cls, b):
            violations.append(Violation("TRANSVERSAL", f"class {index}", f"class {index} is not a transversal"))

    for entry in sorted(b.t_dia.entries):
        if p.labeling.get(entry) != seen.get(entry):
            violations.append(Violation(
                "LABEL", str(entry), f"{entry} is labelled {p.labeling.get(entry)} but lies in class {seen.get(entry)}",
            ))

    if not b.is_empty:
        t = tau_representation(b)
        for x in sorted(b.t_dia.entries):
            if x not in p.labeling:
                continue
            for generator, perm in enumerate(t.tau, start=1):
                y = perm.image(x)
                if p.labeling.get(y) != (p.labeling[x] + 1) % 3:
                    violations.append(Violation(
                        "PROPAGATION",
                        f"{x}->{y}",
                        f"label({y}) = {p.labeling.get(y)} but label({x}) + 1 = {(p.labeling[x] + 1) % 3} under τ{generator}",
                    ))

    return ValidationReport(tuple(violations))


def brute_force_partitions(b: Bitrade, cap: int = DEFAULT_ORACLE_CAP) -> List[TransversalPartition]:
    """
    Every partition of T⋄ into three transversals, found by backtracking.
    Classes are opened in order of their least entry, so each unordered
    partition is produced once.
    """
    if len(b) > cap:
        raise OracleCapExceeded(f"|T⋄| = {len(b)} exceeds the oracle cap of {cap}.")

    entries: Sequence[Entry] = b.t_dia.sorted()
    n_rows, n_cols = len(b.t_dia.rows), len(b.t_dia.cols)
    if b.is_empty or n_rows != n_cols or len(entries) != 3 * n_rows:
        return []

    rows = [set() for _ in range(3)]
    cols = [set() for _ in range(3)]
    syms = [set() for _ in range(3)]
    assignment: List[int] = []
    found: List[TransversalPartition] = []

    def search(position: int, opened: int) -> None:
        if position == len(entries):
            if opened == 3 and all(len(r) == n_rows and len(c) == n_cols for r, c in zip(rows, cols)):
                found.append(TransversalPartition.from_labeling(dict(zip(entries, assignment))))
            return
        entry = entries[position]
        for index in range(min(opened + 1, 3)):
            if entry.row in rows[index] or entry.col in cols[index] or entry.sym in syms[index]:
                continue
            rows[index].add(entry.row)
            cols[index].add(entry.col)
            syms[index].add(entry.sym)
            assignment.append(index)
            search(position + 1, max(opened, index + 1))
            assignment.pop()
            rows[index].discard(entry.row)
            cols[index].discard(entry.col)
            syms[index].discard(entry.sym)

    search(0, 0)
    found.sort(key=lambda p: tuple(tuple(sorted(cls)) for cls in p.classes))
    logger.debug("Brute force found %d partition(s) of %d entries", len(found), len(entries))
    return found
