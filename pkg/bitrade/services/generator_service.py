"""
Bitrade fixtures, parametric families, lattice quotients and small-order enumeration.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from ..helpers import df_from_rows, format_triples, write_text
from ..models import Bitrade, BitradeError, Entry, PartialLatinSquare, ValidationReport, Violation
from ..utils.lattice import (
    BLACK,
    ORIGIN,
    STAR_ABOVE,
    WHITE_ABOVE,
    Point,
    color_of,
    from_black_coords,
    from_vertex_coords,
    shaded_at,
    to_black_coords,
    unshaded_across_solid,
)
from .latin_service import bitrade_from_squares, is_k_homogeneous, line_counts, validate_bitrade
from .partition_service import PartitionFailure, three_transversal_partition
from .permutation_service import orbits, tau_representation
from .surface_service import genus_by_orbit

logger = logging.getLogger(__name__)

DATASET_PATH = Path(__file__).resolve().parents[1] / "datasets" / "reference_bitrades.json"
MAX_ENUMERATION_ORDER = 4


class GeneratorError(BitradeError, ValueError):
    """Raised for generator parameters outside their domain."""


class EnumerationLimitError(GeneratorError):
    """Raised when exhaustive enumeration is asked for an order it does not support."""


class LatticeSpecError(GeneratorError):
    """Raised for a degenerate translation sublattice."""


class ColorViolationError(LatticeSpecError):
    """Raised when a translation does not map black vertices onto black vertices."""


class LatticeQuotientRejected(LatticeSpecError):
    """The quotient of the plane tessellation by the sublattice is not a bitrade."""

    def __init__(self, spec: "LatticeSpec", report: ValidationReport):
        self.spec = spec
        self.report = report
        first = report.violations[0] if report.violations else None
        detail = f"; first: [{first.rule}] {first.message}" if first else ""
        super().__init__(f"Quotient by {spec} is not a bitrade ({len(report.violations)} violation(s)){detail}")


def load_reference(name: str) -> Dict[str, Any]:
    payload = json.loads(DATASET_PATH.read_text(encoding="utf-8"))
    try:
        return payload[name]
    except KeyError:
        raise GeneratorError(f"No reference bitrade named {name!r}.") from None


def reference_names() -> List[str]:
    return sorted(json.loads(DATASET_PATH.read_text(encoding="utf-8")))


def _from_reference(name: str) -> Bitrade:
    record = load_reference(name)
    return Bitrade.build(PartialLatinSquare.of(record["t_dia"]), PartialLatinSquare.of(record["t_oti"]))


def intercalate() -> Bitrade:
    """The 2×2 bitrade with four entries, labels 0 and 1."""
    return _from_reference("intercalate")


def example2() -> Bitrade:
    """The 4×4 3-homogeneous bitrade with 12 entries, labels 1 to 4."""
    return _from_reference("example2")


def cyclic_shift_bitrade(n: int) -> Bitrade:
    """T⋄ is the addition table of Zₙ and T⊗ the same table with every symbol shifted by one."""
    if n < 2:
        raise GeneratorError(f"cyclic_shift_bitrade needs n >= 2, got {n}.")
    t_dia = PartialLatinSquare.of((i, j, (i + j) % n) for i in range(n) for j in range(n))
    t_oti = PartialLatinSquare.of((i, j, (i + j + 1) % n) for i in range(n) for j in range(n))
    return Bitrade.build(t_dia, t_oti)


def _extended_gcd(x: int, y: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with g = s·x + t·y = gcd(x, y) ≥ 0."""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_s, s = s, old_s - quotient * s
        old_t, t = t, old_t - quotient * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class LatticeSpec:
    """
    A translation sublattice Λ of the black-vertex lattice, given by two
    generators in the basis (3/2, √3/2), (3/2, −√3/2). Translations by the
    black-vertex lattice preserve vertex colours and orientation, so every
    nondegenerate spec yields a well-defined quotient tessellation.
    """

    v1: Tuple[int, int]
    v2: Tuple[int, int]

    def __post_init__(self) -> None:
        if self.determinant == 0:
            raise LatticeSpecError(f"Vectors {self.v1} and {self.v2} are linearly dependent.")

    @property
    def determinant(self) -> int:
        (a, b), (c, d) = self.v1, self.v2
        return a * d - b * c

    @property
    def index(self) -> int:
        return abs(self.determinant)

    @classmethod
    def from_vertex_vectors(cls, w1: Tuple[int, int], w2: Tuple[int, int]) -> "LatticeSpec":
        """
        Build a spec from vectors i·(1, 0) + j·(1/2, √3/2) of the full vertex
        lattice. Only vectors with i − j ≡ 0 (mod 3) map black vertices to black vertices.
        """
        coords = []
        for i, j in (w1, w2):
            point = from_vertex_coords(i, j)
            if color_of(point) != BLACK:
                raise ColorViolationError(f"Translation ({i}, {j}) moves the black vertex at the origin to a {color_of(point)} vertex.")
            coords.append(to_black_coords(point))
        return cls(coords[0], coords[1])

    def hermite_form(self) -> Tuple[int, int, int]:
        """(a, b, d) with Λ generated by (a, b) and (0, d), a·d = index and 0 ≤ b < d."""
        (x1, y1), (x2, y2) = self.v1, self.v2
        g, s, t = _extended_gcd(x1, x2)
        d = self.index // g
        return g, (s * y1 + t * y2) % d, d

    def vectors(self) -> Tuple[Point, Point]:
        return from_black_coords(*self.v1), from_black_coords(*self.v2)

    def __str__(self) -> str:
        return f"Λ⟨{self.v1}, {self.v2}⟩"


def lattice_specs(max_index: int) -> Iterator[LatticeSpec]:
    """Every sublattice of index ≤ max_index exactly once, in Hermite normal form."""
    for index in range(1, max_index + 1):
        for a in range(1, index + 1):
            if index % a:
                continue
            d = index // a
            for b in range(d):
                yield LatticeSpec((a, b), (0, d))


def _coset_label(point: Point, offset: Point, form: Tuple[int, int, int]) -> int:
    a, b, d = form
    m, n = to_black_coords(point - offset)
    shift = m // a
    return (m - shift * a) * d + (n - shift * b) % d


def lattice_quotient_bitrade(spec: LatticeSpec) -> Bitrade:
    """
    Fold the plane tessellation by Λ. Rows, columns and symbols are the black,
    white and star vertex classes, numbered from 0; T⋄ holds the shaded and
    T⊗ the unshaded triangles. Raises LatticeQuotientRejected when the folded
    pair is not a bitrade.
    """
    form = spec.hermite_form()
    a, _, d = form
    t_dia, t_oti = set(), set()
    for m in range(a):
        for n in range(d):
            black = from_black_coords(m, n)
            for sector in range(3):
                for triangle, target in ((shaded_at(black, sector), t_dia), (unshaded_across_solid(shaded_at(black, sector)), t_oti)):
                    target.add(Entry.of(
                        _coset_label(triangle[0], ORIGIN, form),
                        _coset_label(triangle[1], WHITE_ABOVE, form),
                        _coset_label(triangle[2], STAR_ABOVE, form),
                    ))

    left, right = PartialLatinSquare(frozenset(t_dia)), PartialLatinSquare(frozenset(t_oti))
    report = validate_bitrade(left, right)
    expected = 3 * spec.index
    if len(left) != expected or len(right) != expected:
        report = report + ValidationReport((Violation(
            "QUOTIENT", str(spec), f"{len(left)} shaded and {len(right)} unshaded classes, expected {expected} of each",
        ),))
    if not report.ok:
        raise LatticeQuotientRejected(spec, report)
    return Bitrade(left, right)


def lattice_quotients(max_index: int) -> Tuple[List[Tuple[LatticeSpec, Bitrade]], List[LatticeQuotientRejected]]:
    """Try every spec up to max_index; rejections are reported, not raised."""
    accepted, rejected = [], []
    for spec in lattice_specs(max_index):
        try:
            accepted.append((spec, lattice_quotient_bitrade(spec)))
        except LatticeQuotientRejected as exc:
            logger.warning("Rejected lattice quotient: %s", exc)
            rejected.append(exc)
    logger.info("Lattice quotients up to index %d: %d accepted, %d rejected", max_index, len(accepted), len(rejected))
    return accepted, rejected


Square = Tuple[Tuple[int, ...], ...]


def _complete_square(first_row: Tuple[int, ...]) -> List[Square]:
    n = len(first_row)
    rows: List[Tuple[int, ...]] = [first_row]
    found: List[Square] = []

    def fill(row: List[int], col: int) -> None:
        if col == n:
            rows.append(tuple(row))
            if len(rows) == n:
                found.append(tuple(rows))
            else:
                fill([], 0)
            rows.pop()
            return
        used_in_col = {r[col] for r in rows}
        for symbol in range(n):
            if symbol in row or symbol in used_in_col:
                continue
            row.append(symbol)
            fill(row, col + 1)
            row.pop()

    if n == 1:
        return [(first_row,)]
    fill([], 0)
    return found


def _first_rows(n: int) -> List[Tuple[int, ...]]:
    rows: List[Tuple[int, ...]] = []

    def extend(prefix: List[int]) -> None:
        if len(prefix) == n:
            rows.append(tuple(prefix))
            return
        for symbol in range(n):
            if symbol not in prefix:
                extend(prefix + [symbol])

    extend([])
    return rows


def _check_order(order: int, max_order: int) -> None:
    if order < 1:
        raise EnumerationLimitError(f"Order must be positive, got {order}.")
    if order > max_order:
        raise EnumerationLimitError(f"Exhaustive enumeration stops at order {max_order}, got {order}.")


def latin_squares(order: int, workers: int = 4, max_order: int = MAX_ENUMERATION_ORDER) -> List[Square]:
    """All latin squares on symbols 0..order−1 as row tuples, in lexicographic order."""
    _check_order(order, max_order)
    squares: List[Square] = []
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(_complete_square, row) for row in _first_rows(order)]
        for future in as_completed(futures):
            squares.extend(future.result())
    squares.sort()
    logger.debug("Found %d latin squares of order %d", len(squares), order)
    return squares


def square_entries(square: Square) -> PartialLatinSquare:
    return PartialLatinSquare.of((i, j, symbol) for i, row in enumerate(square) for j, symbol in enumerate(row))


def _oriented(b: Bitrade) -> Bitrade:
    dia, oti = b.canonical_key()
    return b if dia <= oti else b.swapped()


def _difference_keys(firsts: Sequence[int], squares: Sequence[PartialLatinSquare]) -> Dict[frozenset, Tuple[int, int]]:
    """Unordered differences of squares[i] with every later square, for i in one first-row group."""
    found: Dict[frozenset, Tuple[int, int]] = {}
    for first in firsts:
        for second in range(first + 1, len(squares)):
            pair = frozenset({
                squares[first].entries - squares[second].entries,
                squares[second].entries - squares[first].entries,
            })
            found.setdefault(pair, (first, second))
    return found


def _build(pairs: Sequence[Tuple[int, int]], squares: Sequence[PartialLatinSquare]) -> List[Bitrade]:
    return [_oriented(bitrade_from_squares(squares[i], squares[j])) for i, j in pairs]


def enumerate_small(order: int, workers: int = 4, max_order: int = MAX_ENUMERATION_ORDER) -> List[Bitrade]:
    """
    Every nonempty bitrade that is the difference of two latin squares of the
    given order. (T⋄, T⊗) and (T⊗, T⋄) count once, oriented so that T⋄ has the
    smaller sorted entry list. Sorted by size, then by entries.
    """
    rows = latin_squares(order, workers, max_order)
    squares = [square_entries(square) for square in rows]
    groups: Dict[Tuple[int, ...], List[int]] = {}
    for index, square in enumerate(rows):
        groups.setdefault(square[0], []).append(index)

    merged: Dict[frozenset, Tuple[int, int]] = {}
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(_difference_keys, firsts, squares) for firsts in groups.values()]
        for future in as_completed(futures):
            for pair, origin in future.result().items():
                if pair not in merged or origin < merged[pair]:
                    merged[pair] = origin

        pairs = sorted(merged.values())
        chunk = max(1, len(pairs) // (4 * workers) + 1)
        futures = [executor.submit(_build, pairs[start:start + chunk], squares) for start in range(0, len(pairs), chunk)]
        corpus = [b for future in as_completed(futures) for b in future.result()]

    corpus.sort(key=lambda b: (len(b), b.canonical_key()))
    logger.info("Order %d: %d latin squares, %d distinct bitrades", order, len(squares), len(corpus))
    return corpus


def homogeneity(b: Bitrade) -> Optional[int]:
    """The k for which b is k-homogeneous, or None."""
    if b.is_empty:
        return None
    counts = {count for counter in line_counts(b.t_dia).values() for count in counter.values()}
    if len(counts) != 1:
        return None
    k = counts.pop()
    return k if is_k_homogeneous(b, k) else None


def describe(b: Bitrade) -> Dict[str, Any]:
    """Summary flags of one bitrade for a corpus manifest."""
    t = tau_representation(b)
    components = orbits(t)
    k = homogeneity(b)
    partition_found: Optional[bool] = None
    if k == 3:
        try:
            three_transversal_partition(b)
            partition_found = True
        except PartitionFailure:
            partition_found = False
    genera = [report.genus for report in genus_by_orbit(t)]
    return {
        "entries": len(b),
        "rows": len(b.t_dia.rows),
        "columns": len(b.t_dia.cols),
        "symbols": len(b.t_dia.symbols),
        "homogeneity": k,
        "primary": len(components) == 1,
        "components": len(components),
        "genus": ",".join(map(str, genera)),
        "partition_found": partition_found,
    }


MANIFEST_COLUMNS = [
    "file", "entries", "rows", "columns", "symbols", "homogeneity",
    "primary", "components", "genus", "partition_found",
]


def write_corpus(bitrades: Sequence[Bitrade], directory: str | Path, prefix: str = "bitrade", xlsx: bool = False) -> Dict[str, Any]:
    """
    One triple-format file per bitrade, plus manifest.json and manifest.csv
    (and manifest.xlsx on request) summarising every file.
    """
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    width = max(3, len(str(len(bitrades))))

    rows = []
    for number, b in enumerate(bitrades, start=1):
        name = f"{prefix}_{number:0{width}d}.txt"
        write_text(str(target / name), format_triples(b))
        rows.append({"file": name, **describe(b)})

    manifest = {
        "count": len(rows),
        "three_homogeneous": sum(1 for row in rows if row["homogeneity"] == 3),
        "primary": sum(1 for row in rows if row["primary"]),
        "partitions_found": sum(1 for row in rows if row["partition_found"]),
        "bitrades": rows,
    }
    write_text(str(target / "manifest.json"), json.dumps(manifest, indent=2) + "\n")

    df = df_from_rows(rows, fallback_cols=MANIFEST_COLUMNS)
    df.to_csv(target / "manifest.csv", index=False, lineterminator="\n")
    if xlsx:
        with pd.ExcelWriter(target / "manifest.xlsx", engine="openpyxl") as writer:
            df.to_excel(writer, index=False, sheet_name="corpus")

    logger.info("Wrote %d bitrade(s) to %s", len(rows), target)
    return manifest


def reference_tau_cycles(name: str) -> List[List[List[Entry]]]:
    """The recorded tau permutations of a reference bitrade, as cycles of entries."""
    record = load_reference(name)
    return [[[Entry.parse(token) for token in cycle] for cycle in perm] for perm in record["tau"]]


def reference_partition(name: str) -> Optional[List[frozenset]]:
    record = load_reference(name)
    if "partition" not in record:
        return None
    return [frozenset(Entry.of(*item) for item in cls) for cls in record["partition"]]

