"""Partial latin square and bitrade validation, homogeneity and transversal checks."""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple

from ..models import (
    Axis,
    Bitrade,
    BitradeError,
    Entry,
    InvalidBitradeError,
    Label,
    PartialLatinSquare,
    ValidationReport,
    Violation,
)

logger = logging.getLogger(__name__)

# The three coordinate pairs (r, s), r < s, quantified over by R2 and R3.
POSITION_PAIRS: Tuple[Tuple[Axis, Axis], ...] = tuple(combinations(Axis, 2))


class SquareMismatchError(InvalidBitradeError):
    """Raised when two latin squares cannot be differenced."""


class NotATransversalSubsetError(BitradeError, ValueError):
    """Raised when a candidate transversal contains entries outside T⋄."""


def _cell(entry: Entry) -> str:
    return f"({entry.row},{entry.col})"


def _project(entry: Entry, pair: Tuple[Axis, Axis]) -> Tuple[Label, Label]:
    return (entry.coordinate(pair[0]), entry.coordinate(pair[1]))


def validate_pls(p: PartialLatinSquare | Iterable[Entry]) -> ValidationReport:
    """
    Check the latin conditions: one entry per cell, each symbol at most once
    per row and per column. Never raises.
    """
    entries = sorted(p.entries if isinstance(p, PartialLatinSquare) else set(p))
    violations: List[Violation] = []

    by_cell: Dict[Tuple[Label, Label], List[Entry]] = defaultdict(list)
    by_row_sym: Dict[Tuple[Label, Label], List[Entry]] = defaultdict(list)
    by_col_sym: Dict[Tuple[Label, Label], List[Entry]] = defaultdict(list)
    for entry in entries:
        by_cell[(entry.row, entry.col)].append(entry)
        by_row_sym[(entry.row, entry.sym)].append(entry)
        by_col_sym[(entry.col, entry.sym)].append(entry)

    for (row, col), found in sorted(by_cell.items(), key=lambda item: item[1][0]):
        if len(found) > 1:
            symbols = ", ".join(str(e.sym) for e in found)
            violations.append(Violation("PLS", _cell(found[0]), f"cell ({row},{col}) holds several symbols: {symbols}"))
    for (row, sym), found in sorted(by_row_sym.items(), key=lambda item: item[1][0]):
        if len(found) > 1:
            violations.append(Violation("PLS", str(found[1]), f"symbol {sym} appears {len(found)} times in row {row}"))
    for (col, sym), found in sorted(by_col_sym.items(), key=lambda item: item[1][0]):
        if len(found) > 1:
            violations.append(Violation("PLS", str(found[1]), f"symbol {sym} appears {len(found)} times in column {col}"))

    return ValidationReport(tuple(violations))


def _witness_violations(source: List[Entry], target: Iterable[Entry], rule: str, other_name: str) -> List[Violation]:
    """Count, for every entry and position pair, the agreeing entries of the other half."""
    counts: Dict[Tuple[Axis, Axis], Counter] = {
        pair: Counter(_project(entry, pair) for entry in target) for pair in POSITION_PAIRS
    }
    violations = []
    for entry in source:
        for pair in POSITION_PAIRS:
            found = counts[pair][_project(entry, pair)]
            if found != 1:
                names = f"{pair[0].noun}/{pair[1].noun}"
                violations.append(Violation(
                    rule,
                    str(entry),
                    f"{found} entries of {other_name} agree with {entry} on {names} (expected exactly 1)",
                ))
    return violations


def validate_bitrade(t_dia: PartialLatinSquare, t_oti: PartialLatinSquare) -> ValidationReport:
    """
    Check R1-R3 for a raw pair. Either half failing the latin conditions
    yields a report carrying only PLS violations.
    """
    pls_report = validate_pls(t_dia) + validate_pls(t_oti)
    if not pls_report.ok:
        return pls_report

    dia = t_dia.sorted()
    oti = t_oti.sorted()
    violations = [
        Violation("R1", str(entry), f"entry {entry} belongs to both T⋄ and T⊗")
        for entry in sorted(t_dia.entries & t_oti.entries)
    ]
    violations.extend(_witness_violations(dia, oti, "R2", "T⊗"))
    violations.extend(_witness_violations(oti, dia, "R3", "T⋄"))
    return ValidationReport(tuple(violations))


def bitrade_from_squares(l1: PartialLatinSquare, l2: PartialLatinSquare) -> Bitrade:
    """Return (l1 \\ l2, l2 \\ l1) for two full latin squares of the same order on the same labels."""
    for name, square in (("first", l1), ("second", l2)):
        report = validate_pls(square)
        if not report.ok:
            raise SquareMismatchError(report, f"The {name} square is not latin.")
        n = len(square.rows)
        if not (len(square.cols) == len(square.symbols) == n and len(square) == n * n):
            report = ValidationReport((Violation("PLS", name, "not a full latin square"),))
            raise SquareMismatchError(report, f"The {name} square is not a full latin square.")

    if (l1.rows, l1.cols, l1.symbols) != (l2.rows, l2.cols, l2.symbols):
        report = ValidationReport((Violation("PLS", "universes", "squares use different label sets or orders"),))
        raise SquareMismatchError(report, "The squares differ in order or label sets.")

    result = Bitrade(PartialLatinSquare(l1.entries - l2.entries), PartialLatinSquare(l2.entries - l1.entries))
    report = validate_bitrade(result.t_dia, result.t_oti)
    if not report.ok:
        raise InvalidBitradeError(report)
    return result


def line_counts(square: PartialLatinSquare) -> Dict[Axis, Counter]:
    return {axis: Counter(entry.coordinate(axis) for entry in square.entries) for axis in Axis}


def homogeneity_witness(b: Bitrade, k: int) -> Optional[Tuple[Label, int]]:
    """The first row, column or symbol of T⋄ whose occurrence count differs from k, if any."""
    for axis, counter in line_counts(b.t_dia).items():
        for label in sorted(counter):
            if counter[label] != k:
                return (label, counter[label])
    return None


def is_k_homogeneous(b: Bitrade, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be a positive integer")
    if b.is_empty:
        return False
    dia_ok = homogeneity_witness(b, k) is None
    oti_ok = homogeneity_witness(b.swapped(), k) is None
    if dia_ok != oti_ok:
        raise InvalidBitradeError(
            ValidationReport((Violation("R2", "homogeneity", "T⋄ and T⊗ disagree on homogeneity"),)),
        )
    return dia_ok


def is_transversal(s: Iterable[Entry], b: Bitrade) -> bool:
    """Each row and column of T⋄ hit exactly once, with as many symbols as entries."""
    chosen: Set[Entry] = set(s)
    outside = chosen - b.t_dia.entries
    if outside:
        raise NotATransversalSubsetError(f"Entries not in T⋄: {', '.join(map(str, sorted(outside)))}")

    rows = Counter(entry.row for entry in chosen)
    cols = Counter(entry.col for entry in chosen)
    if set(rows) != set(b.t_dia.rows) or any(count != 1 for count in rows.values()):
        return False
    if set(cols) != set(b.t_dia.cols) or any(count != 1 for count in cols.values()):
        return False
    return len({entry.sym for entry in chosen}) == len(chosen)


def relabel(b: Bitrade, mapping: Mapping[Label, Label]) -> Bitrade:
    """Apply per-axis label bijections; labels missing from the mapping are kept."""
    def move(entry: Entry) -> Entry:
        return Entry(mapping.get(entry.row, entry.row), mapping.get(entry.col, entry.col), mapping.get(entry.sym, entry.sym))

    return Bitrade.build(
        PartialLatinSquare(frozenset(move(e) for e in b.t_dia.entries)),
        PartialLatinSquare(frozenset(move(e) for e in b.t_oti.entries)),
    )


def disjoint_union(b1: Bitrade, b2: Bitrade, prefixes: Tuple[str, str] = ("a", "b")) -> Bitrade:
    """Place two bitrades on disjoint label sets by prefixing every label."""
    def tag(square: PartialLatinSquare, prefix: str) -> Set[Entry]:
        return {Entry.of(*(f"{prefix}{value}" for value in entry.values())) for entry in square.entries}

    return Bitrade.build(
        PartialLatinSquare(frozenset(tag(b1.t_dia, prefixes[0]) | tag(b2.t_dia, prefixes[1]))),
        PartialLatinSquare(frozenset(tag(b1.t_oti, prefixes[0]) | tag(b2.t_oti, prefixes[1]))),
    )


def sub_bitrade(b: Bitrade, darts: Iterable[Entry]) -> Bitrade:
    """
    The sub-bitrade on a set of T⋄ entries closed under the tau action (an orbit):
    those entries together with every T⊗ entry sharing a row and a column with one of them.
    """
    chosen = frozenset(darts)
    cells = {(entry.row, entry.col) for entry in chosen}
    oti = frozenset(entry for entry in b.t_oti.entries if (entry.row, entry.col) in cells)
    return Bitrade.build(PartialLatinSquare(chosen), PartialLatinSquare(oti))
