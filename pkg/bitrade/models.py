"""Value types for partial latin squares, bitrades and validation reports."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

_INT_RE = re.compile(r"[+-]?\d+")

RawValue = Union[str, int]


class BitradeError(Exception):
    """Base class for every domain failure raised by this package."""


class LabelError(BitradeError, ValueError):
    """Raised for malformed labels or entries."""


class Axis(IntEnum):
    ROW = 0
    COLUMN = 1
    SYMBOL = 2

    @property
    def noun(self) -> str:
        return ("row", "column", "symbol")[self.value]


@dataclass(frozen=True, slots=True)
class Label:
    """
    An opaque row, column or symbol identifier.

    Values are kept as strings so that 0-based and 1-based inputs survive a
    round trip unchanged. Integer-looking values sort numerically, everything
    else sorts after them by text.
    """

    axis: Axis
    value: str
    key: Tuple[int, int, int, str] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.value, str):
            object.__setattr__(self, "value", str(self.value))
        if not self.value or any(ch.isspace() for ch in self.value):
            raise LabelError(f"Invalid {Axis(self.axis).noun} label: {self.value!r}")
        if _INT_RE.fullmatch(self.value):
            key = (int(self.axis), 0, int(self.value), "")
        else:
            key = (int(self.axis), 1, 0, self.value)
        object.__setattr__(self, "key", key)

    def __lt__(self, other: "Label") -> bool:
        if not isinstance(other, Label):
            return NotImplemented
        return self.key < other.key

    def __le__(self, other: "Label") -> bool:
        if not isinstance(other, Label):
            return NotImplemented
        return self.key <= other.key

    def __gt__(self, other: "Label") -> bool:
        if not isinstance(other, Label):
            return NotImplemented
        return self.key > other.key

    def __ge__(self, other: "Label") -> bool:
        if not isinstance(other, Label):
            return NotImplemented
        return self.key >= other.key

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class Entry:
    """A (row, column, symbol) triple; also used as a dart of the tau permutations."""

    row: Label
    col: Label
    sym: Label
    key: Tuple[Tuple[int, int, int, str], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        axes = (self.row.axis, self.col.axis, self.sym.axis)
        if axes != (Axis.ROW, Axis.COLUMN, Axis.SYMBOL):
            raise LabelError(f"Entry labels are on the wrong axes: {axes}")
        object.__setattr__(self, "key", (self.row.key, self.col.key, self.sym.key))

    @classmethod
    def of(cls, row: RawValue, col: RawValue, sym: RawValue) -> "Entry":
        return cls(Label(Axis.ROW, str(row)), Label(Axis.COLUMN, str(col)), Label(Axis.SYMBOL, str(sym)))

    @classmethod
    def parse(cls, token: str) -> "Entry":
        """Parse the `r:c:s` dart notation."""
        parts = token.strip().split(":")
        if len(parts) != 3:
            raise LabelError(f"Expected r:c:s, got {token!r}")
        return cls.of(*parts)

    def coordinate(self, axis: Axis) -> Label:
        return (self.row, self.col, self.sym)[axis]

    def values(self) -> Tuple[str, str, str]:
        return (self.row.value, self.col.value, self.sym.value)

    def __iter__(self) -> Iterator[Label]:
        return iter((self.row, self.col, self.sym))

    def __lt__(self, other: "Entry") -> bool:
        if not isinstance(other, Entry):
            return NotImplemented
        return self.key < other.key

    def __le__(self, other: "Entry") -> bool:
        if not isinstance(other, Entry):
            return NotImplemented
        return self.key <= other.key

    def __gt__(self, other: "Entry") -> bool:
        if not isinstance(other, Entry):
            return NotImplemented
        return self.key > other.key

    def __ge__(self, other: "Entry") -> bool:
        if not isinstance(other, Entry):
            return NotImplemented
        return self.key >= other.key

    def __str__(self) -> str:
        return f"{self.row}:{self.col}:{self.sym}"


@dataclass(frozen=True)
class PartialLatinSquare:
    """A finite set of entries; the latin conditions are checked by validate_pls."""

    entries: FrozenSet[Entry] = frozenset()

    @classmethod
    def of(cls, entries: Iterable[Union[Entry, Tuple[RawValue, RawValue, RawValue]]]) -> "PartialLatinSquare":
        built = []
        for item in entries:
            built.append(item if isinstance(item, Entry) else Entry.of(*item))
        return cls(frozenset(built))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Entry]:
        return iter(self.sorted())

    def __contains__(self, item: object) -> bool:
        return item in self.entries

    def sorted(self) -> List[Entry]:
        return sorted(self.entries)

    def labels(self, axis: Axis) -> List[Label]:
        return sorted({entry.coordinate(axis) for entry in self.entries})

    @property
    def rows(self) -> List[Label]:
        return self.labels(Axis.ROW)

    @property
    def cols(self) -> List[Label]:
        return self.labels(Axis.COLUMN)

    @property
    def symbols(self) -> List[Label]:
        return self.labels(Axis.SYMBOL)

    def cells(self) -> FrozenSet[Tuple[Label, Label]]:
        return frozenset((entry.row, entry.col) for entry in self.entries)

    def cell_map(self) -> Dict[Tuple[Label, Label], Label]:
        """Map (row, col) to symbol; only meaningful for a valid partial latin square."""
        return {(entry.row, entry.col): entry.sym for entry in self.entries}


@dataclass(frozen=True)
class Bitrade:
    """A pair (T⋄, T⊗) of partial latin squares; use Bitrade.build for a validated pair."""

    t_dia: PartialLatinSquare
    t_oti: PartialLatinSquare

    @classmethod
    def build(cls, t_dia: Iterable, t_oti: Iterable) -> "Bitrade":
        """Construct and validate; raises InvalidBitradeError on any R1-R3 or latin violation."""
        from .services.latin_service import validate_bitrade

        left = t_dia if isinstance(t_dia, PartialLatinSquare) else PartialLatinSquare.of(t_dia)
        right = t_oti if isinstance(t_oti, PartialLatinSquare) else PartialLatinSquare.of(t_oti)
        report = validate_bitrade(left, right)
        if not report.ok:
            raise InvalidBitradeError(report)
        return cls(left, right)

    @classmethod
    def empty(cls) -> "Bitrade":
        return cls(PartialLatinSquare(), PartialLatinSquare())

    def __len__(self) -> int:
        return len(self.t_dia)

    @property
    def is_empty(self) -> bool:
        return not self.t_dia.entries

    def swapped(self) -> "Bitrade":
        return Bitrade(self.t_oti, self.t_dia)

    def canonical_key(self) -> Tuple[Tuple[Entry, ...], Tuple[Entry, ...]]:
        return (tuple(self.t_dia.sorted()), tuple(self.t_oti.sorted()))


@dataclass(frozen=True)
class Violation:
    """One failed check: rule id, offending entry or cell, message."""

    rule: str
    subject: str
    message: str

    def to_dict(self) -> Dict[str, str]:
        return {"rule": self.rule, "subject": self.subject, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> FrozenSet[str]:
        return frozenset(v.rule for v in self.violations)

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}

    def __add__(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.violations + other.violations)


class InvalidBitradeError(BitradeError, ValueError):
    """Raised when a pair of partial latin squares is not a bitrade."""

    def __init__(self, report: ValidationReport, message: Optional[str] = None):
        self.report = report
        if message is None:
            first = report.violations[0] if report.violations else None
            message = f"Invalid bitrade ({len(report.violations)} violation(s))"
            if first is not None:
                message += f"; first: [{first.rule}] {first.message}"
        super().__init__(message)
