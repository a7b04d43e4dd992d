"""Text and JSON codecs for bitrades: triple lists, grids and JSON documents."""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from .models import Bitrade, BitradeError, Entry, Label, LabelError, PartialLatinSquare

logger = logging.getLogger(__name__)

FORMATS = ("triples", "grid", "json")
HALF_SEPARATOR = "%"
EMPTY_CELL = "."

RawPair = Tuple[PartialLatinSquare, PartialLatinSquare]


class ParseError(BitradeError, ValueError):
    """Raised for malformed input; carries the 1-based line number when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _split_halves(text: str) -> List[List[Tuple[int, str]]]:
    halves: List[List[Tuple[int, str]]] = [[]]
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        if line == HALF_SEPARATOR:
            halves.append([])
            continue
        halves[-1].append((number, line))
    if len(halves) != 2:
        raise ParseError(f"Expected exactly one '{HALF_SEPARATOR}' separator line, found {len(halves) - 1}.")
    return halves


def parse_triples(text: str) -> RawPair:
    """Parse `r c s` lines, with T⋄ and T⊗ separated by a `%` line."""
    squares = []
    for half in _split_halves(text):
        seen: Dict[Entry, int] = {}
        for number, line in half:
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(f"expected 'row column symbol', got {line!r}", number)
            try:
                entry = Entry.of(*parts)
            except LabelError as exc:
                raise ParseError(str(exc), number) from exc
            if entry in seen:
                raise ParseError(f"triple {entry} already given on line {seen[entry]}", number)
            seen[entry] = number
        squares.append(PartialLatinSquare(frozenset(seen)))
    return squares[0], squares[1]


def _parse_grid_half(lines: Sequence[Tuple[int, str]]) -> PartialLatinSquare:
    col_labels: Optional[List[str]] = None
    body = list(lines)
    if body and body[0][1].startswith("@"):
        col_labels = body[0][1][1:].split()
        body = body[1:]

    entries = []
    for index, (number, line) in enumerate(body):
        if "|" in line:
            row_label, _, cells_text = line.partition("|")
            row_label = row_label.strip()
        else:
            row_label, cells_text = str(index), line
        cells = cells_text.split()
        labels = col_labels if col_labels is not None else [str(i) for i in range(len(cells))]
        if len(cells) != len(labels):
            raise ParseError(f"expected {len(labels)} cells, got {len(cells)}", number)
        for col_label, cell in zip(labels, cells):
            if cell == EMPTY_CELL:
                continue
            try:
                entries.append(Entry.of(row_label, col_label, cell))
            except LabelError as exc:
                raise ParseError(str(exc), number) from exc
    return PartialLatinSquare(frozenset(entries))


def parse_grid(text: str) -> RawPair:
    """
    Parse two grids separated by `%`. `.` marks an empty cell. An optional
    `@ c1 c2 ...` header names the columns and an optional `r |` prefix names
    each row; without them labels are 0-based indices.
    """
    halves = _split_halves(text)
    return _parse_grid_half(halves[0]), _parse_grid_half(halves[1])


def parse_json(text: str) -> RawPair:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from exc
    if not isinstance(payload, dict) or "t_dia" not in payload or "t_oti" not in payload:
        raise ParseError("JSON document must be an object with 't_dia' and 't_oti' arrays.")

    squares = []
    for key in ("t_dia", "t_oti"):
        entries = []
        for item in payload[key]:
            if not isinstance(item, (list, tuple)) or len(item) != 3:
                raise ParseError(f"{key} entries must be [row, column, symbol] triples, got {item!r}")
            try:
                entries.append(Entry.of(*item))
            except LabelError as exc:
                raise ParseError(str(exc)) from exc
        squares.append(PartialLatinSquare(frozenset(entries)))
    return squares[0], squares[1]


PARSERS = {"triples": parse_triples, "grid": parse_grid, "json": parse_json}


def parse_pair(text: str, fmt: str = "triples") -> RawPair:
    try:
        parser = PARSERS[fmt]
    except KeyError:
        raise ParseError(f"Unknown format {fmt!r}; expected one of {', '.join(FORMATS)}.") from None
    return parser(text)


def parse_bitrade(text: str, fmt: str = "triples") -> Bitrade:
    """Parse and validate; raises InvalidBitradeError for a pair that is not a bitrade."""
    t_dia, t_oti = parse_pair(text, fmt)
    return Bitrade.build(t_dia, t_oti)


def format_triples(b: Bitrade) -> str:
    lines = [" ".join(entry.values()) for entry in b.t_dia.sorted()]
    lines.append(HALF_SEPARATOR)
    lines.extend(" ".join(entry.values()) for entry in b.t_oti.sorted())
    return "\n".join(lines) + "\n"


def _grid_lines(square: PartialLatinSquare, rows: List[Label], cols: List[Label]) -> List[str]:
    cells = square.cell_map()
    width = max([len(str(label)) for label in cols] + [len(str(sym)) for sym in cells.values()] + [1])
    row_width = max([len(str(label)) for label in rows] + [1])
    lines = ["@ " + " ".join(str(col).rjust(width) for col in cols)]
    for row in rows:
        symbols = [str(cells.get((row, col), EMPTY_CELL)).rjust(width) for col in cols]
        lines.append(f"{str(row).rjust(row_width)} | " + " ".join(symbols))
    return lines


def format_grid(b: Bitrade) -> str:
    rows = sorted(set(b.t_dia.rows) | set(b.t_oti.rows))
    cols = sorted(set(b.t_dia.cols) | set(b.t_oti.cols))
    lines = _grid_lines(b.t_dia, rows, cols) + [HALF_SEPARATOR] + _grid_lines(b.t_oti, rows, cols)
    return "\n".join(lines) + "\n"


def bitrade_to_dict(b: Bitrade) -> Dict[str, Any]:
    return {
        "t_dia": [list(entry.values()) for entry in b.t_dia.sorted()],
        "t_oti": [list(entry.values()) for entry in b.t_oti.sorted()],
    }


def format_json(b: Bitrade) -> str:
    return json.dumps(bitrade_to_dict(b), indent=2, ensure_ascii=False) + "\n"


FORMATTERS = {"triples": format_triples, "grid": format_grid, "json": format_json}


def format_bitrade(b: Bitrade, fmt: str = "triples") -> str:
    try:
        return FORMATTERS[fmt](b)
    except KeyError:
        raise ParseError(f"Unknown format {fmt!r}; expected one of {', '.join(FORMATS)}.") from None


def read_text(source: str) -> str:
    """Read UTF-8 text from a path, or from stdin when source is '-'."""
    if source == "-":
        return sys.stdin.read()
    return Path(source).read_text(encoding="utf-8")


def write_text(target: Optional[str], text: str) -> None:
    """Write UTF-8 text with LF line endings to a path, or to stdout when target is None or '-'."""
    if target in (None, "-"):
        sys.stdout.write(text)
        return
    with open(target, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def load_bitrade(source: str, fmt: str = "triples") -> Bitrade:
    """Parse and validate a bitrade from a path, or stdin when source is '-'."""
    b = parse_bitrade(read_text(source), fmt)
    logger.debug("Loaded a bitrade of %d entries from %s (%s)", len(b), source, fmt)
    return b


def dump_bitrade(b: Bitrade, target: Optional[str] = None, fmt: str = "triples") -> None:
    write_text(target, format_bitrade(b, fmt))


def df_from_rows(rows: List[Dict[str, Any]], fallback_cols: Optional[List[str]] = None) -> pd.DataFrame:
    """
    Build a DataFrame from a list of flat records.

    Args:
        rows: The records, one dict per row.
        fallback_cols: Column names to use when there are no rows at all.

    Returns:
        pd.DataFrame: One column per record key, in first-seen order.
    """
    if not rows:
        return pd.DataFrame(columns=fallback_cols or [])
    return pd.DataFrame(rows)
