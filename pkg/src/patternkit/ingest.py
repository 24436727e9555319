"""Reading, writing, reshaping and synthesizing binary contexts.

Two context formats are supported:

transactions
    One object per line, whitespace-separated item labels. Duplicate labels on
    a line collapse, a blank line is an object without items.
matrix
    A header line of item labels followed by one line of ``0``/``1`` tokens
    per object.

In both, lines starting with ``#`` are comments. Numeric tables for
discretization are comma-separated with a header line; an empty field is a
missing value.
"""

from __future__ import annotations

import bisect
import csv
import io
import math
import random
from dataclasses import dataclass, field
from typing import Literal

from .context import BinaryContext
from .errors import ParseError, SpecError

Format = Literal["transactions", "matrix"]
FORMATS = ("transactions", "matrix")


def _is_comment(line: str) -> bool:
    return line.lstrip().startswith("#")


def _lines(text: str) -> list[str]:
    # str.splitlines would also split on \x0b, \x1c, ... which are legal in labels
    lines = text.replace("\r\n", "\n").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def parse_transactions(text: str) -> BinaryContext:
    """Parse a transaction file.

    A ``# items: a b c`` comment before the first object line fixes the item
    order and may declare items that no object possesses.
    """
    declared: list[str] | None = None
    rows = []
    for line in _lines(text):
        if _is_comment(line):
            body = line.lstrip()[1:].strip()
            if declared is None and not rows and body.startswith("items:"):
                declared = body[len("items:"):].split()
            continue
        rows.append(line.split())
    return BinaryContext.from_rows(rows, item_names=declared)


def parse_matrix(text: str) -> BinaryContext:
    header: list[str] | None = None
    rows: list[frozenset[int]] = []
    for lineno, line in enumerate(_lines(text), start=1):
        if _is_comment(line):
            continue
        tokens = line.split()
        if header is None:
            header = tokens
            if len(set(header)) != len(header):
                raise ParseError("duplicate item label in header", lineno)
            continue
        if len(tokens) != len(header):
            raise ParseError(f"expected {len(header)} values, found {len(tokens)}", lineno)
        row = set()
        for i, tok in enumerate(tokens):
            if tok == "1":
                row.add(i)
            elif tok != "0":
                raise ParseError(f"invalid matrix value {tok!r} (expected 0 or 1)", lineno)
        rows.append(frozenset(row))
    return BinaryContext(tuple(header or ()), tuple(rows))


def parse_context(text: str, fmt: Format = "transactions") -> BinaryContext:
    if fmt == "transactions":
        return parse_transactions(text)
    if fmt == "matrix":
        return parse_matrix(text)
    raise ValueError(f"unknown context format {fmt!r}")


def serialize(ctx: BinaryContext, fmt: Format = "transactions") -> str:
    """Render ``ctx`` so that the matching parser gives back the same context.

    Transaction files cannot carry items that no object possesses, nor fix the
    item order on their own, so when needed a ``# items:`` comment line is
    written and honoured on re-reading.
    """
    if fmt == "matrix":
        lines = [" ".join(ctx.item_names)]
        lines += [" ".join(str(v) for v in row) for row in ctx.incidence_matrix()]
        return "\n".join(lines) + "\n"
    if fmt != "transactions":
        raise ValueError(f"unknown context format {fmt!r}")
    lines = [" ".join(ctx.item_names[i] for i in sorted(row)) for row in ctx.rows]
    if _first_appearance_order(ctx) != list(range(ctx.item_count)):
        lines.insert(0, "# items: " + " ".join(ctx.item_names))
    return "".join(line + "\n" for line in lines)


def _first_appearance_order(ctx: BinaryContext) -> list[int]:
    seen: dict[int, None] = {}
    for row in ctx.rows:
        for i in sorted(row):
            seen.setdefault(i, None)
    return list(seen)


def transpose(ctx: BinaryContext) -> BinaryContext:
    """Swap objects and items; the new items are labelled ``o1`` .. ``oN``."""
    names = tuple(f"o{k}" for k in range(1, ctx.object_count + 1))
    rows = tuple(
        frozenset(k for k, row in enumerate(ctx.rows) if i in row)
        for i in range(ctx.item_count)
    )
    return BinaryContext(names, rows)


def complement(ctx: BinaryContext) -> BinaryContext:
    every = frozenset(range(ctx.item_count))
    return BinaryContext(ctx.item_names, tuple(every - row for row in ctx.rows))


# --- numeric tables and discretization ---------------------------------------


@dataclass(frozen=True)
class NumericTable:
    column_names: tuple[str, ...]
    rows: tuple[tuple[float | None, ...], ...]

    def __post_init__(self):
        for k, row in enumerate(self.rows, start=1):
            if len(row) != len(self.column_names):
                raise ValueError(f"row {k} has {len(row)} values for {len(self.column_names)} columns")

    def column(self, j: int) -> list[float | None]:
        return [row[j] for row in self.rows]


def parse_numeric_table(text: str) -> NumericTable:
    lines = [(n, line) for n, line in enumerate(_lines(text), start=1) if line.strip() and not _is_comment(line)]
    if not lines:
        raise ParseError("numeric table has no header line")
    reader = csv.reader(io.StringIO("\n".join(line for _, line in lines)))
    parsed = list(reader)
    header = [h.strip() for h in parsed[0]]
    rows = []
    for (lineno, _), fields in zip(lines[1:], parsed[1:]):
        if len(fields) != len(header):
            raise ParseError(f"expected {len(header)} fields, found {len(fields)}", lineno)
        row = []
        for tok in fields:
            tok = tok.strip()
            if tok == "":
                row.append(None)
                continue
            try:
                value = float(tok)
            except ValueError:
                raise ParseError(f"non-numeric value {tok!r}", lineno) from None
            if not math.isfinite(value):
                raise ParseError(f"non-finite value {tok!r}", lineno)
            row.append(value)
        rows.append(tuple(row))
    return NumericTable(tuple(header), tuple(rows))


@dataclass(frozen=True)
class DiscretizationSpec:
    method: Literal["equal-width", "equal-frequency"] = "equal-width"
    bins: int = 3
    overrides: dict[str, tuple[str, int]] = field(default_factory=dict)
    """Per-column ``(method, bins)`` replacing the defaults."""

    def for_column(self, name: str) -> tuple[str, int]:
        return self.overrides.get(name, (self.method, self.bins))


METHODS = ("equal-width", "equal-frequency")


def _fmt_number(v: float) -> str:
    if float(v).is_integer():
        return str(int(v))
    return repr(float(v))


def equal_frequency_sizes(n: int, bins: int) -> list[int]:
    """Bin sizes for ``n`` ranked values: the first ``n % bins`` bins get one extra."""
    q, r = divmod(n, bins)
    return [q + 1 if b < r else q for b in range(bins)]


def _bin_column(values: list[float | None], method: str, bins: int) -> tuple[list[int | None], list[tuple[float, float]]]:
    """Return per-row bin numbers (0-based, None when missing) and bin bounds."""
    present = [(v, k) for k, v in enumerate(values) if v is not None]
    lo = min((v for v, _ in present), default=0.0)
    hi = max((v for v, _ in present), default=0.0)
    assignment: list[int | None] = [None] * len(values)
    if lo == hi:
        for _, k in present:
            assignment[k] = 0
        return assignment, [(lo, hi)] * bins

    if method == "equal-width":
        width = (hi - lo) / bins
        edges = [lo + b * width for b in range(bins)] + [hi]
        inner = edges[1:-1]
        for v, k in present:
            assignment[k] = bisect.bisect_right(inner, v)
        return assignment, [(edges[b], edges[b + 1]) for b in range(bins)]

    ranked = sorted(present)  # (value, row) pairs: ties broken by row order
    sizes = equal_frequency_sizes(len(ranked), bins)
    bounds = []
    pos = 0
    for b, size in enumerate(sizes):
        chunk = ranked[pos:pos + size]
        for _, k in chunk:
            assignment[k] = b
        pos += size
        if chunk:
            bounds.append((chunk[0][0], ranked[pos][0] if pos < len(ranked) else chunk[-1][0]))
        else:
            last = bounds[-1][1] if bounds else lo
            bounds.append((last, last))
    return assignment, bounds


def _bin_labels(column: str, bounds: list[tuple[float, float]]) -> list[str]:
    col = "_".join(column.split()) or "col"
    labels = []
    for b, (lo, hi) in enumerate(bounds):
        close = "]" if b == len(bounds) - 1 else ")"
        labels.append(f"{col}∈[{_fmt_number(lo)};{_fmt_number(hi)}{close}")
    if len(set(labels)) != len(labels):
        # degenerate ranges: keep labels unique
        labels = [f"{label}#{b + 1}" for b, label in enumerate(labels)]
    return labels


def discretize(table: NumericTable, spec: DiscretizationSpec) -> BinaryContext:
    """Turn each numeric column into ``bins`` interval items.

    Every row gets exactly one item per non-missing column. A constant column
    puts all its rows in the first bin; the other bins still exist as items.
    """
    if not table.rows:
        raise SpecError("cannot discretize a table without rows")
    names: list[str] = []
    rows: list[set[int]] = [set() for _ in table.rows]
    for j, column in enumerate(table.column_names):
        method, bins = spec.for_column(column)
        if method not in METHODS:
            raise SpecError(f"unknown discretization method {method!r}")
        if not isinstance(bins, int) or bins < 1:
            raise SpecError(f"bins must be an integer >= 1, got {bins!r}")
        assignment, bounds = _bin_column(table.column(j), method, bins)
        base = len(names)
        names.extend(_bin_labels(column, bounds))
        for k, b in enumerate(assignment):
            if b is not None:
                rows[k].add(base + b)
    return BinaryContext(tuple(names), tuple(frozenset(r) for r in rows))


def random_context(n_objects: int, n_items: int, density: float, seed: int) -> BinaryContext:
    """Random context with independent cells.

    Cells are drawn row by row from :class:`random.Random` seeded with ``seed``
    (Mersenne Twister); a cell is set when the next ``random()`` draw is below
    ``density``. The result is identical across runs and platforms.
    """
    if not 0.0 <= density <= 1.0:
        raise SpecError(f"density must lie in [0, 1], got {density!r}")
    if n_objects < 0 or n_items < 0:
        raise SpecError("dimensions must be non-negative")
    rng = random.Random(seed)
    names = tuple(f"i{j}" for j in range(1, n_items + 1))
    rows = tuple(
        frozenset(j for j in range(n_items) if rng.random() < density)
        for _ in range(n_objects)
    )
    return BinaryContext(names, rows)
