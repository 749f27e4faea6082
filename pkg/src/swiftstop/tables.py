"""Result tables and their CSV / JSON serialization.

Numbers are rounded to 10 significant digits when they enter a table, so
that the in-memory table and the parsed output file agree bit for bit.
Each CSV block starts with ``# key: value`` metadata lines, then a header
row; a file may hold several blocks, each opened by ``# table: <name>``.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field

from .errors import DomainError

SIG_DIGITS = 10


def quantize(x):
    """Round a float to the output precision; pass other values through."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    x = float(x)
    if not math.isfinite(x):
        return x
    return float(f"{x:.{SIG_DIGITS - 1}e}")


def format_value(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return f"{x:.{SIG_DIGITS - 1}e}"
    return str(x)


def parse_value(text):
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


@dataclass
class Table:
    name: str
    columns: list
    rows: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, **values):
        unknown = set(values) - set(self.columns)
        if unknown:
            raise KeyError(f"unknown columns {sorted(unknown)}")
        self.rows.append({c: quantize(values.get(c)) for c in self.columns})

    def column(self, name):
        return [r[name] for r in self.rows]


def write_csv(tables, stream):
    writer = csv.writer(stream, lineterminator="\n")
    for i, table in enumerate(tables):
        if i:
            stream.write("\n")
        stream.write(f"# table: {table.name}\n")
        for key, value in table.meta.items():
            stream.write(f"# {key}: {value}\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([format_value(row[c]) for c in table.columns])


def read_csv(text):
    """Parse the output of :func:`write_csv` back into tables."""
    tables = []
    current = None
    header_pending = False
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(":")
            key, value = key.strip(), value.strip()
            if key == "table":
                current = Table(value, [])
                tables.append(current)
                header_pending = True
            elif current is not None:
                current.meta[key] = value
            continue
        fields = next(csv.reader([line]))
        if current is None:
            current = Table("results", [])
            tables.append(current)
            header_pending = True
        if header_pending:
            current.columns = fields
            header_pending = False
        else:
            current.rows.append({c: parse_value(v) for c, v in zip(current.columns, fields)})
    return tables


def _json_value(x):
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


def to_json_obj(tables):
    main, *extra = tables
    obj = {
        "meta": dict(main.meta),
        "columns": list(main.columns),
        "rows": [{c: _json_value(r[c]) for c in main.columns} for r in main.rows],
    }
    for t in extra:
        obj[t.name] = {
            "meta": dict(t.meta),
            "columns": list(t.columns),
            "rows": [{c: _json_value(r[c]) for c in t.columns} for r in t.rows],
        }
    return obj


def write_json(tables, stream):
    json.dump(to_json_obj(tables), stream, indent=2)
    stream.write("\n")


def render(tables, fmt):
    buf = io.StringIO()
    if fmt == "csv":
        write_csv(tables, buf)
    elif fmt == "json":
        write_json(tables, buf)
    else:
        raise DomainError(f"unknown output format {fmt!r}")
    return buf.getvalue()


class OverlayError(ValueError):
    """A reference-point file could not be parsed."""


@dataclass(frozen=True)
class ReferenceOverlay:
    """User-supplied reference points (v, stopping) in atomic units."""

    label: str
    points: tuple


def parse_overlay(text, default_label="reference"):
    """Read a two-column ``v, stopping`` CSV with optional ``#`` comments.

    A ``# label: name`` comment sets the label. Velocities must be strictly
    increasing and all values finite.
    """
    label = default_label
    points = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            key, sep, value = stripped[1:].partition(":")
            if sep and key.strip().lower() == "label":
                label = value.strip()
            continue
        fields = [f.strip() for f in stripped.split(",")]
        if len(fields) != 2:
            raise OverlayError(f"line {lineno}: expected 2 columns, got {len(fields)}")
        try:
            v, dedx = float(fields[0]), float(fields[1])
        except ValueError:
            if not points and lineno == _first_data_line(text):
                continue  # header row
            raise OverlayError(f"line {lineno}: non-numeric value in {stripped!r}") from None
        if not (math.isfinite(v) and math.isfinite(dedx)):
            raise OverlayError(f"line {lineno}: non-finite value")
        if points and v <= points[-1][0]:
            raise OverlayError(f"line {lineno}: velocities must be strictly increasing")
        points.append((v, dedx))
    return ReferenceOverlay(label, tuple(points))


def _first_data_line(text):
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if s and not s.startswith("#"):
            return lineno
    return 0
