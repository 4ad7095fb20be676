"""Tabular output: deterministic CSV and aligned human-readable text."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

CSV_SCHEMA = "wgmcqed-csv/1"


@dataclass
class Table:
    """Named columns (unit embedded in the name, e.g. ``a_m``) and rows."""

    name: str
    columns: list
    rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values for {len(self.columns)} columns")
        self.rows.append(values)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]


def format_number(x) -> str:
    """Plain notation, switching to scientific for |x| < 1e-3 or > 1e6."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0"
    if abs(x) < 1e-3 or abs(x) > 1e6:
        return f"{x:.9e}"
    return f"{x:.10g}"


def to_csv(table: Table) -> str:
    buf = io.StringIO()
    buf.write(f"# {CSV_SCHEMA} {table.name}\n")
    for note in table.notes:
        buf.write(f"# {note}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for r in table.rows:
        w.writerow([format_number(v) for v in r])
    return buf.getvalue()


def to_human(table: Table) -> str:
    cells = [[format_number(v) for v in r] for r in table.rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(table.columns)]
    lines = [table.name, "  ".join(c.rjust(w) for c, w in zip(table.columns, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in cells]
    lines += table.notes
    return "\n".join(lines) + "\n"


def read_csv(text: str) -> Table:
    """Parse CSV written by :func:`to_csv` (values come back as strings)."""
    lines = text.splitlines()
    head = lines[0]
    if not head.startswith(f"# {CSV_SCHEMA}"):
        raise ValueError("not a wgmcqed CSV file")
    name = head[len(f"# {CSV_SCHEMA}"):].strip()
    notes = []
    i = 1
    while i < len(lines) and lines[i].startswith("# "):
        notes.append(lines[i][2:])
        i += 1
    rows = list(csv.reader(lines[i:]))
    return Table(name, rows[0], [tuple(r) for r in rows[1:]], notes)


_HUMAN_UNITS = (("_m3", "_um3", 1e18), ("_m", "_um", 1e6), ("_Hz", "_MHz", 1e-6))


def _human_name(name: str):
    for suffix, new, scale in _HUMAN_UNITS:
        if name.endswith(suffix):
            return name[: -len(suffix)] + new, scale
    return name, None


def _scaled(v, scale):
    if scale is None or v is None or isinstance(v, (bool, str)):
        return v
    return v * scale


def humanize(table: Table) -> Table:
    """Copy of ``table`` in micrometres and MHz instead of SI units."""
    if table.columns == ["quantity", "value"]:
        rows = []
        for q, v in table.rows:
            name, scale = _human_name(q)
            rows.append((name, _scaled(v, scale)))
        return Table(table.name, list(table.columns), rows, list(table.notes))
    conv = [_human_name(c) for c in table.columns]
    rows = [tuple(_scaled(v, s) for v, (_, s) in zip(r, conv)) for r in table.rows]
    return Table(table.name, [c for c, _ in conv], rows, list(table.notes))
