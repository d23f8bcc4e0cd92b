"""Row-table container with CSV/JSON round-trip at fixed precision.

Floats are written with 12 significant digits (%.12g), enough to round-trip
any value the models produce while keeping files diff-stable across runs.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field

_INT_RE = re.compile(r"^-?\d+$")


@dataclass
class Table:
    """Ordered columns over a list of dict rows."""

    columns: list
    rows: list = field(default_factory=list)

    def __post_init__(self):
        for r in self.rows:
            missing = set(self.columns) - set(r)
            if missing:
                raise ValueError(f"row missing columns: {sorted(missing)}")


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def parse_value(s: str):
    if s == "true":
        return True
    if s == "false":
        return False
    if _INT_RE.match(s):
        return int(s)
    try:
        return float(s)
    except ValueError:
        return s


def write_csv(table: Table, path) -> None:
    with open(path, "w", newline="") as f:
        _write_csv_file(table, f)


def _write_csv_file(table: Table, f) -> None:
    w = csv.writer(f)
    w.writerow(table.columns)
    for r in table.rows:
        w.writerow([format_value(r[c]) for c in table.columns])


def dumps_csv(table: Table) -> str:
    buf = io.StringIO()
    _write_csv_file(table, buf)
    return buf.getvalue()


def read_csv(path) -> Table:
    with open(path, newline="") as f:
        rd = csv.reader(f)
        header = next(rd)
        rows = [dict(zip(header, map(parse_value, line))) for line in rd]
    return Table(columns=header, rows=rows)


def write_json(table: Table, path) -> None:
    with open(path, "w") as f:
        f.write(dumps_json(table))


def dumps_json(table: Table) -> str:
    payload = {
        "columns": table.columns,
        "rows": [{c: _json_value(r[c]) for c in table.columns} for r in table.rows],
    }
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def _json_value(v):
    # floats go through the same %.12g gate as CSV so both formats agree
    if isinstance(v, bool):
        return v
    if isinstance(v, float):
        return float(format(v, ".12g"))
    return v


def read_json(path) -> Table:
    with open(path) as f:
        payload = json.load(f)
    return Table(columns=payload["columns"], rows=payload["rows"])
