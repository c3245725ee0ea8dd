"""Rectangular numeric tables with bit-stable CSV and JSON serialization.

Float format: every value is written as ``%.16e`` (17 significant digits),
which round-trips IEEE doubles exactly and is identical across platforms.

CSV layout (LF line endings):

    # key = value            zero or more metadata lines
    col_a,col_b              header row
    # unit_a,unit_b          units row
    1.0000000000000000e+00,...

JSON layout: one object with ``columns``, ``units``, ``meta`` and ``rows``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

FLOAT_FORMAT = "%.16e"
FORMATS = ("csv", "json")


def format_float(x: float) -> str:
    return FLOAT_FORMAT % float(x)


@dataclass
class SnapshotTable:
    """Column names, units and a rectangular block of finite numbers."""

    columns: list[str]
    units: list[str]
    rows: np.ndarray  # float, shape (n_rows, n_columns)
    meta: list[tuple[str, str]] = field(default_factory=list)

    def __post_init__(self):
        if len(self.columns) != len(self.units):
            raise ValueError(
                f"{len(self.columns)} columns but {len(self.units)} units"
            )
        rows = np.asarray(self.rows, dtype=float)
        if rows.size == 0:
            rows = rows.reshape(0, len(self.columns))
        if rows.ndim != 2 or rows.shape[1] != len(self.columns):
            raise ValueError(
                f"rows must be 2-D with {len(self.columns)} columns, got shape {rows.shape}"
            )
        if not np.all(np.isfinite(rows)):
            raise ValueError("table contains non-finite values")
        self.rows = rows


def write_table(table: SnapshotTable, fmt: str) -> bytes:
    if fmt == "csv":
        return _write_csv(table)
    if fmt == "json":
        return _write_json(table)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def read_table(data: bytes, fmt: str) -> SnapshotTable:
    if fmt == "csv":
        return _read_csv(data)
    if fmt == "json":
        return _read_json(data)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _write_csv(table: SnapshotTable) -> bytes:
    lines = [f"# {key} = {value}" for key, value in table.meta]
    lines.append(",".join(table.columns))
    lines.append("# " + ",".join(table.units))
    for row in table.rows:
        lines.append(",".join(format_float(v) for v in row))
    return ("\n".join(lines) + "\n").encode("utf-8")


def _read_csv(data: bytes) -> SnapshotTable:
    lines = data.decode("utf-8").splitlines()
    meta: list[tuple[str, str]] = []
    i = 0
    while i < len(lines) and lines[i].startswith("# ") and " = " in lines[i]:
        key, _, value = lines[i][2:].partition(" = ")
        meta.append((key, value))
        i += 1
    if i + 1 >= len(lines) or not lines[i + 1].startswith("# "):
        raise ValueError("malformed CSV table: missing header or units row")
    columns = lines[i].split(",")
    units = lines[i + 1][2:].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[i + 2 :] if line]
    body = np.asarray(rows, dtype=float) if rows else np.empty((0, len(columns)))
    return SnapshotTable(columns=columns, units=units, rows=body, meta=meta)


def _write_json(table: SnapshotTable) -> bytes:
    # assembled by hand so numbers use the documented float format
    parts = ['{"columns": ']
    parts.append(json.dumps(table.columns))
    parts.append(', "units": ')
    parts.append(json.dumps(table.units))
    parts.append(', "meta": {')
    parts.append(
        ", ".join(f"{json.dumps(k)}: {json.dumps(v)}" for k, v in table.meta)
    )
    parts.append('}, "rows": [')
    parts.append(
        ", ".join(
            "[" + ", ".join(format_float(v) for v in row) + "]" for row in table.rows
        )
    )
    parts.append("]}\n")
    return "".join(parts).encode("utf-8")


def _read_json(data: bytes) -> SnapshotTable:
    obj = json.loads(data.decode("utf-8"))
    return SnapshotTable(
        columns=list(obj["columns"]),
        units=list(obj["units"]),
        rows=np.asarray(obj["rows"], dtype=float).reshape(-1, len(obj["columns"])),
        meta=[(k, v) for k, v in obj["meta"].items()],
    )
