"""Tabular run records and their CSV/JSON serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any


@dataclass
class RunRecord:
    meta: dict[str, Any]
    columns: list[str]
    rows: list[list[Any]] = field(default_factory=list)

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise ValueError(f"row {i} has {len(row)} fields, expected {len(self.columns)}")

    def column(self, name: str) -> list[Any]:
        k = self.columns.index(name)
        return [row[k] for row in self.rows]


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _json_value(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def to_csv(rec: RunRecord) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(rec.columns)
    for row in rec.rows:
        w.writerow([_cell(x) for x in row])
    return buf.getvalue()


def to_json(rec: RunRecord) -> str:
    payload = {
        "meta": rec.meta,
        "columns": rec.columns,
        "rows": [[_json_value(x) for x in row] for row in rec.rows],
    }
    # repr of a Python float round-trips exactly, which keeps output deterministic
    return json.dumps(payload, indent=1, sort_keys=False) + "\n"


def dumps(rec: RunRecord, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(rec)
    if fmt == "json":
        return to_json(rec)
    raise ValueError(f"unknown format {fmt!r}")
