"""CSV and JSON-lines writers with shortest round-trip float formatting."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, TextIO

FORMATS = ("csv", "jsonl")


def format_value(v) -> str:
    if isinstance(v, str):
        return v
    # repr of a Python float is the shortest string that parses back exactly
    return repr(float(v))


def write_records(records: Iterable[dict], columns, fh: TextIO, fmt: str = "csv") -> int:
    """Write records in the given column order; returns the number of rows."""
    n = 0
    if fmt == "csv":
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for rec in records:
            writer.writerow([format_value(rec[c]) for c in columns])
            n += 1
    elif fmt == "jsonl":
        for rec in records:
            obj = {c: (rec[c] if isinstance(rec[c], str) else float(rec[c])) for c in columns}
            fh.write(json.dumps(obj) + "\n")
            n += 1
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return n


def records_to_text(records, columns, fmt: str = "csv") -> str:
    buf = io.StringIO()
    write_records(records, columns, buf, fmt)
    return buf.getvalue()


def read_csv(text: str) -> tuple[list[str], list[dict]]:
    """Parse CSV produced by :func:`write_records`; numeric fields become floats."""
    reader = csv.reader(io.StringIO(text))
    columns = next(reader)
    rows = []
    for raw in reader:
        rec = {}
        for c, v in zip(columns, raw):
            try:
                rec[c] = float(v)
            except ValueError:
                rec[c] = v
        rows.append(rec)
    return columns, rows
