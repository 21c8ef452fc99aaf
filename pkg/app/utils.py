"""
Report Envelope and Output Formatting

Serialization shared by the CLI and the HTTP service: the JSON report
envelope, the fixed-schema sweep CSV, and aligned plain-text tables.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from enum import Enum

from config.settings import TABLE_DIGITS, TOOL_VERSION


def utc_timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _plain(value):
    """Convert enums, tuples and numpy scalars into JSON-native values."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "item") and callable(value.item):
        return value.item()
    return value


@dataclass
class ReportEnvelope:
    """
    Machine-readable result of one command.

    Floats are written by json in their shortest round-trip form, so
    parsing the output gives back exactly the same values.
    """

    command: str
    parameters: dict
    rows: list[dict]
    tool_version: str = TOOL_VERSION
    timestamp: str = field(default_factory=utc_timestamp)
    summary: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return _plain(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ReportEnvelope:
        return cls(**json.loads(text))


def to_csv(rows: list[dict], columns) -> str:
    """RFC-4180 CSV with exactly the given columns, in order."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return _plain(value)


def format_value(value, digits: int = TABLE_DIGITS) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    return str(_plain(value))


def format_table(rows: list[dict], columns, digits: int = TABLE_DIGITS) -> str:
    """Aligned plain-text table, floats shown with `digits` significant digits."""
    cells = [[format_value(row.get(column), digits) for column in columns] for row in rows]
    widths = [max([len(column)] + [len(line[i]) for line in cells]) for i, column in enumerate(columns)]
    header = "  ".join(column.ljust(w) for column, w in zip(columns, widths))
    rule = "  ".join("-" * w for w in widths)
    body = ["  ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in cells]
    return "\n".join([header, rule, *body]) + "\n"


def format_interval(lo, hi, digits: int = TABLE_DIGITS) -> str:
    if lo is None:
        return "empty"
    if lo == hi:
        return f"{{{lo:.{digits}g}}}"
    return f"[{lo:.{digits}g}, {hi:.{digits}g}]"
