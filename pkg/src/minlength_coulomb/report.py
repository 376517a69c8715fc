"""Deterministic CSV / JSON tables and verification run reports."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

__all__ = ["CheckRecord", "RunReport", "format_float", "render_table", "to_json"]


def format_float(x: float) -> str:
    """17 significant digits, enough for an exact round trip."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def _json_value(v: Any) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, float):
        return format_float(v) if math.isfinite(v) else "null"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    return json.dumps(str(v))


def to_json(obj: Any) -> str:
    """JSON text with insertion-ordered keys and 17-digit floats."""
    return _json_value(obj) + "\n"


def _csv_cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v)
    return "" if v is None else str(v)


def render_table(
    columns: Sequence[str], rows: Iterable[dict], fmt: str = "csv", meta: dict | None = None
) -> str:
    rows = list(rows)
    if fmt == "json":
        return to_json({"meta": meta or {}, "rows": [{c: r.get(c) for c in columns} for r in rows]})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_csv_cell(r.get(c)) for c in columns])
    return buf.getvalue()


@dataclass(frozen=True)
class CheckRecord:
    name: str
    measured: float
    expected: float
    tolerance: float
    passed: bool
    comparator: str = "abs_diff_le"  # |measured - expected| <= tolerance
    note: str = ""

    @classmethod
    def close(
        cls, name: str, measured: float, expected: float, tolerance: float, note: str = "", converged: bool = True
    ):
        ok = converged and math.isfinite(measured) and abs(measured - expected) <= tolerance
        if not converged:
            note = (note + "; " if note else "") + "quadrature unconverged"
        return cls(name, float(measured), float(expected), float(tolerance), ok, "abs_diff_le", note)

    @classmethod
    def at_least(cls, name: str, measured: float, bound: float, note: str = "", converged: bool = True):
        if not converged:
            note = (note + "; " if note else "") + "quadrature unconverged"
        return cls(name, float(measured), float(bound), float(bound), converged and measured >= bound, "ge", note)

    def as_row(self) -> dict:
        return {
            "name": self.name,
            "measured": self.measured,
            "expected": self.expected,
            "tolerance": self.tolerance,
            "comparator": self.comparator,
            "pass": self.passed,
            "note": self.note,
        }


COLUMNS = ("name", "measured", "expected", "tolerance", "comparator", "pass", "note")


@dataclass
class RunReport:
    command: str
    parameters: dict
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def add(self, record: CheckRecord) -> None:
        self.records.append(record)

    def extend(self, records: Iterable[CheckRecord]) -> None:
        self.records.extend(records)

    def meta(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "status": "pass" if self.passed else "fail",
            "checks": len(self.records),
        }

    def render(self, fmt: str = "csv") -> str:
        return render_table(COLUMNS, (r.as_row() for r in self.records), fmt, self.meta())
