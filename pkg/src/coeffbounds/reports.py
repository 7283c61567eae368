"""Deterministic report rendering.

Suites hand over pre-formatted strings (exact fractions on the rational
backend, 17-significant-digit floats otherwise); this module only arranges
them. Given identical inputs the rendered CSV/JSON is byte-identical:
stable column order, ``\n`` line endings, sorted JSON keys, and no
timestamps — wall-clock data lives on the report objects for console
display but never reaches the serialized output.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

SUITE_COLUMNS = (
    "suite",
    "n",
    "alpha",
    "beta",
    "k",
    "case",
    "observed",
    "reference",
    "margin",
    "status",
)


def fmt_float(x) -> str:
    return format(float(x), ".17g")


@dataclass(frozen=True)
class SuiteEntry:
    """One assertion (or informational) row of a verification suite."""

    suite: str
    n: str
    alpha: str
    beta: str
    k: str
    case: str
    observed: str
    reference: str
    margin: str
    status: str  # "pass" | "fail" | "info"

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in SUITE_COLUMNS}


@dataclass(frozen=True)
class SuiteReport:
    """Outcome of one suite at one parameter point.

    ``elapsed`` is for console display only and is deliberately left out of
    both serializations so reruns stay byte-identical.
    """

    suite: str
    point: dict
    passed: bool
    worst_margin: float | None
    witness: dict | None
    entries: tuple
    elapsed: float = 0.0


def csv_text(columns, rows) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return out.getvalue()


def json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def suite_csv(reports) -> str:
    rows = [entry.as_dict() for report in reports for entry in report.entries]
    return csv_text(SUITE_COLUMNS, rows)


def suite_json(reports) -> str:
    suites: dict = {}
    for report in reports:
        item = {
            **report.point,
            "passed": report.passed,
            "worst_margin": None if report.worst_margin is None else fmt_float(report.worst_margin),
            "witness": report.witness,
            "entries": [entry.as_dict() for entry in report.entries],
        }
        suites.setdefault(report.suite, []).append(item)
    return json_text({"suites": suites})


def table_csv(columns, rows) -> str:
    return csv_text(columns, rows)


def table_json(rows) -> str:
    return json_text({"rows": list(rows)})
