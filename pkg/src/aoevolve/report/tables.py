"""Markdown and CSV renderings of the count and metric tables.

Six tables are produced: entity counts per version, entities added, deleted
and modified per transition, maturity indices and change metrics per
version. Numbers are rounded half away from zero at render time only.
"""

from __future__ import annotations

import csv
import io
from decimal import ROUND_HALF_UP, Decimal
from typing import List, Sequence

from aoevolve.metrics import CONVENTIONS
from aoevolve.model import KINDS, EvolutionReport

TABLE_TITLES = {
    "entities": "Entity counts per version",
    "added": "Entities added per transition",
    "deleted": "Entities deleted per transition",
    "modified": "Entities modified per transition",
    "maturity": "Maturity index per version",
    "change": "Change metric per version",
}


def fmt_metric(value: float, precision: int = 4) -> str:
    """Round half away from zero on the exact binary value."""
    if not 1 <= precision <= 10:
        raise ValueError(f"precision must be in [1, 10], got {precision}")
    q = Decimal(value).quantize(Decimal(1).scaleb(-precision), rounding=ROUND_HALF_UP)
    if q.is_zero():
        q = abs(q)
    return f"{q:f}"


def table_rows(report: EvolutionReport, precision: int = 4):
    """Yield ``(table, row label, cells)`` with one cell per version.

    Transition tables put the step into version *v* under column *v*; the
    first version's cell is ``None``.
    """
    for k in KINDS:
        yield "entities", k.label, [str(inv[k]) for inv in report.inventories]
    for field in ("added", "deleted", "modified"):
        for k in KINDS:
            yield field, k.label, [None] + [str(getattr(t[k], field)) for t in report.transitions]
    for k in KINDS:
        yield "maturity", k.maturity_name, [fmt_metric(m[k].maturity, precision) for m in report.metrics]
    for k in KINDS:
        yield "change", k.change_name, [fmt_metric(m[k].change, precision) for m in report.metrics]


def render_csv(report: EvolutionReport, precision: int = 4) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["table", "row", *report.versions])
    for table, label, cells in table_rows(report, precision):
        w.writerow([table, label, *("" if c is None else c for c in cells)])
    return buf.getvalue()


def _md_table(first: str, columns: Sequence[str], rows: List[List[str]]) -> List[str]:
    out = ["| " + " | ".join([first, *columns]) + " |"]
    out.append("|" + "---|" + "---:|" * len(columns))
    out.extend("| " + " | ".join(r) + " |" for r in rows)
    return out


def render_markdown(report: EvolutionReport, precision: int = 4) -> str:
    versions = list(report.versions)
    steps = [f"{a} → {b}" for a, b in report.transition_labels()]
    grouped = {}
    for table, label, cells in table_rows(report, precision):
        grouped.setdefault(table, []).append([label, *(c for c in cells if c is not None)])

    lines = ["# Evolution report", ""]
    for table, rows in grouped.items():
        lines.append(f"## {TABLE_TITLES[table]}")
        lines.append("")
        if table in ("added", "deleted", "modified"):
            lines.extend(_md_table("Entity", steps, rows))
        elif table == "entities":
            lines.extend(_md_table("Entity", versions, rows))
        else:
            lines.extend(_md_table("Metric", versions, rows))
        lines.append("")
    lines.append("## Conventions")
    lines.append("")
    lines.append(
        f"- A kind with no entities in a version gets maturity {CONVENTIONS['zero_denominator_maturity']:g} "
        f"and change {CONVENTIONS['zero_denominator_change']:g}."
    )
    lines.append(
        f"- The first version gets maturity {CONVENTIONS['first_version_maturity']:g} "
        f"and change {CONVENTIONS['first_version_change']:g} for every kind."
    )
    lines.append("- Deletions do not enter any metric.")
    if report.warnings:
        lines.append("")
        lines.append("## Warnings")
        lines.append("")
        lines.extend(f"- {w}" for w in report.warnings)
    return "\n".join(lines) + "\n"
