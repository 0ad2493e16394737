"""Rendering of evolution reports to JSON, CSV, Markdown and SVG."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional

from aoevolve.errors import OutputError
from aoevolve.model import EvolutionReport
from aoevolve.report.charts import change_totals, render_change_spread_pie, render_metric_bars, slice_angles
from aoevolve.report.serialize import (
    SCHEMA_VERSION,
    load_counts,
    report_from_dict,
    report_from_json,
    report_to_dict,
    report_to_json,
)
from aoevolve.report.tables import fmt_metric, render_csv, render_markdown, table_rows

FORMATS = ("json", "csv", "md")


@dataclass(frozen=True)
class RenderOptions:
    format: str = "md"
    charts: bool = False
    out_dir: Path = Path("ao-evolve-out")
    precision: int = 4
    stamp: Optional[str] = None

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        if not 1 <= self.precision <= 10:
            raise ValueError(f"precision must be in [1, 10], got {self.precision}")
        object.__setattr__(self, "out_dir", Path(self.out_dir))


def render_tables(report: EvolutionReport, opts: RenderOptions) -> Dict[str, str]:
    """Documents to write, keyed by file name.

    ``report.json`` is always included; ``tables.csv`` or ``tables.md``
    follow ``opts.format``; the two SVG charts are added when
    ``opts.charts`` is set (the pie only for two or more versions).
    """
    docs = {"report.json": report_to_json(report, opts.stamp)}
    if opts.format == "csv":
        docs["tables.csv"] = render_csv(report, opts.precision)
    elif opts.format == "md":
        docs["tables.md"] = render_markdown(report, opts.precision)
    if opts.charts:
        if len(report.versions) >= 2:
            docs["change_spread.svg"] = render_change_spread_pie(report)
        docs["metric_bars.svg"] = render_metric_bars(report)
    return docs


def write_outputs(report: EvolutionReport, opts: RenderOptions) -> List[Path]:
    docs = render_tables(report, opts)
    written = []
    try:
        opts.out_dir.mkdir(parents=True, exist_ok=True)
        for name, text in docs.items():
            path = opts.out_dir / name
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            written.append(path)
    except OSError as exc:
        raise OutputError(f"cannot write to {exc.filename or opts.out_dir}: {exc.strerror}") from None
    return written


__all__ = [
    "FORMATS",
    "SCHEMA_VERSION",
    "RenderOptions",
    "change_totals",
    "fmt_metric",
    "load_counts",
    "render_change_spread_pie",
    "render_csv",
    "render_markdown",
    "render_metric_bars",
    "render_tables",
    "report_from_dict",
    "report_from_json",
    "report_to_dict",
    "report_to_json",
    "slice_angles",
    "table_rows",
    "write_outputs",
]
