"""Hand-written SVG charts: change-type spread pie and grouped metric bars."""

from __future__ import annotations

import math
from typing import List
from xml.sax.saxutils import escape, quoteattr

from aoevolve.errors import UsageError
from aoevolve.model import EntityKind, EvolutionReport

SLICE_COLORS = {"added": "#4e79a7", "deleted": "#e15759", "modified": "#f28e2b"}
BAR_COLORS = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
              "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac")
# aspect elements first, then base elements
BAR_KINDS = (EntityKind.ASPECT, EntityKind.POINTCUT, EntityKind.ADVICE, EntityKind.CLASS, EntityKind.METHOD)


def _header(width: int, height: int, title: str) -> List[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f"<title>{escape(title)}</title>",
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>',
    ]


def change_totals(report: EvolutionReport) -> dict:
    totals = {"added": 0, "deleted": 0, "modified": 0}
    for step in report.transitions:
        for counts in step.values():
            totals["added"] += counts.added
            totals["deleted"] += counts.deleted
            totals["modified"] += counts.modified
    return totals


def slice_angles(totals: dict) -> dict:
    """Degrees per change type, proportional to the counts."""
    total = sum(totals.values())
    if total == 0:
        return {k: 0.0 for k in totals}
    return {k: 360.0 * v / total for k, v in totals.items()}


def _point(cx, cy, r, deg):
    rad = math.radians(deg - 90.0)
    return cx + r * math.cos(rad), cy + r * math.sin(rad)


def render_change_spread_pie(report: EvolutionReport) -> str:
    if len(report.versions) < 2:
        raise UsageError("the change-spread chart needs at least two versions")
    totals = change_totals(report)
    total = sum(totals.values())
    angles = slice_angles(totals)
    cx, cy, r = 160.0, 170.0, 120.0
    out = _header(460, 320, "Spread of change types across all versions")

    if total == 0:
        out.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{r:.1f}" fill="none" stroke="#999" '
                   'stroke-dasharray="4 4" class="placeholder"/>')
        out.append(f'<text x="{cx:.1f}" y="{cy:.1f}" text-anchor="middle">no changes</text>')
    else:
        start = 0.0
        for name, count in totals.items():
            sweep = angles[name]
            if count == 0:
                continue
            pct = 100.0 * count / total
            attrs = (f'class="slice" data-type="{name}" data-count="{count}" '
                     f'data-start="{start!r}" data-angle="{sweep!r}" fill="{SLICE_COLORS[name]}" stroke="#fff"')
            if count == total:
                out.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{r:.1f}" {attrs}/>')
            else:
                x1, y1 = _point(cx, cy, r, start)
                x2, y2 = _point(cx, cy, r, start + sweep)
                large = 1 if sweep > 180.0 else 0
                out.append(f'<path d="M {cx:.3f} {cy:.3f} L {x1:.3f} {y1:.3f} '
                           f'A {r:.3f} {r:.3f} 0 {large} 1 {x2:.3f} {y2:.3f} Z" {attrs}/>')
            lx, ly = _point(cx, cy, r * 0.62, start + sweep / 2) if count != total else (cx, cy)
            out.append(f'<text x="{lx:.3f}" y="{ly:.3f}" text-anchor="middle" class="slice-label">'
                       f"{count} ({pct:.1f}%)</text>")
            start += sweep

    for i, (name, count) in enumerate(totals.items()):
        y = 110 + 24 * i
        pct = 100.0 * count / total if total else 0.0
        out.append(f'<rect x="310" y="{y - 11}" width="14" height="14" fill="{SLICE_COLORS[name]}"/>')
        out.append(f'<text x="330" y="{y}" class="legend">{name.capitalize()}: {count} ({pct:.1f}%)</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_metric_bars(report: EvolutionReport) -> str:
    versions = report.versions
    n = len(versions)
    bar_w, gap = 14.0, 24.0
    group_w = n * bar_w + gap
    left, top, plot_h = 50.0, 40.0, 220.0
    width = int(left + group_w * len(BAR_KINDS) + 20 + 110)
    height = int(top + plot_h + 50)
    out = _header(width, height, "Change metrics per version")
    base = top + plot_h

    for tick in range(5):
        v = tick / 4
        y = base - v * plot_h
        out.append(f'<line x1="{left:.1f}" y1="{y:.3f}" x2="{left + group_w * len(BAR_KINDS):.1f}" '
                   f'y2="{y:.3f}" stroke="#ddd"/>')
        out.append(f'<text x="{left - 6:.1f}" y="{y + 4:.3f}" text-anchor="end">{v:.2f}</text>')
    out.append(f'<line x1="{left:.1f}" y1="{top:.1f}" x2="{left:.1f}" y2="{base:.1f}" stroke="#333"/>')

    for g, kind in enumerate(BAR_KINDS):
        gx = left + gap / 2 + g * group_w
        out.append(f'<g class="group" data-metric="{kind.change_name}">')
        for i, version in enumerate(versions):
            value = report.metrics[i][kind].change
            shown = min(max(value, 0.0), 1.0)
            h = shown * plot_h
            out.append(
                f'<rect class="bar" data-metric="{kind.change_name}" data-version={quoteattr(version)} '
                f'data-value="{value!r}" x="{gx + i * bar_w:.3f}" y="{base - h:.4f}" '
                f'width="{bar_w:.3f}" height="{h:.4f}" fill="{BAR_COLORS[i % len(BAR_COLORS)]}"/>'
            )
        out.append(f'<text x="{gx + n * bar_w / 2:.3f}" y="{base + 18:.1f}" text-anchor="middle">'
                   f"{kind.change_name}</text>")
        out.append("</g>")

    lx = left + group_w * len(BAR_KINDS) + 20
    for i, version in enumerate(versions):
        y = top + 10 + 20 * i
        out.append(f'<rect x="{lx:.1f}" y="{y - 10:.1f}" width="12" height="12" '
                   f'fill="{BAR_COLORS[i % len(BAR_COLORS)]}"/>')
        out.append(f'<text x="{lx + 18:.1f}" y="{y:.1f}" class="legend">{escape(version)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

