"""Serialization of run results: CSV time series, SVG charts, metadata.

The CLI and the HTTP service both emit CSV through this module so the two
surfaces stay byte-identical for the same run.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .engine import RunResult

_PALETTE = (
    "#1b6ca8", "#c23b22", "#2e8540", "#8e44ad",
    "#d35400", "#16a085", "#7f8c8d", "#aa3377",
)


def _cell(value: float, biotic: bool) -> str:
    if biotic:
        return str(int(value))
    return repr(float(value))


def series_csv(result: RunResult) -> str:
    """RFC-4180 series table: header `month,<name>,...`, one row per month."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["month", *(s.name for s in result.series)])
    for month in range(result.duration + 1):
        writer.writerow(
            [str(month), *(_cell(s.values[month], s.biotic) for s in result.series)]
        )
    return buf.getvalue()


def summary_csv(summary: dict[str, dict[str, list[float]]]) -> str:
    """Batch aggregate table: mean/min/max column triple per population."""
    names = list(summary)
    buf = io.StringIO()
    writer = csv.writer(buf)
    header = ["month"]
    for name in names:
        header.extend([f"{name}_mean", f"{name}_min", f"{name}_max"])
    writer.writerow(header)
    months = len(next(iter(summary.values()))["mean"]) if names else 0
    for month in range(months):
        row = [str(month)]
        for name in names:
            stats = summary[name]
            row.extend(
                repr(float(stats[key][month])) for key in ("mean", "min", "max")
            )
        writer.writerow(row)
    return buf.getvalue()


def run_metadata(result: RunResult) -> dict:
    return {
        "seed": result.seed,
        "duration": result.duration,
        "program_hash": result.program_hash,
        "settings": result.settings,
    }


def write_run_files(result: RunResult, csv_path: str | Path, svg_path: str | Path | None = None) -> None:
    """Write the series CSV, a `<csv>.meta.json` sidecar, and optionally an SVG."""
    csv_path = Path(csv_path)
    csv_path.write_text(series_csv(result), encoding="utf-8", newline="")
    sidecar = csv_path.with_name(csv_path.name + ".meta.json")
    sidecar.write_text(
        json.dumps(run_metadata(result), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    if svg_path is not None:
        Path(svg_path).write_text(series_svg(result), encoding="utf-8")


def series_svg(result: RunResult, width: int = 860, height: int = 480) -> str:
    """Minimal line chart: one polyline per population, legend, month axis."""
    left, right, top, bottom = 64, 180, 24, 44
    plot_w = width - left - right
    plot_h = height - top - bottom
    months = result.duration
    peak = max((max(s.values) for s in result.series), default=0.0)
    if peak <= 0.0:
        peak = 1.0

    def x_of(month: float) -> float:
        return left + (month / months) * plot_w if months else left

    def y_of(value: float) -> float:
        return top + plot_h - (value / peak) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" '
        f'font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#444" stroke-width="1"/>',
    ]
    # horizontal gridlines and y labels at quarters of the peak
    for i in range(5):
        value = peak * i / 4
        y = y_of(value)
        parts.append(
            f'<line x1="{left}" y1="{y:.1f}" x2="{left + plot_w}" y2="{y:.1f}" '
            'stroke="#ddd" stroke-width="0.5"/>'
        )
        parts.append(
            f'<text x="{left - 6}" y="{y + 4:.1f}" text-anchor="end">{value:g}</text>'
        )
    # month ticks yearly
    tick_step = 12 if months >= 12 else max(1, months)
    for month in range(0, months + 1, tick_step):
        x = x_of(month)
        parts.append(
            f'<line x1="{x:.1f}" y1="{top + plot_h}" x2="{x:.1f}" y2="{top + plot_h + 5}" '
            'stroke="#444" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.1f}" y="{top + plot_h + 18}" text-anchor="middle">{month}</text>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2:.1f}" y="{height - 8}" text-anchor="middle">month</text>'
    )

    for i, series in enumerate(result.series):
        color = _PALETTE[i % len(_PALETTE)]
        points = " ".join(
            f"{x_of(m):.2f},{y_of(v):.2f}" for m, v in enumerate(series.values)
        )
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        ly = top + 16 + i * 18
        lx = left + plot_w + 14
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="3"/>'
        )
        parts.append(f'<text x="{lx + 28}" y="{ly}">{_escape(series.name)}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
