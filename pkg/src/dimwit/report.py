"""Bar-chart report of measured witness values against dimension bounds.

The SVG is written by hand from a fixed template so output is byte-stable.
One panel per witness: a horizontal bar per row ending at the measured
value, a ±1σ error bar, a small marker at the theoretical value, and dashed
vertical lines at every catalog bound.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

from .witness import CLASSICAL, algebraic_max, catalog

CSV_HEADER = ["label", "value", "sigma", "theory"]

# chart geometry, in px
WIDTH = 820
MARGIN_LEFT = 190
MARGIN_RIGHT = 40
TOP = 20
PANEL_TITLE = 34
BOUND_LABEL_BAND = 22
ROW_HEIGHT = 34
BAR_HEIGHT = 18
AXIS_BAND = 42
PANEL_GAP = 16
CAP = 5

BAR_FILL = "#7fa7d6"
BOUND_STROKE = "#555555"

_CLASSICAL_NAMES = {1: "unit", 2: "bit", 3: "trit", 4: "quart"}
_QUANTUM_NAMES = {1: "unit", 2: "qubit", 3: "qutrit", 4: "ququart"}


@dataclass(frozen=True)
class ReportRow:
    label: str
    value: float
    sigma: float
    theory: float
    witness: str = ""


def write_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(CSV_HEADER)
        for r in rows:
            out.writerow([r.label, repr(float(r.value)), repr(float(r.sigma)), repr(float(r.theory))])


def read_csv(path) -> list:
    with open(path, newline="") as fh:
        rd = csv.reader(fh)
        header = next(rd)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header}")
        return [ReportRow(l, float(v), float(s), float(t)) for l, v, s, t in rd]


def bound_name(model: str, dim: int) -> str:
    names = _CLASSICAL_NAMES if model == CLASSICAL else _QUANTUM_NAMES
    return names.get(dim, f"{model[0]}{dim}")


def bound_lines(witness_name: str):
    """Distinct bound values with merged labels, e.g. (5.0, 'trit,qutrit')."""
    _, table = catalog(witness_name)
    lines = []
    for b in sorted(table.entries, key=lambda b: (b.value, b.model == "quantum", b.dim)):
        name = bound_name(b.model, b.dim)
        if lines and abs(lines[-1][0] - b.value) < 1e-9:
            lines[-1] = (lines[-1][0], lines[-1][1] + "," + name)
        else:
            lines.append((b.value, name))
    return lines


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _panel(witness_name: str, rows, y0: float) -> tuple:
    w, _ = catalog(witness_name)
    lines = bound_lines(witness_name)
    lo_candidates = [lines[0][0] - 1.0] + [r.value - r.sigma for r in rows if math.isfinite(r.value)]
    lo = math.floor(min(lo_candidates))
    hi = algebraic_max(w) + 0.5
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT

    def px(v):
        v = min(max(v, lo), hi)
        return MARGIN_LEFT + (v - lo) / (hi - lo) * plot_w

    out = []
    out.append(f'<text x="{MARGIN_LEFT}" y="{_fmt(y0 + 22)}" font-size="16" '
               f'font-weight="bold">{escape(w.name.upper())}</text>')
    plot_top = y0 + PANEL_TITLE + BOUND_LABEL_BAND
    plot_bottom = plot_top + ROW_HEIGHT * len(rows)

    for value, name in lines:
        x = _fmt(px(value))
        out.append(f'<line x1="{x}" y1="{_fmt(plot_top - 4)}" x2="{x}" y2="{_fmt(plot_bottom)}" '
                   f'stroke="{BOUND_STROKE}" stroke-dasharray="5,4" stroke-width="1"/>')
        out.append(f'<text x="{x}" y="{_fmt(plot_top - 8)}" font-size="11" '
                   f'text-anchor="middle">{escape(name)}</text>')

    for i, r in enumerate(rows):
        cy = plot_top + ROW_HEIGHT * i + ROW_HEIGHT / 2
        out.append(f'<text x="{MARGIN_LEFT - 10}" y="{_fmt(cy + 4)}" font-size="12" '
                   f'text-anchor="end">{escape(r.label)}</text>')
        x_end = px(r.value)
        out.append(f'<rect x="{MARGIN_LEFT}" y="{_fmt(cy - BAR_HEIGHT / 2)}" '
                   f'width="{_fmt(x_end - MARGIN_LEFT)}" height="{BAR_HEIGHT}" fill="{BAR_FILL}"/>')
        xl, xr = _fmt(px(r.value - r.sigma)), _fmt(px(r.value + r.sigma))
        out.append(f'<line x1="{xl}" y1="{_fmt(cy)}" x2="{xr}" y2="{_fmt(cy)}" stroke="black" stroke-width="1.5"/>')
        for xc in (xl, xr):
            out.append(f'<line x1="{xc}" y1="{_fmt(cy - CAP)}" x2="{xc}" y2="{_fmt(cy + CAP)}" '
                       f'stroke="black" stroke-width="1.5"/>')
        if math.isfinite(r.theory):
            xt = px(r.theory)
            out.append(f'<path d="M {_fmt(xt)} {_fmt(cy - 4)} L {_fmt(xt + 4)} {_fmt(cy)} '
                       f'L {_fmt(xt)} {_fmt(cy + 4)} L {_fmt(xt - 4)} {_fmt(cy)} Z" fill="#c0392b"/>')

    out.append(f'<line x1="{MARGIN_LEFT}" y1="{_fmt(plot_bottom)}" x2="{WIDTH - MARGIN_RIGHT}" '
               f'y2="{_fmt(plot_bottom)}" stroke="black" stroke-width="1"/>')
    for t in range(int(math.ceil(lo)), int(math.floor(hi)) + 1):
        x = _fmt(px(t))
        out.append(f'<line x1="{x}" y1="{_fmt(plot_bottom)}" x2="{x}" y2="{_fmt(plot_bottom + 5)}" stroke="black"/>')
        out.append(f'<text x="{x}" y="{_fmt(plot_bottom + 18)}" font-size="11" text-anchor="middle">{t}</text>')
    height = PANEL_TITLE + BOUND_LABEL_BAND + ROW_HEIGHT * len(rows) + AXIS_BAND
    return out, height


def group_rows(rows):
    groups = {}
    for r in rows:
        groups.setdefault(r.witness, []).append(r)
    return groups


def render_svg(rows) -> str:
    """SVG document with one panel per witness, panels in first-seen order."""
    groups = group_rows(rows)
    for name in groups:
        catalog(name)
    body, y = [], TOP
    for name, grp in groups.items():
        items, h = _panel(name, grp, y)
        body.extend(items)
        y += h + PANEL_GAP
    height = int(math.ceil(y))
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
            f'viewBox="0 0 {WIDTH} {height}" font-family="Helvetica, Arial, sans-serif">')
    bg = f'<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>'
    return "\n".join([head, bg, *body, "</svg>"]) + "\n"


def write_svg(rows, path) -> None:
    Path(path).write_text(render_svg(rows))
