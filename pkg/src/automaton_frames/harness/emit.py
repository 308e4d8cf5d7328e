"""CSV traces and time-space diagrams.

Diagram conventions: space runs left to right, time runs upward, each
elementary body is one polyline through its continuous world line (slope
+-1 segments with corners at half-integer times), colored by automaton
color.  Periodic worlds show three spatial periods unless a window is
given; periodic copies are drawn as separate polylines and clipped to the
window.  The text form prints one lattice row per time step, latest on top:
``>`` a right-pointing body, ``<`` a left-pointing one, ``x`` both, ``.``
empty.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Sequence
from fractions import Fraction
from pathlib import Path
from xml.sax.saxutils import escape

from ..kinematics import Trace, elementary_observables, world_line
from ..lattice import Part

CSV_COLUMNS = ("t", "body_id", "color", "x", "dir", "turned", "tau", "s")
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2")


def _as_traces(traces: Trace | Iterable[Trace]) -> list[Trace]:
    return [traces] if isinstance(traces, Trace) else list(traces)


def trace_rows(trace: Trace) -> list[tuple[int, int, int, int, str, int, int, int]]:
    """One row per stored body per time step, ordered by time then storage order.

    ``turned`` at ``t`` says whether the body turns between ``t`` and ``t+1``;
    the final row looks one step past the horizon.
    """
    obs = {bid: elementary_observables(trace, bid) for bid in trace.ids()}
    rows = []
    for t in range(trace.horizon + 1):
        for bid in trace.ids():
            o = obs[bid]
            e = trace.edge(bid, t)
            rows.append((t, bid, trace.color(bid), e.x, f"{e.dir:+d}",
                         int(trace.turned(bid, t)), o.tau[t], o.s[t]))
    return rows


def emit_trace_csv(traces: Trace | Iterable[Trace], path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for trace in _as_traces(traces):
            writer.writerows(trace_rows(trace))
    return path


def default_window(trace: Trace) -> tuple[int, int]:
    """Inclusive integer x-range shown by default."""
    init = trace.initial
    if init.period is not None:
        lo = min((pl.edge.x for pl in init.placements), default=0)
        return lo, lo + 3 * init.period - 1
    xs = [pl.edge.x for snap in trace.snapshots for pl in snap.placements]
    if not xs:
        return 0, 0
    return min(xs) - 1, max(xs) + 1


def _parts_in_window(trace: Trace, window: tuple[int, int]) -> list[Part]:
    period = trace.initial.period
    parts = []
    for bid in trace.ids():
        xs = [trace.edge(bid, t).x for t in range(trace.horizon + 1)]
        if period is None:
            if max(xs) >= window[0] - 1 and min(xs) <= window[1] + 1:
                parts.append(Part(bid, 0))
            continue
        m_lo = math.floor((window[0] - 1 - max(xs)) / period)
        m_hi = math.ceil((window[1] + 1 - min(xs)) / period)
        parts.extend(Part(bid, m) for m in range(m_lo, m_hi + 1))
    return parts


def render_text(trace: Trace, window: tuple[int, int] | None = None) -> str:
    lo, hi = window or default_window(trace)
    period = trace.initial.period
    width = len(str(trace.horizon))
    lines = []
    for t in range(trace.horizon, -1, -1):
        dirs: dict[int, set[int]] = {}
        for pl in trace.snapshots[t].placements:
            key = pl.edge.x % period if period else pl.edge.x
            dirs.setdefault(key, set()).add(pl.edge.dir)
        cells = []
        for x in range(lo, hi + 1):
            d = dirs.get(x % period if period else x, set())
            cells.append("x" if len(d) == 2 else ">" if 1 in d else "<" if -1 in d else ".")
        lines.append(f"{t:>{width}} |{''.join(cells)}|")
    lines.append(f"{'':>{width}}  x = {lo}..{hi}")
    return "\n".join(lines) + "\n"


def _fmt(v: Fraction | float) -> str:
    return f"{float(v):.2f}".rstrip("0").rstrip(".")


def render_svg(panels: Sequence[tuple[str, Trace]], window: tuple[int, int] | None = None,
               scale: int = 24) -> str:
    """Side-by-side time-space diagrams, one panel per ``(title, trace)``."""
    margin, gap, title_h = 30, 40, 20
    boxes = []
    x_cursor = margin
    height = 0
    for title, trace in panels:
        win = window or default_window(trace)
        w = (win[1] - win[0] + 1) * scale
        h = (trace.horizon + 1) * scale
        boxes.append((title, trace, win, x_cursor, w, h))
        x_cursor += w + gap
        height = max(height, h)
    total_w = x_cursor - gap + margin
    total_h = height + 2 * margin + title_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" height="{total_h}" '
        f'viewBox="0 0 {total_w} {total_h}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for i, (title, trace, (lo, hi), left, w, h) in enumerate(boxes):
        top = margin + title_h
        bottom = top + h
        # x = lo - 1/2 sits on the left border, t = -1/2 on the bottom border.
        px = lambda x: left + (x - lo + Fraction(1, 2)) * scale  # noqa: E731
        py = lambda t: bottom - (t + Fraction(1, 2)) * scale  # noqa: E731
        out.append(f'<text x="{left}" y="{margin + 12}" font-family="sans-serif" '
                   f'font-size="13">{escape(title)}</text>')
        out.append(f'<clipPath id="clip{i}"><rect x="{left}" y="{top}" width="{w}" '
                   f'height="{h}"/></clipPath>')
        out.append(f'<rect x="{left}" y="{top}" width="{w}" height="{h}" fill="none" '
                   'stroke="#999" stroke-width="1"/>')
        for t in range(0, trace.horizon + 1, max(1, trace.horizon // 6 or 1)):
            out.append(f'<text x="{left - 4}" y="{_fmt(py(t) + 4)}" font-family="sans-serif" '
                       f'font-size="9" text-anchor="end">{t}</text>')
        for x in range(lo, hi + 1):
            out.append(f'<line x1="{_fmt(px(x))}" y1="{bottom}" x2="{_fmt(px(x))}" '
                       f'y2="{bottom + 4}" stroke="#999"/>')
        out.append(f'<g clip-path="url(#clip{i})" fill="none" stroke-width="2">')
        for part in _parts_in_window(trace, (lo, hi)):
            line = world_line(trace, part, 0, trace.horizon)
            pts = " ".join(f"{_fmt(px(p.x))},{_fmt(py(p.t))}" for p in line)
            color = PALETTE[(trace.color(part) - 1) % len(PALETTE)]
            if len(line) == 1:
                p = line[0]
                out.append(f'<circle cx="{_fmt(px(p.x))}" cy="{_fmt(py(p.t))}" r="3" '
                           f'fill="{color}" data-body="{part}"/>')
            else:
                out.append(f'<polyline points="{pts}" stroke="{color}" data-body="{part}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_diagram(traces: Trace | Sequence[tuple[str, Trace]], path: str | Path,
                 format: str = "svg", window: tuple[int, int] | None = None) -> Path:
    panels = [("", traces)] if isinstance(traces, Trace) else list(traces)
    if format == "svg":
        text = render_svg(panels, window)
    elif format == "text":
        text = "\n".join((f"{title}\n" if title else "") + render_text(tr, window)
                         for title, tr in panels)
    else:
        raise ValueError(f"unknown diagram format {format!r} (svg or text)")
    path = Path(path)
    path.write_text(text)
    return path
