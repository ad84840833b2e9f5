"""CSV heatmaps and a deterministic SVG overlay rendered from them.

The SVG is drawn from CSV text alone, so re-reading a CSV and rendering it
again gives the same bytes. Field-to-pixel transform: ``SCALE`` px per metre,
with a ``PAD`` metre border, +y pointing up on screen.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable

from .worldmodel import FieldGeometry

SCALE = 50.0
PAD = 0.5

PASS_HEADER = ("kick_type", "dir_index", "power_index", "origin_x", "origin_y", "x", "y",
               "our_time", "opp_time", "score", "shoot_angle", "dist_to_goal", "refraction",
               "margin", "best")
RUN_HEADER = ("zone", "x", "y", "score", "dist_to_goal", "dist_to_ball", "angle_to_goal",
              "guard_time", "defense_exposure")


@dataclass(frozen=True)
class Style:
    flat_point: str = "#2ca02c"
    chip_point: str = "#ffd700"
    best_flat_line: str = "#00c000"
    best_chip_line: str = "#ffff00"
    field_fill: str = "#1f5f1f"
    line: str = "#ffffff"


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def to_csv(header: Iterable[str], rows: Iterable[Iterable]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def pass_heatmap_csv(scored, best_keys=()) -> str:
    """One row per scored feasible pass, placed at its receive point."""
    best_keys = set(best_keys)
    rows = []
    for sp in scored:
        c, f = sp.candidate, sp.features
        rows.append((c.kick_type.value, c.dir_index, c.power_index, c.origin.x, c.origin.y,
                     c.receive_point.x, c.receive_point.y, c.our_time, c.opp_time, sp.score,
                     f.shoot_angle_at_receive, f.dist_receive_to_goal, f.refraction_angle,
                     f.intercept_margin, 1 if c.sort_key in best_keys else 0))
    return to_csv(PASS_HEADER, rows)


def run_heatmap_csv(zone_rows) -> str:
    """``zone_rows`` yields (zone label, ScoredVertex)."""
    rows = []
    for label, v in zone_rows:
        f = v.features
        rows.append((getattr(label, "value", label), v.point.x, v.point.y, v.score, f.dist_to_goal,
                     f.dist_to_ball, f.angle_to_goal, f.guard_time, f.defense_exposure))
    return to_csv(RUN_HEADER, rows)


# -- SVG --------------------------------------------------------------------

def _px(x: float, fld: FieldGeometry) -> str:
    return f"{(x + fld.half_length + PAD) * SCALE:.2f}"


def _py(y: float, fld: FieldGeometry) -> str:
    return f"{(fld.half_width + PAD - y) * SCALE:.2f}"


def _field(fld: FieldGeometry, style: Style) -> list[str]:
    hl, hw = fld.half_length, fld.half_width
    x_lo, x_hi, y_lo, y_hi = fld.defense_area
    w = f"{(fld.length + 2 * PAD) * SCALE:.0f}"
    h = f"{(fld.width + 2 * PAD) * SCALE:.0f}"
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="{style.field_fill}"/>',
        f'<rect x="{_px(-hl, fld)}" y="{_py(hw, fld)}" width="{fld.length * SCALE:.2f}" '
        f'height="{fld.width * SCALE:.2f}" fill="none" stroke="{style.line}" stroke-width="2"/>',
        f'<line x1="{_px(0, fld)}" y1="{_py(hw, fld)}" x2="{_px(0, fld)}" y2="{_py(-hw, fld)}" '
        f'stroke="{style.line}" stroke-width="2"/>',
    ]
    for sign in (1, -1):
        out.append(
            f'<rect x="{_px(min(sign * x_lo, sign * x_hi), fld)}" y="{_py(y_hi, fld)}" '
            f'width="{fld.defense_area_depth * SCALE:.2f}" height="{fld.defense_area_width * SCALE:.2f}" '
            f'fill="none" stroke="{style.line}" stroke-width="2"/>')
    return out


def _score_color(s: float, lo: float, hi: float) -> str:
    """Blue for low scores, red for high ones."""
    k = 0.5 if hi <= lo else (s - lo) / (hi - lo)
    return f"#{round(255 * k):02x}00{round(255 * (1 - k)):02x}"


def render_svg(csv_text: str, fld: FieldGeometry | None = None, style: Style | None = None) -> str:
    """Overlay of a pass or run heatmap CSV on the field."""
    fld = fld or FieldGeometry()
    style = style or Style()
    rows = list(csv.DictReader(io.StringIO(csv_text)))
    out = _field(fld, style)
    if rows and "kick_type" in rows[0]:
        lines = []
        for r in rows:
            color = style.flat_point if r["kick_type"] == "flat" else style.chip_point
            x, y = float(r["x"]), float(r["y"])
            out.append(f'<circle cx="{_px(x, fld)}" cy="{_py(y, fld)}" r="2" fill="{color}"/>')
            if r["best"] == "1":
                lc = style.best_flat_line if r["kick_type"] == "flat" else style.best_chip_line
                ox, oy = float(r["origin_x"]), float(r["origin_y"])
                lines.append(f'<line x1="{_px(ox, fld)}" y1="{_py(oy, fld)}" x2="{_px(x, fld)}" '
                             f'y2="{_py(y, fld)}" stroke="{lc}" stroke-width="3"/>')
        out.extend(lines)
    elif rows:
        scores = [float(r["score"]) for r in rows]
        lo, hi = min(scores), max(scores)
        half = SCALE * 0.05
        for r, s in zip(rows, scores):
            x, y = float(r["x"]), float(r["y"])
            out.append(f'<rect x="{float(_px(x, fld)) - half:.2f}" y="{float(_py(y, fld)) - half:.2f}" '
                       f'width="{2 * half:.2f}" height="{2 * half:.2f}" fill="{_score_color(s, lo, hi)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
