"""Deterministic sunburst geometry and SVG rendering for a model snapshot.

Angles are degrees, clockwise, 0 at 12 o'clock. Children partition their
parent's span contiguously in insertion order. DAG nodes get one sector
per root path, so sibling partitions stay exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from xml.sax.saxutils import escape

from .errors import InvalidValue
from .model import ROOT_ID, ProblemModel

FULL_CIRCLE = 360.0
SPAN_EPS = 1e-9  # degrees; smaller uncovered remainders are not rendered


class SectorKind(Enum):
    GOAL = "GOAL"
    OBSTACLE = "OBSTACLE"
    SOLUTION = "SOLUTION"
    RESOURCE = "RESOURCE"
    UNCOVERED = "UNCOVERED"


@dataclass(frozen=True, slots=True)
class LayoutConfig:
    goal_radius: float = 60.0
    ring_thickness: float = 40.0
    start_angle_deg: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.goal_radius) and self.goal_radius > 0):
            raise InvalidValue(f"goalRadius must be > 0, got {self.goal_radius!r}")
        if not (math.isfinite(self.ring_thickness) and self.ring_thickness > 0):
            raise InvalidValue(
                f"ringThickness must be > 0, got {self.ring_thickness!r}")


@dataclass(frozen=True, slots=True)
class Sector:
    path_id: str
    kind: SectorKind
    inner_radius: float
    outer_radius: float
    start_angle_deg: float
    span_deg: float
    label: str


def _ring(config: LayoutConfig, depth: int) -> tuple[float, float]:
    inner = config.goal_radius + (depth - 1) * config.ring_thickness
    return inner, inner + config.ring_thickness


def compute_layout(model: ProblemModel,
                   config: LayoutConfig | None = None) -> list[Sector]:
    config = config or LayoutConfig()
    sectors: list[Sector] = [Sector(
        path_id=ROOT_ID, kind=SectorKind.GOAL,
        inner_radius=0.0, outer_radius=config.goal_radius,
        start_angle_deg=config.start_angle_deg, span_deg=FULL_CIRCLE,
        label=model.title or model.goal.text)]

    def emit_solutions(leaf_path: str, leaf_id: str,
                       start: float, span: float, depth: int) -> None:
        inner, outer = _ring(config, depth)
        cursor = start
        for sol in model.solutions_of(leaf_id):
            sol_span = span * sol.share
            sol_path = f"{leaf_path}/{sol.id}"
            sectors.append(Sector(
                path_id=sol_path, kind=SectorKind.SOLUTION,
                inner_radius=inner, outer_radius=outer,
                start_angle_deg=cursor, span_deg=sol_span, label=sol.label))
            emit_resources(sol_path, sol.id, cursor, sol_span, depth + 1)
            cursor += sol_span
        remainder = start + span - cursor
        if remainder > SPAN_EPS:
            sectors.append(Sector(
                path_id=f"{leaf_path}/_uncovered", kind=SectorKind.UNCOVERED,
                inner_radius=inner, outer_radius=outer,
                start_angle_deg=cursor, span_deg=remainder, label="unsolved"))

    def emit_resources(sol_path: str, solution_id: str,
                       start: float, span: float, depth: int) -> None:
        inner, outer = _ring(config, depth)
        cursor = start
        for assignment in model.assignments_of(solution_id):
            res = model.resource(assignment.resource_id)
            res_span = span * assignment.share
            sectors.append(Sector(
                path_id=f"{sol_path}/{assignment.resource_id}",
                kind=SectorKind.RESOURCE,
                inner_radius=inner, outer_radius=outer,
                start_angle_deg=cursor, span_deg=res_span,
                label=res.name if res else assignment.resource_id))
            cursor += res_span

    def walk(parent_path: str, parent_id: str,
             start: float, span: float, depth: int) -> None:
        children = model.children_of(parent_id)
        if not children:
            if parent_id != ROOT_ID:
                emit_solutions(parent_path, parent_id, start, span, depth)
            return
        inner, outer = _ring(config, depth)
        # Normalize by the sibling sum so spans partition the parent span
        # exactly even when weights carry float drift within tolerance.
        total = math.fsum(
            next(link.weight for link in child.parents
                 if link.parent_id == parent_id)
            for child in children)
        cursor = start
        for child in children:
            weight = next(link.weight for link in child.parents
                          if link.parent_id == parent_id)
            child_span = span * (weight / total)
            child_path = f"{parent_path}/{child.id}"
            sectors.append(Sector(
                path_id=child_path, kind=SectorKind.OBSTACLE,
                inner_radius=inner, outer_radius=outer,
                start_angle_deg=cursor, span_deg=child_span,
                label=child.label))
            walk(child_path, child.id, cursor, child_span, depth + 1)
            cursor += child_span

    walk(ROOT_ID, ROOT_ID, config.start_angle_deg, FULL_CIRCLE, 1)
    return sectors


# --- SVG ----------------------------------------------------------------------

_STYLE = (".goal{fill:#fde68a;stroke:#b45309;stroke-width:1}"
          ".obstacle{fill:#bfdbfe;stroke:#1d4ed8;stroke-width:1}"
          ".solution{fill:#bbf7d0;stroke:#15803d;stroke-width:1}"
          ".resource{fill:#fbcfe8;stroke:#be185d;stroke-width:1}"
          ".uncovered{fill:#e5e7eb;stroke:#6b7280;stroke-width:1;"
          "stroke-dasharray:3 2}"
          "text{font:10px sans-serif;text-anchor:middle;"
          "dominant-baseline:middle;fill:#111}")


def _fmt(x: float) -> str:
    v = round(x, 4)
    if v == 0.0:
        v = 0.0
    return f"{v:.4f}"


def _point(cx: float, cy: float, r: float, angle_deg: float) -> tuple[float, float]:
    t = math.radians(angle_deg)
    return cx + r * math.sin(t), cy - r * math.cos(t)


def _circle_path(cx: float, cy: float, r: float, clockwise: bool) -> str:
    sweep = 1 if clockwise else 0
    x0, y0 = _fmt(cx), _fmt(cy - r)
    x1, y1 = _fmt(cx), _fmt(cy + r)
    rr = _fmt(r)
    return (f"M {x0} {y0} A {rr} {rr} 0 1 {sweep} {x1} {y1} "
            f"A {rr} {rr} 0 1 {sweep} {x0} {y0} Z")


def _sector_path(sector: Sector, cx: float, cy: float) -> str:
    if sector.span_deg >= FULL_CIRCLE - SPAN_EPS:
        outer = _circle_path(cx, cy, sector.outer_radius, True)
        if sector.inner_radius <= 0:
            return outer
        return outer + " " + _circle_path(cx, cy, sector.inner_radius, False)
    a0 = sector.start_angle_deg
    a1 = sector.start_angle_deg + sector.span_deg
    large = 1 if sector.span_deg > 180.0 else 0
    ox0, oy0 = _point(cx, cy, sector.outer_radius, a0)
    ox1, oy1 = _point(cx, cy, sector.outer_radius, a1)
    ro = _fmt(sector.outer_radius)
    if sector.inner_radius <= 0:
        return (f"M {_fmt(cx)} {_fmt(cy)} L {_fmt(ox0)} {_fmt(oy0)} "
                f"A {ro} {ro} 0 {large} 1 {_fmt(ox1)} {_fmt(oy1)} Z")
    ix0, iy0 = _point(cx, cy, sector.inner_radius, a0)
    ix1, iy1 = _point(cx, cy, sector.inner_radius, a1)
    ri = _fmt(sector.inner_radius)
    return (f"M {_fmt(ox0)} {_fmt(oy0)} "
            f"A {ro} {ro} 0 {large} 1 {_fmt(ox1)} {_fmt(oy1)} "
            f"L {_fmt(ix1)} {_fmt(iy1)} "
            f"A {ri} {ri} 0 {large} 0 {_fmt(ix0)} {_fmt(iy0)} Z")


def _label_xy(sector: Sector, cx: float, cy: float) -> tuple[float, float]:
    if sector.kind is SectorKind.GOAL:
        return cx, cy
    mid_angle = sector.start_angle_deg + sector.span_deg / 2.0
    mid_r = (sector.inner_radius + sector.outer_radius) / 2.0
    return _point(cx, cy, mid_r, mid_angle)


def to_svg(sectors: list[Sector], config: LayoutConfig | None = None) -> str:
    """Render sectors to a standalone SVG document; element order is by
    pathId so identical input gives identical bytes."""
    config = config or LayoutConfig()
    max_r = max((s.outer_radius for s in sectors), default=config.goal_radius)
    size = 2.0 * (max_r + 10.0)
    cx = cy = size / 2.0
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {_fmt(size)} {_fmt(size)}" '
        f'width="{_fmt(size)}" height="{_fmt(size)}">',
        f"<style>{_STYLE}</style>",
    ]
    for sector in sorted(sectors, key=lambda s: s.path_id):
        cls = sector.kind.value.lower()
        pid = escape(sector.path_id, {'"': "&quot;"})
        if (sector.kind is SectorKind.GOAL
                and sector.span_deg >= FULL_CIRCLE - SPAN_EPS
                and sector.inner_radius <= 0):
            lines.append(
                f'<circle class="{cls}" data-path="{pid}" cx="{_fmt(cx)}" '
                f'cy="{_fmt(cy)}" r="{_fmt(sector.outer_radius)}"/>')
        else:
            d = _sector_path(sector, cx, cy)
            lines.append(f'<path class="{cls}" data-path="{pid}" d="{d}"/>')
        if sector.label:
            lx, ly = _label_xy(sector, cx, cy)
            lines.append(f'<text x="{_fmt(lx)}" y="{_fmt(ly)}">'
                         f"{escape(sector.label)}</text>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
