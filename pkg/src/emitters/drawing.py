"""
Shared 2D layout for the SVG and TikZ emitters: rays clipped to a square
window around the origin and broken lines as polylines in lattice
coordinates.
"""
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)
sys.path.insert(0, parent_dir)

from utils.errors import UnsupportedError

PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"]


@dataclass
class RayShape:
    end: tuple
    label: str
    incoming: bool


@dataclass
class LineShape:
    points: list
    labels: list = field(default_factory=list)
    color: str = PALETTE[0]


@dataclass
class Drawing:
    extent: Fraction
    rays: list = field(default_factory=list)
    lines: list = field(default_factory=list)


def _to_window(point, direction, extent):
    """Where point + t·direction (t ≥ 0) leaves the square [−extent, extent]²."""
    ts = []
    for x, dx in zip(point, direction):
        if dx > 0:
            ts.append((extent - x) / dx)
        elif dx < 0:
            ts.append((-extent - x) / dx)
    t = min(ts)
    return tuple(x + t * dx for x, dx in zip(point, direction))


def layout(diagram=None, lines=(), extent=None) -> Drawing:
    if diagram is not None and diagram.rank != 2:
        raise UnsupportedError("only rank-2 diagrams can be drawn")
    points = [p for bl in lines for s in bl.segments if s.start is not None for p in s.start]
    points += [p for bl in lines for p in bl.endpoint]
    if extent is None:
        extent = max([Fraction(4)] + [abs(Fraction(p)) * Fraction(3, 2) for p in points])
    drawing = Drawing(Fraction(extent))

    if diagram is not None:
        for ray in diagram.rays():
            end = _to_window((0, 0), ray.direction, drawing.extent)
            label = ray.func.to_poly().to_text()
            drawing.rays.append(RayShape(end, label, ray.incoming))

    for i, bl in enumerate(lines):
        first = bl.segments[0]
        anchor = bl.segments[1].start if len(bl.segments) > 1 else bl.endpoint
        anchor = tuple(Fraction(x) for x in anchor)
        # the initial segment comes in from infinity along +m
        tail = _to_window(anchor, first.monomial.m_part, drawing.extent) \
            if max(abs(x) for x in anchor) < drawing.extent else anchor
        pts = [tail] + [tuple(Fraction(x) for x in s.start) for s in bl.segments[1:]]
        pts.append(tuple(Fraction(x) for x in bl.endpoint))
        labels = []
        for s, a, b in zip(bl.segments, pts, pts[1:]):
            mid = tuple((x + y) / 2 for x, y in zip(a, b))
            labels.append((mid, f"{s.monomial.coeff} z^{tuple(s.monomial.exponent)}"))
        drawing.lines.append(LineShape(pts, labels, PALETTE[i % len(PALETTE)]))
    return drawing


def fmt(x) -> str:
    """Fixed two-decimal rendering of an exact coordinate."""
    return f"{float(x):.2f}"
