"""SVG rendering of rank-2 scattering diagrams and broken lines."""
import os
import sys
from xml.sax.saxutils import escape

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)
sys.path.insert(0, parent_dir)

from emitters.drawing import fmt, layout
from utils.logger import setup_logger

logger = setup_logger("SvgEmitter")

SIZE = 480


def emit_svg(diagram=None, lines=(), extent=None, size=SIZE) -> str:
    drawing = layout(diagram, lines, extent)
    unit = size / (2 * float(drawing.extent))
    half = size / 2

    def px(point):
        return fmt(half + float(point[0]) * unit), fmt(half - float(point[1]) * unit)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="0" y1="{fmt(half)}" x2="{size}" y2="{fmt(half)}" stroke="#cccccc" stroke-dasharray="4 4"/>',
        f'<line x1="{fmt(half)}" y1="0" x2="{fmt(half)}" y2="{size}" stroke="#cccccc" stroke-dasharray="4 4"/>',
    ]
    for ray in drawing.rays:
        x, y = px(ray.end)
        width = "2" if ray.incoming else "1.2"
        out.append(f'<line class="ray" x1="{fmt(half)}" y1="{fmt(half)}" x2="{x}" y2="{y}" '
                   f'stroke="black" stroke-width="{width}"/>')
        out.append(f'<text x="{x}" y="{y}" font-size="10">{escape(ray.label)}</text>')

    for line in drawing.lines:
        pts = " ".join(",".join(px(p)) for p in line.points)
        out.append(f'<polyline class="broken-line" points="{pts}" fill="none" '
                   f'stroke="{line.color}" stroke-width="1.5"/>')
        for p in line.points[1:-1]:
            x, y = px(p)
            out.append(f'<circle cx="{x}" cy="{y}" r="2.5" fill="{line.color}"/>')
        for mid, label in line.labels:
            x, y = px(mid)
            out.append(f'<text x="{x}" y="{y}" font-size="9" fill="{line.color}">{escape(label)}</text>')
    out.append("</svg>")
    logger.debug("SVG: %d rays, %d broken lines", len(drawing.rays), len(drawing.lines))
    return "\n".join(out) + "\n"
