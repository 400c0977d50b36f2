"""TikZ rendering of the same drawing as the SVG emitter."""
import os
import sys

current_dir = os.path.dirname(os.path.abspath(__file__))
parent_dir = os.path.dirname(current_dir)
sys.path.insert(0, parent_dir)

from emitters.drawing import fmt, layout


def _tex(label: str) -> str:
    return label.replace("^", "\\^{}").replace("_", "\\_")


def _hex(color: str) -> str:
    return color.lstrip("#").upper()


def emit_tikz(diagram=None, lines=(), extent=None) -> str:
    drawing = layout(diagram, lines, extent)
    e = fmt(drawing.extent)
    out = ["\\begin{tikzpicture}[scale=0.5]",
           f"  \\draw[gray, dashed] (-{e},0) -- ({e},0);",
           f"  \\draw[gray, dashed] (0,-{e}) -- (0,{e});"]
    for ray in drawing.rays:
        style = "thick" if ray.incoming else "thin"
        x, y = (fmt(c) for c in ray.end)
        out.append(f"  \\draw[{style}] (0,0) -- ({x},{y}) node[anchor=west, font=\\tiny] "
                   f"{{{_tex(ray.label)}}};")
    for i, line in enumerate(drawing.lines):
        out.append(f"  \\definecolor{{line{i}}}{{HTML}}{{{_hex(line.color)}}}")
        path = " -- ".join(f"({fmt(p[0])},{fmt(p[1])})" for p in line.points)
        out.append(f"  \\draw[line{i}] {path};")
        for mid, label in line.labels:
            out.append(f"  \\node[line{i}, font=\\tiny] at ({fmt(mid[0])},{fmt(mid[1])}) "
                       f"{{{_tex(label)}}};")
    out.append("\\end{tikzpicture}")
    return "\n".join(out) + "\n"
