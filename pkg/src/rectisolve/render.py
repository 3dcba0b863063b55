"""Deterministic SVG rendering of instances and solutions.

Output is plain SVG 1.1 assembled by string formatting with fixed number
formats, so a given (instance, edges) pair always produces identical
bytes. Grid lines are light gray, terminals are filled circles, solution
edges solid strokes; a doubled edge is drawn as two parallel strokes
offset perpendicular to its direction.
"""

from __future__ import annotations

from .errors import InputError
from .geometry import Instance
from .solution import SolutionEdge

_MARGIN = 24.0
_TARGET = 640.0
_GRID_STYLE = 'stroke="#cccccc" stroke-width="1"'
_EDGE_STYLE = 'stroke="#1f77b4" stroke-width="3" stroke-linecap="round"'


def render_svg(instance: Instance, edges: list[SolutionEdge] | None = None) -> str:
    xs = sorted({p.x for p in instance.points})
    ys = sorted({p.y for p in instance.points})
    xset, yset = set(xs), set(ys)
    for e in edges or []:
        for p in (e.p1, e.p2):
            if p.x not in xset or p.y not in yset:
                raise InputError(f"edge endpoint {p} is not a grid vertex")

    span = max(xs[-1] - xs[0], ys[-1] - ys[0], 1)
    scale = _TARGET / span

    def sx(x: int) -> float:
        return _MARGIN + (x - xs[0]) * scale

    def sy(y: int) -> float:
        return _MARGIN + (ys[-1] - y) * scale

    width = _MARGIN * 2 + (xs[-1] - xs[0]) * scale
    height = _MARGIN * 2 + (ys[-1] - ys[0]) * scale

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">'
    ]
    for x in xs:
        parts.append(
            f'<line x1="{sx(x):.2f}" y1="{sy(ys[0]):.2f}" '
            f'x2="{sx(x):.2f}" y2="{sy(ys[-1]):.2f}" {_GRID_STYLE}/>'
        )
    for y in ys:
        parts.append(
            f'<line x1="{sx(xs[0]):.2f}" y1="{sy(y):.2f}" '
            f'x2="{sx(xs[-1]):.2f}" y2="{sy(y):.2f}" {_GRID_STYLE}/>'
        )
    for e in edges or []:
        offsets = (0.0,) if e.mult == 1 else (-2.0, 2.0)
        horizontal = e.p1.y == e.p2.y
        for off in offsets:
            dx, dy = (0.0, off) if horizontal else (off, 0.0)
            parts.append(
                f'<line x1="{sx(e.p1.x) + dx:.2f}" y1="{sy(e.p1.y) + dy:.2f}" '
                f'x2="{sx(e.p2.x) + dx:.2f}" y2="{sy(e.p2.y) + dy:.2f}" '
                f"{_EDGE_STYLE}/>"
            )
    for p in instance.points:
        parts.append(
            f'<circle cx="{sx(p.x):.2f}" cy="{sy(p.y):.2f}" r="4" fill="#222222"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
