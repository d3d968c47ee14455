"""SVG rendering of translated line arrangements (k = 2).

Exact coordinates are converted to floats only here.
"""

from __future__ import annotations

from itertools import combinations
from pathlib import Path

from .arrangement import CentralArrangement, Translate, common_point
from .errors import PreconditionError
from .nvg import kt_configuration


def _clip_line(a, b, c, box):
    """Endpoints of ``a x + b y = c`` inside ``box = (x0, y0, x1, y1)``."""
    x0, y0, x1, y1 = box
    pts = []
    if b != 0:
        for x in (x0, x1):
            y = (c - a * x) / b
            if y0 - 1e-12 <= y <= y1 + 1e-12:
                pts.append((x, y))
    if a != 0:
        for y in (y0, y1):
            x = (c - b * y) / a
            if x0 - 1e-12 <= x <= x1 + 1e-12:
                pts.append((x, y))
    if len(pts) < 2:
        return None
    pts.sort()
    return pts[0], pts[-1]


def render_svg(a: CentralArrangement, t: Translate, T=None) -> str:
    if a.k != 2:
        raise PreconditionError("SVG output needs k = 2")
    vertices = []
    edges = []
    if T is not None:
        kt = kt_configuration(a, t, T)
        vertices = [tuple(float(x) for x in P) for P in kt.points]
        edges = list(combinations(range(len(vertices)), 2))
        marks = vertices
    else:
        marks = []
        for i, j in combinations(range(1, a.n + 1), 2):
            ok, P = common_point(a, t, (i, j))
            if ok:
                vertices.append(tuple(float(x) for x in P))
    xs = [p[0] for p in vertices] or [0.0]
    ys = [p[1] for p in vertices] or [0.0]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0)
    if span == 0:
        span = 2.0
        x0, x1, y0, y1 = x0 - 1, x1 + 1, y0 - 1, y1 + 1
    pad = 0.1 * span
    box = (x0 - pad, y0 - pad, x1 + pad, y1 + pad)
    width, height = box[2] - box[0], box[3] - box[1]
    stroke = 0.004 * max(width, height)

    # y axis points up in the drawing
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{box[0]:.6g} {-box[3]:.6g} {width:.6g} {height:.6g}">'
    ]
    for idx, (normal, ti) in enumerate(zip(a.normals, t.t), start=1):
        seg = _clip_line(float(normal[0]), float(normal[1]), float(ti), box)
        if seg is None:
            continue
        (ax, ay), (bx, by) = seg
        out.append(
            f'  <line id="H{idx}" x1="{ax:.6g}" y1="{-ay:.6g}" x2="{bx:.6g}" y2="{-by:.6g}" '
            f'stroke="black" stroke-width="{stroke:.4g}"><title>H_{idx}</title></line>'
        )
    for i, j in edges:
        (ax, ay), (bx, by) = vertices[i], vertices[j]
        out.append(
            f'  <path d="M {ax:.6g} {-ay:.6g} L {bx:.6g} {-by:.6g}" fill="none" '
            f'stroke="red" stroke-dasharray="{3 * stroke:.4g}" stroke-width="{stroke:.4g}"/>'
        )
    for i, (px, py) in enumerate(marks, start=1):
        out.append(
            f'  <circle id="P{i}" cx="{px:.6g}" cy="{-py:.6g}" r="{4 * stroke:.4g}" fill="red">'
            f"<title>P_{i}</title></circle>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(a: CentralArrangement, t: Translate, T=None, path=None) -> str:
    text = render_svg(a, t, T)
    if path is not None:
        Path(path).write_text(text)
    return text
