"""Tiny deterministic SVG writer (no timestamps, fixed number formatting)."""
from __future__ import annotations

from typing import Iterable, Sequence


def _num(v: float) -> str:
    text = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def document(body: Iterable[str], view_box: Sequence[float], width: int = 600, height: int = 600,
             title: str = "") -> str:
    x, y, w, h = view_box
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{_num(x)} {_num(y)} {_num(w)} {_num(h)}">\n'
    )
    if title:
        head += f"<title>{title}</title>\n"
    return head + "".join(line + "\n" for line in body) + "</svg>\n"


def squares(cells: Iterable[tuple[int, int]], k: int, fill: str = "#1f3b73") -> str:
    """Unit-square picture of dyadic cells of side ``2**-k``; y grows upward."""
    side = 1.0 / 2**k
    rects = [
        f'<rect x="{_num(cx * side)}" y="{_num(1.0 - (cy + 1) * side)}" '
        f'width="{_num(side)}" height="{_num(side)}"/>'
        for cx, cy in sorted(cells)
    ]
    body = [f'<g fill="{fill}" shape-rendering="crispEdges">', *rects, "</g>"]
    return document(body, (0, 0, 1, 1), title=f"cells at resolution 2^-{k}")


def scatter(points: Sequence[tuple[float, float]], radius: float = 0.0, title: str = "") -> str:
    xs = [p[0] for p in points] or [0.0]
    ys = [p[1] for p in points] or [0.0]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-12)
    pad = 0.05 * span
    r = radius or span / 150
    body = ['<g fill="#b03030">']
    body += [f'<circle cx="{_num(x)}" cy="{_num(hi_y + lo_y - y)}" r="{_num(r)}"/>' for x, y in points]
    body.append("</g>")
    return document(body, (lo_x - pad, lo_y - pad, span + 2 * pad, span + 2 * pad), title=title)


def polyline(xs: Sequence[float], ys: Sequence[float], y_range: tuple[float, float] = (-1.5, 1.5),
             title: str = "") -> str:
    """Line plot over ``[min xs, max xs] x y_range`` with a zero axis."""
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = y_range
    # flip vertically: svg y = hi_y + lo_y - value
    pts = " ".join(f"{_num(x)},{_num(hi_y + lo_y - y)}" for x, y in zip(xs, ys))
    stroke = (hi_x - lo_x) / 400
    body = [
        f'<line x1="{_num(lo_x)}" y1="{_num(hi_y + lo_y)}" x2="{_num(hi_x)}" y2="{_num(hi_y + lo_y)}" '
        f'stroke="#999" stroke-width="{_num(stroke)}"/>',
        f'<polyline fill="none" stroke="#1f3b73" stroke-width="{_num(stroke * 2)}" points="{pts}"/>',
    ]
    return document(body, (lo_x, lo_y, hi_x - lo_x, hi_y - lo_y), width=800, height=400, title=title)
