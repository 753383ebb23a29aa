"""Static SVG drawings of result documents."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .document import ResultDocument
from .kernel import circumcenter_float

COLORS = {"input": "#1f4e9c", "steiner": "#c0392b", "box": "#7f8c8d"}


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _voronoi_segments(doc: ResultDocument, lo, hi):
    """Dual edges: circumcenter pairs across interior edges, rays outward across hull edges."""
    pos = {i: (x, y) for i, x, y, _ in doc.vertices}
    centers = {}
    by_edge: dict[tuple[int, int], list] = {}
    for t in doc.triangles:
        a, b, c = (pos[v] for v in t)
        cc = circumcenter_float(*a, *b, *c)
        centers[t] = cc
        for u, v in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            by_edge.setdefault((min(u, v), max(u, v)), []).append((t, (u, v)))
    reach = 2 * max(hi[0] - lo[0], hi[1] - lo[1])
    segs = []
    for e, owners in sorted(by_edge.items()):
        if len(owners) == 2:
            segs.append((centers[owners[0][0]], centers[owners[1][0]]))
            continue
        t, (u, v) = owners[0]
        (ux, uy), (vx, vy) = pos[u], pos[v]
        # hull edge u->v is ccw, so the outward normal points right
        nx, ny = vy - uy, ux - vx
        norm = (nx * nx + ny * ny) ** 0.5
        cx, cy = centers[t]
        segs.append(((cx, cy), (cx + reach * nx / norm, cy + reach * ny / norm)))
    return segs


def render_svg(doc: ResultDocument, size: int = 800, voronoi: bool = False) -> str:
    """SVG 1.1 drawing of the document's complex; layout depends only on the document."""
    xs = [v[1] for v in doc.vertices]
    ys = [v[2] for v in doc.vertices]
    lo = (min(xs), min(ys))
    hi = (max(xs), max(ys))
    extent = max(hi[0] - lo[0], hi[1] - lo[1]) or 1.0
    margin = 0.05 * extent
    scale = (size - 2) / (extent + 2 * margin)

    def tx(x):
        return (x - lo[0] + margin) * scale + 1

    def ty(y):
        return size - ((y - lo[1] + margin) * scale + 1)

    pos = {i: (tx(x), ty(y)) for i, x, y, _ in doc.vertices}
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
        '<g class="triangles" fill="#eaf1fb" stroke="none">',
    ]
    for t in doc.triangles:
        pts = " ".join(f"{_fmt(pos[v][0])},{_fmt(pos[v][1])}" for v in t)
        out.append(f'<polygon class="triangle" points="{pts}"/>')
    out.append("</g>")
    out.append('<g class="edges" stroke="#34495e" stroke-width="1">')
    for a, b in doc.edges:
        (x1, y1), (x2, y2) = pos[a], pos[b]
        out.append(f'<line class="edge" x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
    out.append("</g>")
    if voronoi and doc.triangles:
        out.append('<g class="voronoi" stroke="#e67e22" stroke-width="1" stroke-dasharray="4 3">')
        for (x1, y1), (x2, y2) in _voronoi_segments(doc, lo, hi):
            out.append(
                f'<line class="voronoi-edge" x1="{_fmt(tx(x1))}" y1="{_fmt(ty(y1))}" '
                f'x2="{_fmt(tx(x2))}" y2="{_fmt(ty(y2))}"/>'
            )
        out.append("</g>")
    out.append('<g class="vertices">')
    for i, _, _, kind in doc.vertices:
        x, y = pos[i]
        color = COLORS.get(kind, "#000000")
        out.append(
            f'<circle class="vertex {escape(kind)}" data-id="{i}" cx="{_fmt(x)}" cy="{_fmt(y)}" '
            f'r="3" fill="{color}"/>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
