"""SVG rendering of 2-dimensional box representations."""

from __future__ import annotations

from .boxrep import BoxRepresentation

VIEW = 1000
MARGIN = 20


def render_svg(rep: BoxRepresentation) -> str:
    """Rectangles scaled linearly into a 1000x1000 viewport, labelled at their centres.

    The y axis points up, as in the usual drawing of the plane. Output is a
    pure function of ``rep``.
    """
    if rep.d != 2:
        raise ValueError(f"can only draw 2-dimensional representations, got d = {rep.d}")
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{VIEW}" height="{VIEW}" '
             f'viewBox="0 0 {VIEW} {VIEW}">',
             '<rect width="100%" height="100%" fill="white"/>']
    if rep.boxes:
        xs = [c for ivs in rep.boxes.values() for c in ivs[0]]
        ys = [c for ivs in rep.boxes.values() for c in ivs[1]]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        span = VIEW - 2 * MARGIN
        sx = span / max(x1 - x0, 1)
        sy = span / max(y1 - y0, 1)

        def px(x):
            return MARGIN + (x - x0) * sx

        def py(y):
            return VIEW - MARGIN - (y - y0) * sy

        for v in sorted(rep.boxes):
            (a, b), (c, d) = rep.boxes[v]
            left, right, top, bottom = px(a), px(b), py(d), py(c)
            lines.append(f'<rect x="{left:.3f}" y="{top:.3f}" width="{right - left:.3f}" '
                         f'height="{bottom - top:.3f}" fill="none" stroke="black" stroke-width="2"/>')
            lines.append(f'<text x="{(left + right) / 2:.3f}" y="{(top + bottom) / 2:.3f}" '
                         f'font-size="12" text-anchor="middle" dominant-baseline="middle">{v}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
