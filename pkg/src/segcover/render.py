"""SVG drawing of an instance and, optionally, a sensor placement.

One unit is one pixel. The y axis is flipped so the region's origin sits at the
bottom-left corner, as in the usual mathematical orientation.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import quoteattr

from .geom import Segment
from .instance import Instance, Placement


def _f(x: float) -> str:
    s = format(x, ".10g")
    return "0" if s == "-0" else s


def _capsule_path(s: Segment, rho: float, fy) -> str:
    ax, ay = s.a.x, fy(s.a.y)
    bx, by = s.b.x, fy(s.b.y)
    L = math.hypot(bx - ax, by - ay)
    if L == 0:
        # a full circle as two half arcs
        return (
            f"M {_f(ax - rho)} {_f(ay)} A {_f(rho)} {_f(rho)} 0 1 0 {_f(ax + rho)} {_f(ay)} "
            f"A {_f(rho)} {_f(rho)} 0 1 0 {_f(ax - rho)} {_f(ay)} Z"
        )
    nx, ny = -(by - ay) / L * rho, (bx - ax) / L * rho
    r = _f(rho)
    return (
        f"M {_f(ax + nx)} {_f(ay + ny)} L {_f(bx + nx)} {_f(by + ny)} "
        f"A {r} {r} 0 0 0 {_f(bx - nx)} {_f(by - ny)} "
        f"L {_f(ax - nx)} {_f(ay - ny)} "
        f"A {r} {r} 0 0 0 {_f(ax + nx)} {_f(ay + ny)} Z"
    )


def render_svg(inst: Instance, pl: Placement | None = None, hippodromes: bool = True) -> str:
    r = inst.region
    rho = inst.rho
    pad = rho
    vb_x, vb_y = r.xmin - pad, -pad
    vb_w, vb_h = r.width + 2 * pad, r.height + 2 * pad
    stroke = _f(max(r.width, r.height, rho) / 500)

    def fy(y: float) -> float:
        return r.ymax - y

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(vb_w)}" height="{_f(vb_h)}" '
        f'viewBox="{_f(vb_x)} {_f(vb_y)} {_f(vb_w)} {_f(vb_h)}">',
        f'<rect class="region" x="{_f(r.xmin)}" y="0" width="{_f(r.width)}" height="{_f(r.height)}" '
        f'fill="none" stroke="black" stroke-width="{stroke}"/>',
    ]
    if hippodromes:
        for s in inst.segments:
            out.append(
                f'<path class="hippodrome" d="{_capsule_path(s, rho, fy)}" fill="none" '
                f'stroke="#999999" stroke-width="{stroke}"/>'
            )
    for s in inst.segments:
        out.append(
            f'<line class="segment" x1="{_f(s.a.x)}" y1="{_f(fy(s.a.y))}" x2="{_f(s.b.x)}" '
            f'y2="{_f(fy(s.b.y))}" stroke="#1f4e9e" stroke-width="{_f(2 * float(stroke))}"/>'
        )
    if pl is not None:
        title = quoteattr(pl.algorithm or "placement")
        out.append(f"<g class=\"sensors\" data-algorithm={title}>")
        for p in pl.sensors:
            out.append(
                f'<circle cx="{_f(p.x)}" cy="{_f(fy(p.y))}" r="{_f(rho)}" fill="#d62728" '
                f'fill-opacity="0.15" stroke="#d62728" stroke-width="{stroke}"/>'
            )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
