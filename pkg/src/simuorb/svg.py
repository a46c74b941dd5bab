"""Static SVG drawing of an arrangement: unit circle, vertices, orbits and points."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Optional, Sequence
from xml.sax.saxutils import quoteattr

from .geometry import point_coords, quadruplet_of, vertex
from .orbits import Orbit, Region

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
REGION_STROKE = {Region.EXTERIOR: "#1f77b4", Region.INTERIOR: "#2ca02c"}


def _fmt(v: float) -> str:
    text = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if text in ("", "-0") else text


def _circle(cx, cy, r, cls, **attrs) -> str:
    extra = "".join(f" {k.replace('_', '-')}={quoteattr(str(v))}" for k, v in attrs.items())
    return f'<circle class="{cls}" cx="{_fmt(cx)}" cy="{_fmt(-cy)}" r="{_fmt(r)}"{extra}/>'


def render(
    n: int,
    orbits: Sequence[Orbit],
    highlight_radius: Optional[float] = None,
    highlight_tol: float = 1e-6,
    size: int = 800,
    with_points: bool = True,
) -> str:
    """SVG document for the n-gon arrangement.

    Every orbit becomes one element with class ``orbit`` (the unit circle and
    the center dot included).  Points need orbits carrying class detail.  A
    highlighted orbit gets its point families coloured one class at a time.
    """
    extent = max([1.0] + [o.sqrt_radius for o in orbits]) * 1.05
    unit = extent / 400.0  # one screen pixel at the default size
    dot = 2.5 * unit
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{_fmt(-extent)} {_fmt(-extent)} {_fmt(2 * extent)} {_fmt(2 * extent)}">',
        f"<title>Diagonal arrangement of the regular {n}-gon</title>",
        f'<g fill="none" stroke-width="{_fmt(unit)}">',
        _circle(0, 0, 1.0, "orbit unit", stroke="#000000"),
    ]
    hit = None
    for o in orbits:
        if o.region is Region.CENTER:
            continue
        cls = "orbit " + o.region.value
        stroke = REGION_STROKE[o.region]
        if highlight_radius is not None and abs(o.sqrt_radius - highlight_radius) <= highlight_tol * max(
            1.0, highlight_radius
        ):
            cls += " highlight"
            stroke = "#000000"
            hit = o
        out.append(
            _circle(0, 0, o.sqrt_radius, cls, stroke=stroke, data_sqrt_radius=repr(o.sqrt_radius))
        )
    out.append("</g>")
    out.append('<g class="vertices" fill="#000000">')
    for m in range(n):
        x, y = vertex(m, n)
        out.append(_circle(x, y, 2 * dot, "vertex", data_index=m))
    out.append("</g>")
    for o in orbits:
        if o.region is Region.CENTER:
            out.append(_circle(0, 0, 2 * dot, "orbit center", fill="#000000", data_multiplicity=o.multiplicity))
    if with_points:
        out.append('<g class="points" fill="#7f7f7f">')
        for o in orbits:
            if o.region is Region.CENTER:
                continue
            for k, cls in enumerate(o.classes):
                fill = PALETTE[k % len(PALETTE)] if o is hit else None
                for i in range(n):
                    p = point_coords(quadruplet_of(i, cls.anchor))
                    attrs = {"fill": fill, "data_family": k} if fill else {}
                    out.append(_circle(p.x, p.y, dot, "point", **attrs))
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def count_orbit_elements(doc: str) -> int:
    """Number of elements whose class list contains ``orbit``."""
    root = ET.fromstring(doc.encode())
    return sum(
        1 for el in root.iter() if "orbit" in (el.get("class") or "").split()
    )


def families(doc: str) -> dict[int, int]:
    """Point count per highlighted family."""
    root = ET.fromstring(doc.encode())
    out: dict[int, int] = {}
    for el in root.iter():
        fam = el.get("data-family")
        if fam is not None:
            out[int(fam)] = out.get(int(fam), 0) + 1
    return out


__all__ = ["render", "count_orbit_elements", "families"]
