"""Deterministic SVG 1.1 output for labelled tessellations."""

from __future__ import annotations

import math
from typing import Dict, Iterable, List, Tuple

import numpy as np
from lxml import etree as ET

from ..models import Entry
from .lattice import ORIGIN, STAR, STAR_ON_X_AXIS, Point

SVG_NS = "http://www.w3.org/2000/svg"

STYLE = """
polygon.shaded { stroke: none; }
polygon.unshaded { fill: none; stroke: none; }
line.solid { stroke: #000000; stroke-width: 0.03; }
line.dashed { stroke: #000000; stroke-width: 0.02; stroke-dasharray: 0.12,0.08; }
line.dotted { stroke: #000000; stroke-width: 0.02; stroke-dasharray: 0.02,0.06; }
line.axis { stroke: #1f4e9c; stroke-width: 0.025; }
circle.black { fill: #000000; stroke: #000000; stroke-width: 0.02; }
circle.white { fill: #ffffff; stroke: #000000; stroke-width: 0.03; }
path.star { fill: #000000; stroke: none; }
path.domain { fill: none; stroke: #808080; stroke-width: 0.08; stroke-opacity: 0.6; }
text { font-family: sans-serif; text-anchor: middle; dominant-baseline: central; }
""".strip()

# Side styles: black–white solid, star–black dotted, star–white dashed.
EDGE_CLASSES = {(0, 1): "solid", (0, 2): "dotted", (1, 2): "dashed"}


def _tag(name: str) -> str:
    return f"{{{SVG_NS}}}{name}"


def _fmt(value: float) -> str:
    text = f"{value:.4f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def entry_text(label: Entry) -> str:
    """`111` when every coordinate is a single character, `r:c:s` otherwise."""
    values = label.values()
    return "".join(values) if all(len(v) == 1 for v in values) else str(label)


def _star_path(x: float, y: float, radius: float) -> str:
    points = []
    for k in range(10):
        r = radius if k % 2 == 0 else radius * 0.45
        angle = math.pi / 2 + k * math.pi / 5
        points.append((x + r * math.cos(angle), y - r * math.sin(angle)))
    head, *tail = points
    return f"M{_fmt(head[0])},{_fmt(head[1])} " + " ".join(f"L{_fmt(px)},{_fmt(py)}" for px, py in tail) + " Z"


def render_svg(
    d,
    show_labels: bool = True,
    show_axes: bool = False,
    shade_color: str = "#bdbdbd",
    scale: float = 48.0,
    margin: float = 0.5,
    font_size: float = 0.22,
) -> bytes:
    """
    Shaded triangles filled, unshaded unfilled, one polygon per triangle.
    Black vertices are filled dots, white vertices hollow circles, star
    vertices stars. Output depends only on the drawing and the options.
    """
    vertices: Dict[Point, str] = {}
    for triangle in d.triangles:
        for point, color in zip(triangle.vertices, triangle.colors):
            vertices[point] = color

    ordered = sorted(vertices)
    pts = np.array([p.xy() for p in ordered], dtype=float).reshape(-1, 2)
    if show_axes or not len(pts):
        pts = np.vstack([pts, np.array([ORIGIN.xy(), STAR_ON_X_AXIS.xy()])])
    if d.lattice is not None:
        v1, v2 = d.lattice
        pts = np.vstack([pts, np.array([v1.xy(), v2.xy(), (v1 + v2).xy()])])
    # SVG's y axis points down.
    pts[:, 1] = -pts[:, 1]
    min_x, min_y = np.min(pts, axis=0) - margin
    width, height = np.max(pts, axis=0) + margin - (min_x, min_y)

    svg = ET.Element(
        _tag("svg"),
        nsmap={None: SVG_NS},
        version="1.1",
        width=_fmt(width * scale),
        height=_fmt(height * scale),
        viewBox=f"{_fmt(min_x)} {_fmt(min_y)} {_fmt(width)} {_fmt(height)}",
    )
    style = ET.SubElement(svg, _tag("style"))
    style.text = STYLE

    def xy(point: Point) -> Tuple[float, float]:
        x, y = point.xy()
        return x, -y

    layer = ET.SubElement(svg, _tag("g"), id="triangles")
    for triangle in d.triangles:
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(xy, triangle.vertices))
        attrs = {"class": "shaded" if triangle.shaded else "unshaded", "points": coords}
        if triangle.shaded:
            attrs["fill"] = shade_color
        ET.SubElement(layer, _tag("polygon"), attrs)

    edges: Dict[Tuple[Point, Point], str] = {}
    for triangle in d.triangles:
        for (i, j), css in EDGE_CLASSES.items():
            a, b = sorted((triangle.vertices[i], triangle.vertices[j]))
            edges.setdefault((a, b), css)
    layer = ET.SubElement(svg, _tag("g"), id="edges")
    for (a, b), css in sorted(edges.items()):
        (x1, y1), (x2, y2) = xy(a), xy(b)
        ET.SubElement(layer, _tag("line"), {"class": css, "x1": _fmt(x1), "y1": _fmt(y1), "x2": _fmt(x2), "y2": _fmt(y2)})

    if d.lattice is not None:
        v1, v2 = d.lattice
        corners = [xy(p) for p in (ORIGIN, v1, v1 + v2, v2)]
        path = "M" + " L".join(f"{_fmt(x)},{_fmt(y)}" for x, y in corners) + " Z"
        ET.SubElement(svg, _tag("path"), {"class": "domain", "d": path})

    if show_axes:
        reach = max(float(np.max(np.abs(pts))), 1.0)
        layer = ET.SubElement(svg, _tag("g"), id="axes")
        ET.SubElement(layer, _tag("line"), {"class": "axis", "x1": "0", "y1": "0", "x2": _fmt(reach), "y2": "0"})
        ET.SubElement(layer, _tag("line"), {"class": "axis", "x1": "0", "y1": "0", "x2": "0", "y2": _fmt(-reach)})

    layer = ET.SubElement(svg, _tag("g"), id="vertices")
    for point in ordered:
        x, y = xy(point)
        color = vertices[point]
        if color == STAR:
            ET.SubElement(layer, _tag("path"), {"class": "star", "d": _star_path(x, y, 0.09)})
        else:
            ET.SubElement(layer, _tag("circle"), {"class": color, "cx": _fmt(x), "cy": _fmt(y), "r": "0.07"})

    if show_labels:
        layer = ET.SubElement(svg, _tag("g"), id="labels", attrib={"font-size": _fmt(font_size)})
        for triangle in d.triangles:
            x, y = triangle.label_anchor
            node = ET.SubElement(layer, _tag("text"), {"x": _fmt(x), "y": _fmt(-y)})
            node.text = entry_text(triangle.label)

    return ET.tostring(svg, pretty_print=True, xml_declaration=True, encoding="UTF-8")


def count_elements(document: bytes, tag: str) -> int:
    root = ET.fromstring(document)
    return len(root.findall(f".//{{{SVG_NS}}}{tag}"))


def polygons(document: bytes) -> List[List[Tuple[float, float]]]:
    root = ET.fromstring(document)
    found = []
    for node in root.iter(f"{{{SVG_NS}}}polygon"):
        pairs: Iterable[str] = node.get("points").split()
        found.append([tuple(float(v) for v in pair.split(",")) for pair in pairs])
    return found
