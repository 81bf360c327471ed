"""
SVG 1.1 figures of planar scenes.

Coordinates are scaled and the y axis is flipped so figures read like the
usual math orientation. Boundary arcs are emitted one <path> per arc with
an elliptical-arc command; an arc that runs counter-clockwise in the plane
gets sweep-flag 1 after the flip.
"""
import logging
import math
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np

from ballpoly.reports import write_atomic

try:
    from ballpoly_config import REPORTS
except ImportError:
    REPORTS = {
        'svg_scale': 200.0,
        'svg_margin': 20.0,
        'svg_stroke': '#1f4e79',
        'svg_circle_stroke': '#b0b0b0',
    }

logger = logging.getLogger(__name__)


class SVGFigure:

    def __init__(self, extent: Iterable, scale: Optional[float] = None, margin: Optional[float] = None):
        """extent: points that must be visible; the viewport is their bounding box plus a unit of slack."""
        P = np.atleast_2d(np.asarray(list(extent), dtype=float))
        self.scale = scale or REPORTS.get('svg_scale', 200.0)
        self.margin = margin if margin is not None else REPORTS.get('svg_margin', 20.0)
        lo, hi = P.min(axis=0) - 1.0, P.max(axis=0) + 1.0
        self.origin = np.array([lo[0], hi[1]])
        self.width = (hi[0] - lo[0]) * self.scale + 2 * self.margin
        self.height = (hi[1] - lo[1]) * self.scale + 2 * self.margin
        self._stroke = REPORTS.get('svg_stroke', '#1f4e79')
        self._fill = 'none'
        self.elements = []

    def stroke(self, stroke: str):
        self._stroke = stroke

    def fill(self, fill: str):
        self._fill = fill

    def _xy(self, p) -> str:
        x = (p[0] - self.origin[0]) * self.scale + self.margin
        y = (self.origin[1] - p[1]) * self.scale + self.margin
        return f"{x:.6f} {y:.6f}"

    def add_dot(self, p, css_class: str = 'point', radius: float = 3.0):
        x, y = self._xy(p).split()
        self.elements.append(f"<circle class='{css_class}' fill='{self._stroke}' cx='{x}' cy='{y}' r='{radius:g}'/>")

    def add_circle(self, center, radius: float = 1.0, css_class: str = 'circle'):
        x, y = self._xy(center).split()
        stroke = REPORTS.get('svg_circle_stroke', '#b0b0b0')
        self.elements.append(f"<circle class='{css_class}' fill='none' stroke='{stroke}' cx='{x}' cy='{y}' "
                             f"r='{radius * self.scale:.6f}'/>")

    def add_line(self, a, b, css_class: str = 'segment'):
        self.elements.append(f"<path class='{css_class}' fill='none' stroke='{self._stroke}' "
                             f"d='M {self._xy(a)} L {self._xy(b)}'/>")

    def add_arc(self, center, start, end, radius: float = 1.0, css_class: str = 'arc'):
        """Arc of the circle S(center, radius) from start to end, counter-clockwise in the plane."""
        center = np.asarray(center, dtype=float)
        a0 = math.atan2(start[1] - center[1], start[0] - center[0])
        a1 = math.atan2(end[1] - center[1], end[0] - center[0])
        sweep = (a1 - a0) % (2.0 * math.pi)
        large = 1 if sweep > math.pi else 0
        r = radius * self.scale
        self.elements.append(f"<path class='{css_class}' fill='none' stroke='{self._stroke}' "
                             f"d='M {self._xy(start)} A {r:.6f} {r:.6f} 0 {large} 1 {self._xy(end)}'/>")

    def add_text(self, p, text: str):
        x, y = self._xy(p).split()
        self.elements.append(f"<text x='{x}' y='{y}' dx='4' font-size='12'>{text}</text>")

    def add_hull(self, hull):
        """ArcBoundary2 hull: one path per boundary arc."""
        if hull.size < 2:
            self.add_dot(hull.vertices[0], css_class='vertex')
            return
        for k in range(hull.size):
            a, b = hull.chord(k)
            self.add_arc(hull.arc_centers[k], a, b)

    def add_disk_polygon(self, polygon):
        if polygon.is_full_disk:
            self.add_circle(polygon.centers[0], css_class='arc')
            return
        for edge in polygon.edges:
            self.add_arc(polygon.centers[edge.center_index], polygon.vertices[edge.start],
                         polygon.vertices[edge.end])

    def to_string(self) -> str:
        lines = [
            "<?xml version='1.0'?>",
            f"<svg xmlns='http://www.w3.org/2000/svg' version='1.1' width='{self.width:.0f}' "
            f"height='{self.height:.0f}'>",
            "<g stroke-width='1.5'>",
            *self.elements,
            "</g>",
            "</svg>",
        ]
        return '\n'.join(lines) + '\n'

    def save(self, path: Union[str, Path]) -> Path:
        logger.debug("svg: %d elements to %s", len(self.elements), path)
        return write_atomic(path, self.to_string())
