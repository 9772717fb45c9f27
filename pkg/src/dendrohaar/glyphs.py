"""Random face vectors and SVG rendering of faces and dendrograms."""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET

import numpy as np

from .cluster import Dendrogram
from .core import DataMatrix
from .errors import InputError

FACE_ATTRIBUTES = (
    "face_area",
    "face_shape",
    "nose_length",
    "mouth_location",
    "smile_curve",
    "mouth_width",
    "eye_location",
    "eye_separation",
    "eye_angle",
    "eye_shape",
    "eye_width",
    "pupil_location",
    "brow_location",
    "brow_angle",
    "brow_width",
)


def generate_faces(n: int, seed: int) -> DataMatrix:
    """``n`` face vectors drawn i.i.d. uniform on [0, 1).

    The generator is numpy's PCG64 seeded with ``seed``, so results are the
    same on every platform.
    """
    if n < 2:
        raise InputError(f"need at least 2 faces to cluster, got {n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    values = rng.random((n, len(FACE_ATTRIBUTES)))
    return DataMatrix(values, tuple(f"face{i + 1}" for i in range(n)), FACE_ATTRIBUTES)


def remap_unit(v):
    """Affine map of ``v`` from ``[min, max]`` onto [0, 1]; a constant
    vector maps to 0.5. Returns the mapped vector and ``(min, max)``."""
    v = np.asarray(v, dtype=np.float64)
    lo, hi = float(v.min()), float(v.max())
    if hi == lo:
        return np.full_like(v, 0.5), (lo, hi)
    return (v - lo) / (hi - lo), (lo, hi)


def _num(x):
    return f"{x:.3f}"


def _rotate(x, y, cx, cy, deg):
    a = math.radians(deg)
    dx, dy = x - cx, y - cy
    return cx + dx * math.cos(a) - dy * math.sin(a), cy + dx * math.sin(a) + dy * math.cos(a)


def render_face_svg(f, title: str | None = None, remap: bool | None = None, size: int = 200) -> str:
    """Draw a 15-attribute face vector as an SVG document.

    Every geometric parameter is an affine function of one attribute. When
    ``remap`` is true, or is left as ``None`` and some component lies outside
    [0, 1] (as detail vectors do), the vector is first mapped onto [0, 1] and
    the mapping is recorded in the title.
    """
    f = np.asarray(f, dtype=np.float64).ravel()
    if f.size != len(FACE_ATTRIBUTES):
        raise InputError(f"a face vector has {len(FACE_ATTRIBUTES)} components, got {f.size}")
    if not np.all(np.isfinite(f)):
        raise InputError("face vector has non-finite components")
    note = ""
    if remap is None:
        remap = bool(np.any(f < 0) or np.any(f > 1))
    if remap:
        f, (lo, hi) = remap_unit(f)
        note = f" [remapped from {lo:.6g}..{hi:.6g} to 0..1]"

    cx = cy = size / 2
    rx = size * (0.25 + 0.15 * f[0])
    ry = rx * (0.85 + 0.45 * f[1])
    ry = min(ry, size * 0.48)

    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", width=str(size),
                     height=str(size), viewBox=f"0 0 {size} {size}")
    ET.SubElement(svg, "title").text = (title or "face") + note
    style = {"fill": "none", "stroke": "black", "stroke-width": "2"}

    ET.SubElement(svg, "ellipse", cx=_num(cx), cy=_num(cy), rx=_num(rx), ry=_num(ry),
                  id="face", **style)

    nose_len = ry * (0.1 + 0.3 * f[2])
    ET.SubElement(svg, "line", x1=_num(cx), y1=_num(cy - nose_len / 2), x2=_num(cx),
                  y2=_num(cy + nose_len / 2), id="nose", **style)

    my = cy + ry * (0.3 + 0.4 * f[3])
    my = min(my, cy + ry * 0.85)
    half = rx * (0.15 + 0.45 * f[5])
    bend = (f[4] - 0.5) * ry * 0.6
    ET.SubElement(svg, "path", id="mouth",
                  d=f"M {_num(cx - half)} {_num(my)} Q {_num(cx)} {_num(my + bend)} {_num(cx + half)} {_num(my)}",
                  **style)

    ey = cy - ry * (0.1 + 0.4 * f[6])
    sep = rx * (0.2 + 0.4 * f[7])
    tilt = (f[8] - 0.5) * 60
    erx = rx * (0.08 + 0.17 * f[10])
    ery = erx * (0.3 + 0.7 * f[9])
    pupil = (f[11] - 0.5) * erx * 1.2
    by = ey - ery - ry * (0.05 + 0.2 * f[12])
    btilt = (f[13] - 0.5) * 60
    blen = rx * (0.08 + 0.22 * f[14])
    for side, sgn in (("left", -1), ("right", 1)):
        ex = cx + sgn * sep
        ET.SubElement(svg, "ellipse", id=f"eye_{side}", cx=_num(ex), cy=_num(ey), rx=_num(erx),
                      ry=_num(ery), transform=f"rotate({_num(sgn * tilt)} {_num(ex)} {_num(ey)})",
                      **style)
        ET.SubElement(svg, "circle", id=f"pupil_{side}", cx=_num(ex + pupil), cy=_num(ey),
                      r=_num(max(ery * 0.35, 1.0)), fill="black")
        x1, y1 = _rotate(ex - blen, by, ex, by, sgn * btilt)
        x2, y2 = _rotate(ex + blen, by, ex, by, sgn * btilt)
        ET.SubElement(svg, "line", id=f"brow_{side}", x1=_num(x1), y1=_num(y1), x2=_num(x2),
                      y2=_num(y2), **style)
    return ET.tostring(svg, encoding="unicode") + "\n"


def render_dendrogram_svg(dend: Dendrogram, labels=None, width: int = 640, height: int = 400) -> str:
    """Rectangular dendrogram with leaves in display order, heights to
    scale, and internal nodes labeled ``q1 .. q(n-1)``."""
    n = dend.n_leaves
    labels = list(labels) if labels is not None else [str(i + 1) for i in range(n)]
    margin, label_band = 30, 30
    order = dend.leaf_order()
    step = (width - 2 * margin) / max(n - 1, 1)
    xs = {leaf: margin + k * step for k, leaf in enumerate(order)}
    if n == 1:
        xs[0] = width / 2
    top = max((mg.height for mg in dend.merges), default=0.0)
    base = height - margin - label_band

    def y_of(h):
        if top <= 0:
            return base
        return base - (h / top) * (base - margin)

    ys = {leaf: base for leaf in range(n)}
    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", width=str(width),
                     height=str(height), viewBox=f"0 0 {width} {height}")
    ET.SubElement(svg, "title").text = f"dendrogram, {n} leaves"
    links = ET.SubElement(svg, "g", id="links", fill="none", stroke="black")
    text = ET.SubElement(svg, "g", id="labels", **{"font-family": "sans-serif", "font-size": "11"})
    for k, mg in enumerate(dend.merges):
        node = n + k
        y = y_of(mg.height)
        xl, xr = xs[mg.left], xs[mg.right]
        ET.SubElement(links, "path", id=f"q{mg.q}",
                      d=(f"M {_num(xl)} {_num(ys[mg.left])} V {_num(y)} H {_num(xr)} "
                         f"V {_num(ys[mg.right])}"))
        xs[node], ys[node] = (xl + xr) / 2, y
        lab = ET.SubElement(text, "text", x=_num(xs[node] + 3), y=_num(y - 3))
        lab.text = f"q{mg.q}"
    for leaf in range(n):
        lab = ET.SubElement(text, "text", x=_num(xs[leaf]), y=_num(base + 15),
                            **{"text-anchor": "middle"})
        lab.text = str(labels[leaf])
    return ET.tostring(svg, encoding="unicode") + "\n"
