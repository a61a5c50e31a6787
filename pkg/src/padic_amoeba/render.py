"""SVG rendering of an amoeba graph.

Coordinates stay exact until serialization, where they are rounded to six
decimals.  The y axis is flipped so the picture reads like a math plot.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence
from xml.sax.saxutils import quoteattr

from .amoeba2d import AmoebaGraph, BranchPiece, _cross, _dot
from .arrangement import _sub, clip_ray, line_intersection

Canvas = tuple[Fraction, Fraction, Fraction, Fraction]  # xmin, ymin, xmax, ymax

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
)


def _fmt(x: Fraction) -> str:
    s = f"{float(x):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _pieces(G: AmoebaGraph):
    for a, b in G.segment_points():
        yield a, _sub(b, a), Fraction(1)
    for b, d in G.ray_points():
        yield b, tuple(Fraction(x) for x in d), None


def default_canvas(G: AmoebaGraph, pad: Fraction = Fraction(1, 10)) -> Canvas:
    """Bounding box of vertices and edge crossings, padded on every side."""
    pts = list(G.vertices)
    for (p, d, s_max), (q, e, t_max) in combinations(list(_pieces(G)), 2):
        x = line_intersection(p, d, q, e)
        if x is None:
            continue
        s = _dot(_sub(x, p), d) / _dot(d, d)
        t = _dot(_sub(x, q), e) / _dot(e, e)
        if s >= 0 and t >= 0 and (s_max is None or s <= s_max) and (t_max is None or t <= t_max):
            pts.append(x)
    xs = [x for x, _ in pts] or [Fraction(0)]
    ys = [y for _, y in pts] or [Fraction(0)]
    w = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    return (min(xs) - pad * w, min(ys) - pad * w, max(xs) + pad * w, max(ys) + pad * w)


def _clip_to_canvas(base, d, canvas: Canvas):
    x0, y0, x1, y1 = canvas
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    R = max(x1 - x0, y1 - y0) / 2
    shifted = clip_ray((base[0] - cx, base[1] - cy), d, R)
    end = (shifted[0] + cx, shifted[1] + cy)
    # clip_ray works on a square; pull back onto the (possibly narrower) canvas
    ts = [Fraction(1)]
    for k, (lo, hi) in enumerate(((x0, x1), (y0, y1))):
        delta = end[k] - base[k]
        if delta > 0 and end[k] > hi:
            ts.append((hi - base[k]) / delta)
        elif delta < 0 and end[k] < lo:
            ts.append((lo - base[k]) / delta)
    t = min(ts)
    return (base[0] + t * (end[0] - base[0]), base[1] + t * (end[1] - base[1]))


def _branch_class(a, b, branches: Sequence[BranchPiece]) -> str:
    for bp in branches:
        d = bp.slope
        for q in (a, b):
            v = _sub(q, bp.start)
            if _cross(d, v) != 0 or _dot(d, v) < 0:
                break
            if bp.end is not None and _dot(d, v) > _dot(d, _sub(bp.end, bp.start)):
                break
        else:
            return "branch-" + ("root" if not bp.cohort else "-".join(map(str, bp.cohort)))
    return "branch-none"


def emit_svg(
    G: AmoebaGraph,
    canvas: Optional[Canvas] = None,
    branches: Optional[Sequence[BranchPiece]] = None,
    width: int = 800,
) -> str:
    """One ``<line>`` per edge; rays end at the canvas border.

    ``branches`` (from :func:`~padic_amoeba.amoeba2d.branch_pieces`) decides the
    color class of each edge.
    """
    if not G.segments and not G.rays:
        raise ValueError("cannot render an empty graph")
    canvas = canvas or default_canvas(G)
    x0, y0, x1, y1 = canvas
    lines = list(G.segment_points())
    lines += [(b, _clip_to_canvas(b, d, canvas)) for b, d in G.ray_points()]
    classes = [_branch_class(a, b, branches) if branches else "branch-none" for a, b in lines]
    palette = {c: PALETTE[k % len(PALETTE)] for k, c in enumerate(sorted(set(classes)))}

    w, h = x1 - x0, y1 - y0
    stroke = max(w, h) / 300
    height = max(1, round(width * float(h / w)))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{_fmt(x0)} {_fmt(-y1)} {_fmt(w)} {_fmt(h)}">',
        "<style>",
    ]
    out += [f"  .{c} {{ stroke: {col}; }}" for c, col in palette.items()]
    out += ["</style>", f'<g fill="none" stroke-width="{_fmt(stroke)}" stroke-linecap="round">']
    for (a, b), c in zip(lines, classes):
        out.append(
            f"  <line class={quoteattr(c)} x1=\"{_fmt(a[0])}\" y1=\"{_fmt(-a[1])}\" "
            f"x2=\"{_fmt(b[0])}\" y2=\"{_fmt(-b[1])}\"/>"
        )
    out += ["</g>", "</svg>"]
    return "\n".join(out) + "\n"


def svg_lines(svg: str) -> list[tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]]:
    """Read the line elements back (y unflipped), for structural checks."""
    import xml.etree.ElementTree as ET

    root = ET.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    out = []
    for el in root.iter(f"{ns}line"):
        a = (Fraction(el.get("x1")), -Fraction(el.get("y1")))
        b = (Fraction(el.get("x2")), -Fraction(el.get("y2")))
        out.append((a, b))
    return out
