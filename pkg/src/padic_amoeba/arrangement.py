"""Connected components of the complement of a planar amoeba graph.

:func:`count_complement` is exact: rays are clipped to a box that contains
every vertex and every crossing of extended supports, the clipped edges and
the box are planarized, and faces are enumerated by a half-edge walk.

:func:`grid_oracle_components` is an independent raster check: flood fill on
a pixel grid whose resolution is tied to the exact feature separation.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy import ndimage

from .amoeba2d import AmoebaGraph
from .errors import InvariantError, ResolutionError

Point = tuple[Fraction, Fraction]
Segment = tuple[Point, Point]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def upper_bound(n: int) -> int:
    """Chamber bound for ``2n + 4`` lines."""
    return 2 * n * n + 9 * n + 11


@dataclass(frozen=True)
class ComplementCount:
    total: int
    bounded: int
    bound_value: Optional[int] = None

    def report(self) -> dict:
        return {
            "total": self.total,
            "bounded": self.bounded,
            "bound": self.bound_value,
            "within_bound": None if self.bound_value is None else self.total <= self.bound_value,
        }


# ---------------------------------------------------------------------------
# exact planarization


def line_intersection(p: Point, d: Sequence, q: Point, e: Sequence) -> Optional[Point]:
    """Intersection of the lines ``p + s d`` and ``q + t e`` (None if parallel)."""
    den = _cross(d, e)
    if den == 0:
        return None
    s = _cross(_sub(q, p), e) / Fraction(den)
    return (p[0] + s * d[0], p[1] + s * d[1])


def _on_segment(x: Point, a: Point, b: Point) -> bool:
    ab, ax = _sub(b, a), _sub(x, a)
    return _cross(ab, ax) == 0 and 0 <= _dot(ab, ax) <= _dot(ab, ab)


def planarize(segments: Iterable[Segment]) -> tuple[list[Point], set[tuple[int, int]]]:
    """Split segments at every crossing and overlap; return vertices and edges."""
    segs = [(a, b) for a, b in {tuple(sorted(s)) for s in segments} if a != b]
    cuts: list[set[Point]] = [{a, b} for a, b in segs]
    for (i, (a, b)), (j, (c, d)) in combinations(enumerate(segs), 2):
        ab, cd = _sub(b, a), _sub(d, c)
        if _cross(ab, cd) == 0:
            if _cross(ab, _sub(c, a)) != 0:
                continue  # parallel, disjoint lines
            for x in (c, d):
                if _on_segment(x, a, b):
                    cuts[i].add(x)
            for x in (a, b):
                if _on_segment(x, c, d):
                    cuts[j].add(x)
            continue
        x = line_intersection(a, ab, c, cd)
        if _on_segment(x, a, b) and _on_segment(x, c, d):
            cuts[i].add(x)
            cuts[j].add(x)
    edge_pts: set[tuple[Point, Point]] = set()
    for (a, b), pts in zip(segs, cuts):
        d = _sub(b, a)
        order = sorted(pts, key=lambda x: _dot(_sub(x, a), d))
        for u, v in zip(order, order[1:]):
            edge_pts.add(tuple(sorted((u, v))))
    verts = sorted({x for e in edge_pts for x in e})
    idx = {x: k for k, x in enumerate(verts)}
    return verts, {(idx[u], idx[v]) for u, v in edge_pts}


def _angle_cmp(u, w) -> int:
    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    hu, hw = half(u), half(w)
    if hu != hw:
        return hu - hw
    c = _cross(u, w)
    return -1 if c > 0 else (1 if c < 0 else 0)


def face_cycles(verts: list[Point], edges: set[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """All boundary walks of the planar straight-line graph, as lists of half-edges.

    Faces lie to the left of their walks, so bounded faces are walked
    counter-clockwise.
    """
    around: dict[int, list[int]] = defaultdict(list)
    for u, v in edges:
        around[u].append(v)
        around[v].append(u)
    pos: dict[tuple[int, int], int] = {}
    for v, nbrs in around.items():
        nbrs.sort(key=cmp_to_key(lambda a, b: _angle_cmp(_sub(verts[a], verts[v]), _sub(verts[b], verts[v]))))
        for k, w in enumerate(nbrs):
            pos[(v, w)] = k
    seen: set[tuple[int, int]] = set()
    cycles = []
    for start in pos:
        if start in seen:
            continue
        cyc = []
        h = start
        while h not in seen:
            seen.add(h)
            cyc.append(h)
            u, v = h
            nbrs = around[v]
            w = nbrs[(pos[(v, u)] - 1) % len(nbrs)]
            h = (v, w)
        cycles.append(cyc)
    return cycles


def _area2(verts: list[Point], cyc: list[tuple[int, int]]) -> Fraction:
    return sum((_cross(verts[u], verts[v]) for u, v in cyc), Fraction(0))


def _components(nv: int, edges: Iterable[tuple[int, int]]) -> int:
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(x) for x in range(nv)})


def bounded_faces(segments: Iterable[Segment]) -> int:
    """Number of bounded faces of a finite set of segments."""
    verts, edges = planarize(segments)
    return sum(1 for c in face_cycles(verts, edges) if _area2(verts, c) > 0)


# ---------------------------------------------------------------------------
# the exact count


def _supports(G: AmoebaGraph) -> list[tuple[Point, tuple]]:
    out = [(a, _sub(b, a)) for a, b in G.segment_points()]
    out += [(b, tuple(Fraction(x) for x in d)) for b, d in G.ray_points()]
    return out


def arrangement_box(G: AmoebaGraph) -> Fraction:
    """Half-width ``R`` of the square ``[-R, R]^2`` used to clip rays."""
    pts = list(G.vertices)
    sup = _supports(G)
    for (p, d), (q, e) in combinations(sup, 2):
        x = line_intersection(p, d, q, e)
        if x is not None:
            pts.append(x)
    big = max((max(abs(x), abs(y)) for x, y in pts), default=Fraction(0))
    return 2 * (big + 1)


def clip_ray(base: Point, d: Sequence, R: Fraction) -> Point:
    """Point where the ray leaves the square ``[-R, R]^2`` (base assumed inside)."""
    ts = []
    for k in (0, 1):
        if d[k] > 0:
            ts.append((R - base[k]) / d[k])
        elif d[k] < 0:
            ts.append((-R - base[k]) / d[k])
    t = min(ts)
    return (base[0] + t * d[0], base[1] + t * d[1])


def count_complement(G: AmoebaGraph, n: Optional[int] = None) -> ComplementCount:
    """Exact number of complement components (and bounded ones) of ``G``."""
    bound = upper_bound(n) if n is not None else None
    if not G.segments and not G.rays:
        return ComplementCount(1, 0, bound)
    R = arrangement_box(G)
    segs: list[Segment] = list(G.segment_points())
    segs += [(b, clip_ray(b, d, R)) for b, d in G.ray_points()]
    corners = [(-R, -R), (R, -R), (R, R), (-R, R)]
    segs += [(corners[k], corners[(k + 1) % 4]) for k in range(4)]
    verts, edges = planarize(segs)
    cycles = face_cycles(verts, edges)
    inner = [c for c in cycles if _area2(verts, c) > 0]

    def on_box(e):
        (x1, y1), (x2, y2) = verts[e[0]], verts[e[1]]
        return (x1 == x2 and abs(x1) == R) or (y1 == y2 and abs(y1) == R)

    bounded = sum(1 for c in inner if not any(on_box(h) for h in c))
    ncomp = _components(len(verts), edges)
    if len(verts) - len(edges) + len(inner) + 1 != 1 + ncomp:  # +1 for the outer face
        raise InvariantError(
            f"Euler check failed: V={len(verts)} E={len(edges)} F={len(inner)} C={ncomp}"
        )
    return ComplementCount(len(inner), bounded, bound)


def check_bound(G: AmoebaGraph, n: int) -> tuple[bool, dict]:
    cc = count_complement(G, n)
    rep = cc.report()
    return bool(rep["within_bound"]), rep


# ---------------------------------------------------------------------------
# raster oracle


def _seg_dist2(x: Point, a: Point, b: Point) -> Fraction:
    ab, ax = _sub(b, a), _sub(x, a)
    L = _dot(ab, ab)
    t = min(max(_dot(ax, ab) / L, Fraction(0)), Fraction(1))
    dx = (ax[0] - t * ab[0], ax[1] - t * ab[1])
    return _dot(dx, dx)


def _oracle_features(G: AmoebaGraph):
    """Planarized pieces with rays clipped well past every crossing."""
    R = arrangement_box(G)
    segs = list(G.segment_points()) + [(b, clip_ray(b, d, R)) for b, d in G.ray_points()]
    verts, edges = planarize(segs)
    return R, verts, sorted(edges)


def feature_separation2(verts: list[Point], edges: Sequence[tuple[int, int]]) -> Optional[Fraction]:
    """Squared minimum distance between non-incident vertex/edge and edge/edge pairs."""
    best: Optional[Fraction] = None

    def upd(x):
        nonlocal best
        if best is None or x < best:
            best = x

    for v, x in enumerate(verts):
        for a, b in edges:
            if v not in (a, b):
                upd(_seg_dist2(x, verts[a], verts[b]))
    for (a, b), (c, d) in combinations(edges, 2):
        if {a, b} & {c, d}:
            continue
        # planarized edges only meet at shared vertices, so endpoint distances suffice
        upd(min(_seg_dist2(verts[c], verts[a], verts[b]), _seg_dist2(verts[d], verts[a], verts[b]),
                _seg_dist2(verts[a], verts[c], verts[d]), _seg_dist2(verts[b], verts[c], verts[d])))
    return best


def required_resolution(G: AmoebaGraph) -> Fraction:
    """A grid spacing fine enough for :func:`grid_oracle_components`."""
    _, verts, edges = _oracle_features(G)
    sep2 = feature_separation2(verts, edges)
    if sep2 is None:
        return Fraction(1, 8)
    h = Fraction(math.sqrt(sep2) / 20).limit_denominator(1 << 20)
    while 400 * h * h > sep2:
        h *= Fraction(15, 16)
    return h


def _raster(shape, origin, h: float, pieces) -> np.ndarray:
    """Mark pixels whose centre is within one pixel of a segment."""
    ny, nx = shape
    blocked = np.zeros(shape, dtype=bool)
    for (ax, ay), (bx, by) in pieces:
        A = np.array([(float(ax) - origin[0]) / h, (float(ay) - origin[1]) / h])
        Bp = np.array([(float(bx) - origin[0]) / h, (float(by) - origin[1]) / h])
        length = float(np.hypot(*(Bp - A)))
        nchunks = max(1, int(length // 32) + 1)
        for k in range(nchunks):
            P = A + (Bp - A) * (k / nchunks)
            Q = A + (Bp - A) * ((k + 1) / nchunks)
            lo = np.floor(np.minimum(P, Q)).astype(int) - 2
            hi = np.ceil(np.maximum(P, Q)).astype(int) + 2
            i0, i1 = max(lo[0], 0), min(hi[0], nx)
            j0, j1 = max(lo[1], 0), min(hi[1], ny)
            if i0 >= i1 or j0 >= j1:
                continue
            cx = np.arange(i0, i1) + 0.5
            cy = np.arange(j0, j1) + 0.5
            X, Y = np.meshgrid(cx, cy)
            d = Q - P
            L2 = float(d @ d)
            if L2 == 0:
                dist2 = (X - P[0]) ** 2 + (Y - P[1]) ** 2
            else:
                t = np.clip(((X - P[0]) * d[0] + (Y - P[1]) * d[1]) / L2, 0.0, 1.0)
                dist2 = (X - P[0] - t * d[0]) ** 2 + (Y - P[1] - t * d[1]) ** 2
            blocked[j0:j1, i0:i1] |= dist2 <= 1.0
    return blocked


def grid_oracle_components(
    G: AmoebaGraph, resolution: Optional[Fraction] = None, max_cells: int = 40_000_000
) -> ComplementCount:
    """Count complement components by flood fill on a pixel grid.

    Pixels within one pixel width of the amoeba are blocked; 4-connected free
    pixels form clusters, clusters touching the grid border are merged along
    the border between blocked crossings.  A cluster counts if it reaches the
    border or holds a pixel at least three pixels from any blocked one, which
    discards the slivers left in sharp corners.

    ``resolution`` must be at most 1/20 of the exact feature separation,
    otherwise :class:`ResolutionError` is raised.  So is a grid larger than
    ``max_cells``.
    """
    if not G.segments and not G.rays:
        return ComplementCount(1, 0)
    R, verts, edges = _oracle_features(G)
    sep2 = feature_separation2(verts, edges)
    h = Fraction(resolution) if resolution is not None else required_resolution(G)
    if h <= 0:
        raise ResolutionError("resolution must be positive")
    if sep2 is not None and 400 * h * h > sep2:
        raise ResolutionError(
            f"resolution {h} is coarser than 1/20 of the feature separation {math.sqrt(sep2):.6g}"
        )
    # grid window: every vertex and crossing plus a margin; only rays leave it
    window = [x for x in verts if abs(x[0]) != R and abs(x[1]) != R] or [(Fraction(0), Fraction(0))]
    xs = [x for x, _ in window]
    ys = [y for _, y in window]
    sep = Fraction(math.sqrt(sep2)).limit_denominator(1 << 20) if sep2 is not None else Fraction(1)
    # wedges between slowly diverging rays must open to several pixels
    # before the border, otherwise their components vanish from the raster
    sines = []
    for (_, d), (_, e) in combinations(G.ray_points(), 2):
        c = abs(_cross(d, e))
        if c:
            sines.append(float(c) / math.hypot(*d) / math.hypot(*e))
    spread = Fraction(12 / min(sines)).limit_denominator(1 << 16) if sines else Fraction(0)
    margin = 2 * sep + 8 * h + spread * h
    x0, x1 = min(xs) - margin, max(xs) + margin
    y0, y1 = min(ys) - margin, max(ys) + margin
    nx = int(math.ceil((x1 - x0) / h))
    ny = int(math.ceil((y1 - y0) / h))
    if nx * ny > max_cells:
        raise ResolutionError(f"grid of {nx}x{ny} cells exceeds max_cells={max_cells}")
    reach = 2 * max(abs(x0), abs(x1), abs(y0), abs(y1), R)
    pieces = list(G.segment_points()) + [(b, clip_ray(b, d, reach)) for b, d in G.ray_points()]
    blocked = _raster((ny, nx), (float(x0), float(y0)), float(h), pieces)
    free = ~blocked
    labels, nlab = ndimage.label(free)
    depth = ndimage.distance_transform_edt(free)
    deep_labels = set(np.unique(labels[depth >= 3.0]).tolist()) - {0}

    parent = list(range(nlab + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ring = np.concatenate([
        labels[0, :], labels[1:, -1], labels[-1, -2::-1], labels[-2:0:-1, 0],
    ])
    for a, b in zip(ring, np.roll(ring, -1)):
        if a and b:
            parent[find(int(a))] = find(int(b))
    border = {find(int(x)) for x in ring if x}
    roots = {find(x) for x in deep_labels} | border
    return ComplementCount(len(roots), len(roots - border))
