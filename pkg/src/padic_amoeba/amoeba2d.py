"""The two-dimensional (m = 2) amoeba as an exact piecewise-linear graph.

With forms ``f_i(x) = a_i x + b_i`` and zeros ``z_i = -b_i / a_i``, put
``x = z_i + u`` with ``v_p(u) = t``.  Then ``v_p(f_j) = v_p(a_j) + min(v_p(z_i -
z_j), t)`` and the image traces the curve

    c_i(t) = sum_{a_j != 0} gamma_j (v(a_j) + min(d_ij, t)) + sum_{a_j = 0} gamma_j v(b_j)

which bends only at the distances ``d_ij = v_p(z_i - z_j)``.  The curves for
different ``i`` agree until their zeros separate p-adically, so the union is
organized by the digit tree of the zeros.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .errors import DegenerateFamilyError, RepeatedZeroError
from .padic import INF, check_prime, digit, val_p
from .tropical import DiscriminantMap

Point = tuple[Fraction, Fraction]
Vec = tuple[int, int]


# ---------------------------------------------------------------------------
# small exact vector helpers


def _add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def _scale(k: Fraction, a: Sequence[Fraction]) -> Point:
    return (k * a[0], k * a[1])


def _cross(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def primitive_direction(v: Sequence[Fraction | int]) -> Vec:
    """Scale a nonzero rational vector to a primitive integer vector (same orientation)."""
    fx, fy = Fraction(v[0]), Fraction(v[1])
    if fx == 0 and fy == 0:
        raise ValueError("zero direction")
    den = math.lcm(fx.denominator, fy.denominator)
    x, y = int(fx * den), int(fy * den)
    g = math.gcd(x, y)
    return (x // g, y // g)


# ---------------------------------------------------------------------------
# zeros


@dataclass(frozen=True)
class ZeroSet:
    """``zeros[i]`` is ``z_i``, or ``None`` for a constant form (``a_i == 0``)."""

    zeros: tuple[Optional[Fraction], ...]
    constants: tuple[Fraction, ...]

    @property
    def admissible(self) -> list[int]:
        return [i for i, z in enumerate(self.zeros) if z is not None]

    @property
    def constant_forms(self) -> list[int]:
        return [i for i, z in enumerate(self.zeros) if z is None]


def zeros(dmap: DiscriminantMap) -> ZeroSet:
    if dmap.m != 2:
        raise ValueError(f"the planar pipeline needs m = 2, got m = {dmap.m}")
    zs, bs = [], []
    for i in range(dmap.nforms):
        a, b = (Fraction(x) for x in dmap.forms.form(i))
        if a == 0 and b == 0:
            raise DegenerateFamilyError(f"form {i} is identically zero")
        zs.append(None if a == 0 else -b / a)
        bs.append(b)
    if all(z is None for z in zs):
        raise DegenerateFamilyError("no form depends on the parameter")
    return ZeroSet(tuple(zs), tuple(bs))


# ---------------------------------------------------------------------------
# digit tree


@dataclass
class TreeNode:
    """Node of the digit tree.

    Internal nodes carry the valuation ``depth`` at which their cohort splits;
    leaves carry the form index in ``leaf``.
    """

    cohort: tuple[int, ...]
    depth: Optional[int] = None
    leaf: Optional[int] = None
    children: dict[int, "TreeNode"] = field(default_factory=dict)

    @property
    def is_leaf(self) -> bool:
        return self.leaf is not None

    def walk(self) -> Iterator["TreeNode"]:
        yield self
        for d in sorted(self.children):
            yield from self.children[d].walk()


@dataclass
class DigitTree:
    root: TreeNode
    prime: int
    zeros: dict[int, Fraction]

    def nodes(self) -> list[TreeNode]:
        return list(self.root.walk())

    def branches(self) -> list[tuple[TreeNode, int, TreeNode]]:
        """``(parent, digit, child)`` for every edge of the tree."""
        out = []
        for node in self.root.walk():
            for d in sorted(node.children):
                out.append((node, d, node.children[d]))
        return out

    def leaves(self) -> list[int]:
        return [n.leaf for n in self.root.walk() if n.is_leaf]

    def shape(self):
        """Nested, order-insensitive description used for isomorphism checks."""

        def rec(node: TreeNode):
            if node.is_leaf:
                return ("leaf", node.leaf)
            kids = sorted((d, rec(c)) for d, c in node.children.items())
            return ("node", node.depth, tuple(kids))

        return rec(self.root)

    def to_dot(self, labels: Optional[dict[int, str]] = None) -> str:
        lines = ["digraph digit_tree {", "  node [shape=circle];"]
        ids: dict[int, str] = {}
        for k, node in enumerate(self.root.walk()):
            ids[id(node)] = f"n{k}"
            if node.is_leaf:
                text = labels.get(node.leaf) if labels else None
                text = text or f"z{node.leaf} = {self.zeros[node.leaf]}"
                lines.append(f'  n{k} [shape=box, label="{text}"];')
            else:
                lines.append(f'  n{k} [label="{node.depth}"];')
        for parent, d, child in self.branches():
            lines.append(f'  {ids[id(parent)]} -> {ids[id(child)]} [label="{d}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _min_pair_val(cohort: Sequence[int], z: dict[int, Fraction], p: int) -> int:
    # ultrametric: the minimum over all pairs equals the minimum against one member
    first = z[cohort[0]]
    return min(val_p(z[j] - first, p) for j in cohort[1:])


def build_digit_tree(Z: ZeroSet, p: int) -> DigitTree:
    check_prime(p)
    z = {i: Z.zeros[i] for i in Z.admissible}
    seen: dict[Fraction, int] = {}
    for i, zi in z.items():
        if zi in seen:
            raise RepeatedZeroError(f"forms {seen[zi]} and {i} share the zero {zi}")
        seen[zi] = i

    def grow(cohort: tuple[int, ...]) -> TreeNode:
        if len(cohort) == 1:
            return TreeNode(cohort=cohort, leaf=cohort[0])
        depth = _min_pair_val(cohort, z, p)
        groups: dict[int, list[int]] = {}
        for i in cohort:
            groups.setdefault(digit(z[i], p, depth), []).append(i)
        node = TreeNode(cohort=cohort, depth=depth)
        for d, members in groups.items():
            node.children[d] = grow(tuple(members))
        return node

    return DigitTree(grow(tuple(z)), p, z)


# ---------------------------------------------------------------------------
# closed-form curves


@dataclass(frozen=True)
class PLCurve:
    """Image of ``t -> c_i(t)``: vertices at the breakpoints plus two end rays.

    ``tail`` is the direction travelled as ``t`` decreases past the first
    breakpoint (``None`` when the curve is constant there).
    """

    index: int
    breakpoints: tuple[int, ...]
    vertices: tuple[Point, ...]
    head: Vec
    tail: Optional[Vec]
    anchor: Point


class _CurveData:
    """Per-instance constants shared by all curves."""

    def __init__(self, dmap: DiscriminantMap, Z: ZeroSet):
        p = dmap.prime
        self.dmap, self.Z, self.p = dmap, Z, p
        self.gamma = [tuple(Fraction(x) for x in dmap.gamma.row(i)) for i in range(dmap.nforms)]
        const: Point = (Fraction(0), Fraction(0))
        for j in range(dmap.nforms):
            a, b = dmap.forms.form(j)
            w = val_p(a, p) if a != 0 else val_p(b, p)
            const = _add(const, _scale(Fraction(w), self.gamma[j]))
        # c_i(t) = const + sum_{a_j != 0} gamma_j min(d_ij, t)
        self.const = const
        slope = (Fraction(0), Fraction(0))
        for j in Z.admissible:
            slope = _add(slope, self.gamma[j])
        self.total_slope = slope

    def point(self, i: int, t: Fraction) -> Point:
        z = self.Z.zeros
        out = self.const
        for j in self.Z.admissible:
            d = INF if j == i else val_p(z[i] - z[j], self.p)
            out = _add(out, _scale(Fraction(min(d, t)), self.gamma[j]))
        return out


def pl_curve(dmap: DiscriminantMap, Z: ZeroSet, i: int, _data: Optional[_CurveData] = None) -> PLCurve:
    """Closed-form piecewise-linear curve of form ``i`` (parameter ``t = l - v(a_i)``)."""
    if Z.zeros[i] is None:
        raise ValueError(f"form {i} has no zero")
    data = _data or _CurveData(dmap, Z)
    zi = Z.zeros[i]
    bps = sorted({val_p(zi - Z.zeros[j], dmap.prime) for j in Z.admissible if j != i})
    verts = tuple(data.point(i, Fraction(t)) for t in bps)
    tail = None if data.total_slope == (0, 0) else primitive_direction(_scale(Fraction(-1), data.total_slope))
    anchor = verts[0] if verts else data.point(i, Fraction(0))
    return PLCurve(i, tuple(bps), verts, primitive_direction(data.gamma[i]), tail, anchor)


# ---------------------------------------------------------------------------
# the graph


@dataclass(frozen=True)
class AmoebaGraph:
    vertices: tuple[Point, ...]
    segments: tuple[tuple[int, int], ...]
    rays: tuple[tuple[int, Vec], ...]

    @property
    def edge_count(self) -> int:
        return len(self.segments) + len(self.rays)

    @classmethod
    def from_pieces(cls, segs, rays) -> "AmoebaGraph":
        """Canonical graph from point-level pieces; exact duplicates collapse."""
        seg_set = {tuple(sorted(s)) for s in segs if s[0] != s[1]}
        ray_set = {(b, primitive_direction(d)) for b, d in rays}
        pts = sorted({q for s in seg_set for q in s} | {b for b, _ in ray_set})
        idx = {q: k for k, q in enumerate(pts)}
        return cls(
            tuple(pts),
            tuple(sorted((idx[a], idx[b]) for a, b in seg_set)),
            tuple(sorted((idx[b], d) for b, d in ray_set)),
        )

    def segment_points(self) -> list[tuple[Point, Point]]:
        return [(self.vertices[a], self.vertices[b]) for a, b in self.segments]

    def ray_points(self) -> list[tuple[Point, Vec]]:
        return [(self.vertices[b], d) for b, d in self.rays]

    def contains(self, q: Sequence[Fraction]) -> bool:
        """Exact point-on-graph test."""
        q = (Fraction(q[0]), Fraction(q[1]))
        for a, b in self.segment_points():
            ab, aq = (b[0] - a[0], b[1] - a[1]), (q[0] - a[0], q[1] - a[1])
            if _cross(ab, aq) == 0 and 0 <= _dot(ab, aq) <= _dot(ab, ab):
                return True
        for base, d in self.ray_points():
            bq = (q[0] - base[0], q[1] - base[1])
            if _cross(d, bq) == 0 and _dot(d, bq) >= 0:
                return True
        return False

    # -- serialization ------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "vertices": [[str(x), str(y)] for x, y in self.vertices],
            "segments": [list(s) for s in self.segments],
            "rays": [{"base": b, "dir": list(d)} for b, d in self.rays],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str | dict) -> "AmoebaGraph":
        obj = json.loads(text) if isinstance(text, str) else text
        verts = tuple((Fraction(x), Fraction(y)) for x, y in obj["vertices"])
        segs = tuple((int(a), int(b)) for a, b in obj["segments"])
        rays = tuple((int(r["base"]), (int(r["dir"][0]), int(r["dir"][1]))) for r in obj["rays"])
        return cls(verts, segs, rays)


def assemble_amoeba(dmap: DiscriminantMap) -> AmoebaGraph:
    """Union of the closed-form curves of every form with a zero."""
    Z = zeros(dmap)
    build_digit_tree(Z, dmap.prime)  # rejects repeated zeros
    data = _CurveData(dmap, Z)
    segs, rays = [], []
    for i in Z.admissible:
        c = pl_curve(dmap, Z, i, data)
        for a, b in zip(c.vertices, c.vertices[1:]):
            segs.append((a, b))
        end = c.vertices[-1] if c.vertices else c.anchor
        rays.append((end, c.head))
        if c.tail is not None:
            rays.append((c.anchor, c.tail))
    return AmoebaGraph.from_pieces(segs, rays)


# ---------------------------------------------------------------------------
# straight pieces and the tree correspondence


def canonical_piece(piece) -> tuple:
    """Hashable normal form for ``("segment", p, q)``, ``("ray", base, dir)``, ``("line", q, dir)``."""
    kind = piece[0]
    if kind == "segment":
        return ("segment", tuple(sorted((piece[1], piece[2]))))
    if kind == "ray":
        return ("ray", piece[1], primitive_direction(piece[2]))
    # line: normalize to (primitive normal n with n > 0 lexicographically, n . q)
    q, d = piece[1], primitive_direction(piece[2])
    n = (d[1], -d[0])
    if n < (0, 0):
        n = (-n[0], -n[1])
    return ("line", n, n[0] * q[0] + n[1] * q[1])


def maximal_pieces(G: AmoebaGraph) -> set[tuple]:
    """Merge edges that continue straight through degree-2 vertices."""
    # half-edge style adjacency: vertex -> list of (direction, edge id)
    edges: list[list] = []
    for a, b in G.segments:
        edges.append(["segment", a, b])
    for b, d in G.rays:
        edges.append(["ray", b, d])
    incident: dict[int, list[int]] = {}
    for k, e in enumerate(edges):
        incident.setdefault(e[1], []).append(k)
        if e[0] == "segment":
            incident.setdefault(e[2], []).append(k)

    def outgoing(k: int, v: int) -> tuple[Fraction, Fraction]:
        e = edges[k]
        if e[0] == "ray":
            return tuple(Fraction(x) for x in e[2])
        other = e[2] if e[1] == v else e[1]
        P, Q = G.vertices[v], G.vertices[other]
        return (Q[0] - P[0], Q[1] - P[1])

    def straight(v: int) -> bool:
        ks = incident.get(v, [])
        if len(ks) != 2:
            return False
        u, w = outgoing(ks[0], v), outgoing(ks[1], v)
        return _cross(u, w) == 0 and _dot(u, w) < 0

    seen: set[int] = set()
    out: set[tuple] = set()
    for k0 in range(len(edges)):
        if k0 in seen:
            continue
        # collect the chain through straight vertices
        chain = {k0}
        ends = []
        stack = [(k0, v) for v in ([edges[k0][1], edges[k0][2]] if edges[k0][0] == "segment" else [edges[k0][1]])]
        while stack:
            k, v = stack.pop()
            if straight(v):
                nxt = next(x for x in incident[v] if x != k)
                if nxt not in chain:
                    chain.add(nxt)
                    e = edges[nxt]
                    if e[0] == "segment":
                        stack.append((nxt, e[2] if e[1] == v else e[1]))
                continue
            ends.append(v)
        seen |= chain
        ray_dirs = [edges[k][2] for k in chain if edges[k][0] == "ray"]
        if len(ray_dirs) == 2:
            out.add(canonical_piece(("line", G.vertices[edges[next(iter(chain))][1]], ray_dirs[0])))
        elif len(ray_dirs) == 1:
            out.add(canonical_piece(("ray", G.vertices[ends[0]], ray_dirs[0])))
        else:
            out.add(canonical_piece(("segment", G.vertices[ends[0]], G.vertices[ends[1]])))
    return out


@dataclass(frozen=True)
class BranchPiece:
    """A tree branch realized geometrically through the slope rule."""

    cohort: tuple[int, ...]
    start: Point
    slope: Point
    end: Optional[Point]  # None for rays

    def canonical(self) -> tuple:
        if self.end is None:
            return canonical_piece(("ray", self.start, self.slope))
        return canonical_piece(("segment", self.start, self.end))


def branch_pieces(dmap: DiscriminantMap, tree: Optional[DigitTree] = None) -> list[BranchPiece]:
    """Walk the digit tree, placing nodes by accumulating cohort slopes.

    The root sits at ``c(t0)`` for the root depth ``t0``; each child node is
    its parent moved by ``(depth_child - depth_parent) * sum_{j in cohort} gamma_j``.
    Leaves become rays with direction ``gamma_i``.  The extra piece for
    ``t -> -inf`` appears when the slope summed over all forms with a zero is
    nonzero.  Zero-length branches are dropped.
    """
    Z = zeros(dmap)
    tree = tree or build_digit_tree(Z, dmap.prime)
    p = dmap.prime
    gamma = [tuple(Fraction(x) for x in dmap.gamma.row(i)) for i in range(dmap.nforms)]

    def cohort_slope(cohort) -> Point:
        s = (Fraction(0), Fraction(0))
        for j in cohort:
            s = _add(s, gamma[j])
        return s

    root = tree.root
    t0 = Fraction(root.depth if root.depth is not None else 0)
    pos: Point = (Fraction(0), Fraction(0))
    for j in range(dmap.nforms):
        a, b = (Fraction(x) for x in dmap.forms.form(j))
        if a != 0:
            pos = _add(pos, _scale(val_p(a, p) + t0, gamma[j]))
        else:
            pos = _add(pos, _scale(Fraction(val_p(b, p)), gamma[j]))

    pieces: list[BranchPiece] = []
    total = cohort_slope(root.cohort)
    if total != (0, 0):
        pieces.append(BranchPiece((), pos, _scale(Fraction(-1), total), None))

    def rec(node: TreeNode, here: Point) -> None:
        if node.is_leaf:
            pieces.append(BranchPiece(node.cohort, here, gamma[node.leaf], None))
            return
        for d in sorted(node.children):
            child = node.children[d]
            if child.is_leaf:
                rec(child, here)
                continue
            slope = cohort_slope(child.cohort)
            there = _add(here, _scale(Fraction(child.depth - node.depth), slope))
            if there != here:
                pieces.append(BranchPiece(child.cohort, here, slope, there))
            rec(child, there)

    rec(root, pos)
    return pieces


def tree_pieces(dmap: DiscriminantMap) -> set[tuple]:
    """Maximal straight pieces predicted by the digit tree and the slope rule."""
    bp = branch_pieces(dmap)
    G = AmoebaGraph.from_pieces(
        [(b.start, b.end) for b in bp if b.end is not None],
        [(b.start, b.slope) for b in bp if b.end is None],
    )
    return maximal_pieces(G)


def is_generic(dmap: DiscriminantMap) -> bool:
    """Tree-level general position for the planar pipeline.

    Requires distinct zeros, no zero-slope branch, and no two pieces leaving a
    tree node in the same direction (which would fold them onto each other).
    Straight continuation through a node is allowed.
    """
    try:
        Z = zeros(dmap)
        tree = build_digit_tree(Z, dmap.prime)
    except (DegenerateFamilyError, RepeatedZeroError):
        return False
    if len(Z.admissible) < 2:
        return False
    gamma = [tuple(Fraction(x) for x in dmap.gamma.row(i)) for i in range(dmap.nforms)]

    def slope(cohort):
        s = (Fraction(0), Fraction(0))
        for j in cohort:
            s = _add(s, gamma[j])
        return s

    for node in tree.nodes():
        if node.is_leaf:
            continue
        dirs = [slope(c.cohort) for c in node.children.values()]
        up = slope(node.cohort)  # incoming slope; reversed it points toward the parent
        if node is not tree.root or up != (0, 0):
            dirs.append(_scale(Fraction(-1), up))
        if any(d == (0, 0) for d in dirs):
            return False
        if any(_cross(u, w) == 0 and _dot(u, w) > 0 for u, w in combinations(dirs, 2)):
            return False
    return True


def closest_zero_parameter(dmap: DiscriminantMap, lam: Fraction) -> tuple[int, int]:
    """The form whose zero is p-adically closest to ``lam`` and that distance."""
    Z = zeros(dmap)
    best = max(Z.admissible, key=lambda i: (val_p(lam - Z.zeros[i], dmap.prime), -i))
    return best, val_p(lam - Z.zeros[best], dmap.prime)
