from fractions import Fraction

import pytest

from padic_amoeba.amoeba2d import AmoebaGraph, assemble_amoeba, branch_pieces
from padic_amoeba.arrangement import bounded_faces
from padic_amoeba.extremal import extremal_map
from padic_amoeba.render import default_canvas, emit_svg, svg_lines


def test_trinomial_system_svg_has_two_enclosed_regions(rs_map):
    G = assemble_amoeba(rs_map)
    svg = emit_svg(G, branches=branch_pieces(rs_map))
    lines = svg_lines(svg)
    assert len(lines) == G.edge_count
    assert bounded_faces(lines) == 2
    assert svg.count('class="branch-') == G.edge_count
    assert "branch-none" not in svg


def test_single_segment():
    G = AmoebaGraph.from_pieces([((Fraction(0), Fraction(0)), (Fraction(1), Fraction(2)))], [])
    svg = emit_svg(G)
    assert svg.count("<line") == 1
    assert svg_lines(svg) == [((0, 0), (1, 2))]


def test_output_is_deterministic(rs_map):
    G = assemble_amoeba(rs_map)
    assert emit_svg(G) == emit_svg(AmoebaGraph.from_json(G.to_json()))


def test_rays_end_on_the_canvas(rs_map):
    G = assemble_amoeba(rs_map)
    x0, y0, x1, y1 = default_canvas(G)
    for a, b in svg_lines(emit_svg(G))[len(G.segments):]:
        on_edge = b[0] in (x0, x1) or b[1] in (y0, y1)
        assert on_edge or abs(b[0] - x0) < 1e-5 or abs(b[0] - x1) < 1e-5 or abs(b[1] - y0) < 1e-5 or abs(b[1] - y1) < 1e-5


def test_extremal_picture_has_rays_on_both_sides_of_the_spine():
    k, p = 3, 3
    d = extremal_map(k, p)
    G = assemble_amoeba(d)
    spine = {v[1] for v in G.vertices}
    assert spine == {0}
    dirs = {d for _, d in G.rays}
    expected = {(1, s * p**i) for s in (-1, 1) for i in range(1, k + 1)} | {(-k, -1), (-k, 1)}
    assert dirs == expected
    ups = sum(1 for _, (dx, dy) in G.rays if dy > 0)
    downs = sum(1 for _, (dx, dy) in G.rays if dy < 0)
    assert ups == downs == k + 1


def test_empty_graph_is_rejected():
    with pytest.raises(ValueError):
        emit_svg(AmoebaGraph((), (), ()))
