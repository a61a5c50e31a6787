import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padic_amoeba.amoeba2d import AmoebaGraph, assemble_amoeba
from padic_amoeba.arrangement import (
    ComplementCount,
    bounded_faces,
    check_bound,
    clip_ray,
    count_complement,
    grid_oracle_components,
    line_intersection,
    planarize,
    required_resolution,
    upper_bound,
)
from padic_amoeba.errors import ResolutionError
from padic_amoeba.extremal import extremal_map
from padic_amoeba.instances import random_planar_instance, worked_example

F_ = Fraction


def P(x, y):
    return (F_(x), F_(y))


def test_upper_bound_values():
    assert [upper_bound(n) for n in range(4)] == [11, 22, 37, 56]


def test_line_intersection():
    assert line_intersection(P(0, 0), (1, 1), P(2, 0), (-1, 1)) == P(1, 1)
    assert line_intersection(P(0, 0), (1, 1), P(2, 0), (2, 2)) is None


def test_clip_ray_hits_the_box():
    assert clip_ray(P(0, 0), (1, 2), F_(10)) == P(5, 10)
    assert clip_ray(P(1, 1), (-1, 0), F_(4)) == P(-4, 1)


def test_planarize_splits_crossings_and_overlaps():
    verts, edges = planarize([(P(0, 0), P(4, 0)), (P(2, -1), P(2, 1)), (P(1, 0), P(6, 0))])
    assert P(2, 0) in verts and P(1, 0) in verts
    assert len(edges) == 6  # 0-1-2-4-6 on the axis, plus two halves of the vertical


def test_bounded_faces_of_simple_shapes():
    square = [(P(0, 0), P(1, 0)), (P(1, 0), P(1, 1)), (P(1, 1), P(0, 1)), (P(0, 1), P(0, 0))]
    assert bounded_faces(square) == 1
    assert bounded_faces(square + [(P(0, 0), P(1, 1))]) == 2
    assert bounded_faces(square + [(P(0, 0), P(1, 1)), (P(1, 0), P(0, 1))]) == 4
    assert bounded_faces([(P(0, 0), P(1, 0))]) == 0


def test_count_on_trivial_graphs():
    assert count_complement(AmoebaGraph((), (), ())).total == 1
    line = AmoebaGraph.from_pieces([], [(P(0, 0), (1, 0)), (P(0, 0), (-1, 0))])
    assert count_complement(line) == ComplementCount(2, 0)
    tripod = AmoebaGraph.from_pieces([], [(P(0, 0), (1, 0)), (P(0, 0), (0, 1)), (P(0, 0), (-1, -1))])
    assert count_complement(tripod) == ComplementCount(3, 0)


def test_trinomial_system_counts(rs_map):
    G = assemble_amoeba(rs_map)
    assert count_complement(G) == ComplementCount(8, 2)
    ok, rep = check_bound(G, 3)
    assert ok and rep == {"total": 8, "bounded": 2, "bound": 56, "within_bound": True}
    assert grid_oracle_components(G).total == 8


def test_worked_example_counts():
    G = assemble_amoeba(worked_example())
    exact = count_complement(G)
    assert grid_oracle_components(G) == exact


@pytest.mark.parametrize("k,p", [(2, 2), (3, 3), (4, 3)])
def test_oracle_on_extremal_families(k, p):
    G = assemble_amoeba(extremal_map(k, p))
    assert grid_oracle_components(G) == count_complement(G)


def test_oracle_refuses_coarse_grids(rs_map):
    G = assemble_amoeba(rs_map)
    with pytest.raises(ResolutionError):
        grid_oracle_components(G, resolution=F_(10))
    with pytest.raises(ResolutionError):
        grid_oracle_components(G, max_cells=1000)
    assert grid_oracle_components(G, resolution=required_resolution(G)).total == 8


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 3), st.sampled_from([2, 3, 5]))
def test_oracle_agrees_on_random_instances(seed, n, p):
    _, d = random_planar_instance(n, p, random.Random(seed), spread=3)
    G = assemble_amoeba(d)
    exact = count_complement(G, n)
    assert exact.total <= upper_bound(n)
    try:
        grid = grid_oracle_components(G)
    except ResolutionError:
        return  # thin features beyond the cell budget; the oracle declines
    assert grid.total == exact.total
