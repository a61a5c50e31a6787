import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padic_amoeba.amoeba2d import (
    AmoebaGraph,
    assemble_amoeba,
    branch_pieces,
    build_digit_tree,
    closest_zero_parameter,
    is_generic,
    maximal_pieces,
    pl_curve,
    primitive_direction,
    tree_pieces,
    zeros,
)
from padic_amoeba.errors import DegenerateFamilyError, RepeatedZeroError
from padic_amoeba.extremal import extremal_map
from padic_amoeba.instances import random_parameter_near_zeros, random_planar_instance
from padic_amoeba.linalg import AffineFormSystem, Matrix
from padic_amoeba.padic import digits
from padic_amoeba.tropical import DiscriminantMap, eval_F_exact

F_ = Fraction


def P(x, y):
    return (F_(x), F_(y))


def test_zeros_of_trinomial_system(rs_map):
    Z = zeros(rs_map)
    assert Z.zeros == (1, F_(11, 35), F_(3, 11), F_(1, 3), None, 0)
    assert Z.admissible == [0, 1, 2, 3, 5]
    assert Z.constant_forms == [4]


def test_zero_form_and_constant_family_are_rejected():
    gamma = Matrix([[1, 0], [-1, 0]])
    with pytest.raises(DegenerateFamilyError):
        zeros(DiscriminantMap(AffineFormSystem(Matrix([[0, 0], [1, 1]])), gamma, 3))
    with pytest.raises(DegenerateFamilyError):
        zeros(DiscriminantMap(AffineFormSystem(Matrix([[0, 2], [0, 1]])), gamma, 3))
    with pytest.raises(ValueError):
        zeros(DiscriminantMap.from_kernel(Matrix([[1, 0, 0], [0, 1, 0], [-1, -1, 0]]), 3))


def test_digit_tree_of_trinomial_system(rs_map):
    tree = build_digit_tree(zeros(rs_map), 3)
    assert tree.root.depth == -1
    assert set(tree.root.children) == {0, 1}
    assert tree.root.children[1].leaf == 3  # 1/3 splits off first
    inner = tree.root.children[0]
    assert inner.depth == 0
    assert {c.cohort for c in inner.children.values()} == {(0, 1), (2, 5)}
    assert all(c.depth == 1 for c in inner.children.values())
    assert sorted(tree.leaves()) == [0, 1, 2, 3, 5]
    dot = tree.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == len(tree.branches()) == 8


def test_digit_tree_rejects_repeated_zeros():
    forms = AffineFormSystem(Matrix([[1, -1], [2, -2], [1, 0]]))
    dmap = DiscriminantMap(forms, Matrix([[1, 1], [1, -2], [-2, 1]]), 2)
    with pytest.raises(RepeatedZeroError):
        build_digit_tree(zeros(dmap), 2)


def test_tree_groups_by_leading_digits():
    zs = {0: F_(1, 3), 1: F_(11, 35), 2: F_(1), 3: F_(3, 11), 4: F_(0)}
    for node in build_digit_tree(zeros(_map_with_zeros(zs.values())), 3).nodes():
        if node.is_leaf:
            continue
        prefixes = {tuple(digits(zs[i], 3, -1, node.depth - 1)) for i in node.cohort}
        assert len(prefixes) == 1
        splits = {digits(zs[i], 3, node.depth, node.depth)[0] for i in node.cohort}
        assert splits == set(node.children)


def _map_with_zeros(zs):
    zs = list(zs)
    rows = [[z.denominator, -z.numerator] for z in zs]
    gamma = [[1, k] for k in range(len(zs) - 1)]
    gamma.append([-(len(zs) - 1), -sum(range(len(zs) - 1))])
    return DiscriminantMap(AffineFormSystem(Matrix(rows)), Matrix(gamma), 3)


def test_pl_curve_of_the_zero_form(rs_map):
    c = pl_curve(rs_map, zeros(rs_map), 5)
    assert c.breakpoints == (-1, 0, 1)
    assert c.vertices == (P(-33, 9), P(-21, 9), P(-42, 18))
    assert c.head == (1, 0)
    assert c.tail == (0, -1)


def test_trinomial_system_graph(rs_map):
    G = assemble_amoeba(rs_map)
    assert G.vertices == (P(-42, 18), P(-33, 9), P(-21, 9), P(12, 0))
    assert G.segments == ((0, 2), (1, 2), (2, 3))
    assert set(G.rays) == {
        (0, (-11, 3)), (0, (1, 0)), (1, (-3, 1)), (1, (0, -1)), (3, (-1, 1)), (3, (35, -11)),
    }
    assert G.edge_count == 9


def test_graph_json_round_trip(rs_map):
    G = assemble_amoeba(rs_map)
    text = G.to_json()
    assert AmoebaGraph.from_json(text) == G
    assert AmoebaGraph.from_json(text).to_json() == text


def test_contains(rs_map):
    G = assemble_amoeba(rs_map)
    assert G.contains((F_(-27), F_(9)))
    assert G.contains((F_(-33), F_(-1000)))
    assert not G.contains((F_(0), F_(0)))
    assert not G.contains((F_(-33), F_(10)))


def test_primitive_direction():
    assert primitive_direction((F_(-6), F_(4))) == (-3, 2)
    assert primitive_direction((F_(1, 2), F_(1, 3))) == (3, 2)
    with pytest.raises(ValueError):
        primitive_direction((0, 0))


def test_branch_pieces_follow_the_tree(rs_map):
    bp = branch_pieces(rs_map)
    rays = [b for b in bp if b.end is None]
    assert len(rays) == 6  # five leaves plus the tail
    assert maximal_pieces(assemble_amoeba(rs_map)) == tree_pieces(rs_map)


@pytest.mark.parametrize("k,p", [(2, 2), (3, 3), (4, 3), (3, 5)])
def test_tree_pieces_on_extremal_families(k, p):
    d = extremal_map(k, p)
    # for k = 2, p = 2 two spine segments overlap, so the family is not generic
    assert is_generic(d) == ((k, p) != (2, 2))
    assert maximal_pieces(assemble_amoeba(d)) == tree_pieces(d)


def test_is_generic(rs_map):
    assert is_generic(rs_map)
    folded = DiscriminantMap(
        AffineFormSystem(Matrix([[1, 0], [1, -1], [1, -2]])), Matrix([[1, 0], [1, 0], [-2, 0]]), 2
    )
    assert not is_generic(folded)


def test_closest_zero(rs_map):
    assert closest_zero_parameter(rs_map, F_(1, 3) + 27) == (3, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 4), st.sampled_from([2, 3, 5, 7]))
def test_images_land_on_the_graph(seed, n, p):
    rng = random.Random(seed)
    _, d = random_planar_instance(n, p, rng)
    G = assemble_amoeba(d)
    for _ in range(20):
        lam = random_parameter_near_zeros(d, rng)
        assert G.contains(eval_F_exact(d, [lam]))
    assert maximal_pieces(G) == tree_pieces(d)
