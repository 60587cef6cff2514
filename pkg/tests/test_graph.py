import random
from fractions import Fraction
from math import inf

import pytest

from sqcolor.graph import (
    DegreeExceeded,
    DuplicateEdge,
    GraphError,
    NotAThreeVertex,
    SelfLoop,
    UndeclaredVertex,
    average_degree,
    components,
    distance,
    format_edge_list,
    from_edge_list,
    girth,
    is_connected,
    is_cycle_witness,
    is_petersen,
    read_edge_list,
    shortest_cycle,
    square,
    vertex_class,
)
from sqcolor.testkit import gen_named, gen_random_cubic, subdivide


def brute_square_edges(g):
    return {(u, v) for u in range(g.n) for v in range(u + 1, g.n) if distance(g, u, v) in (1, 2)}


def test_triangle():
    g = from_edge_list([(0, 1), (1, 2), (2, 0)])
    assert (g.n, g.num_edges) == (3, 3)


def test_duplicate_edge():
    with pytest.raises(DuplicateEdge):
        from_edge_list([(0, 1), (0, 1)])
    with pytest.raises(DuplicateEdge):
        from_edge_list([(0, 1), (1, 0)])


def test_self_loop():
    with pytest.raises(SelfLoop):
        from_edge_list([(0, 0)])


def test_star_in_subcubic_mode():
    star = [(0, i) for i in range(1, 5)]
    assert from_edge_list(star).max_degree() == 4
    with pytest.raises(DegreeExceeded):
        from_edge_list(star, subcubic=True)


def test_undeclared_vertex():
    with pytest.raises(UndeclaredVertex):
        from_edge_list([(0, 2)])
    g = from_edge_list([(0, 2)], n=3)
    assert g.degree(1) == 0
    g = from_edge_list([(0, 1)], n=2)
    assert g.num_edges == 1


def test_square_petersen_is_k10():
    sq = square(gen_named("petersen"))
    assert sq.num_edges == 45


def test_square_c6_is_4_regular():
    sq = square(gen_named("cycle(6)"))
    assert all(sq.degree(v) == 4 for v in range(6))


def test_square_figure1a_is_k8():
    assert square(gen_named("figure1a")).num_edges == 28


def test_square_matches_distance_oracle():
    rnd = random.Random(3)
    for seed in range(10):
        g = gen_random_cubic(rnd.choice([8, 12, 20]), seed)
        assert set(square(g).edges()) == brute_square_edges(g)


@pytest.mark.parametrize(
    "name,expected",
    [("figure1a", 4), ("figure1b", 3), ("cycle(9)", 9), ("petersen", 5), ("heawood", 6), ("mcgee", 7)],
)
def test_girth_fixtures(name, expected):
    assert girth(gen_named(name)) == expected


def test_girth_tree_is_infinite():
    tree = from_edge_list([(0, 1), (1, 2), (1, 3), (3, 4)])
    assert girth(tree) == inf
    assert shortest_cycle(tree) is None


def test_shortest_cycle_witnesses():
    pet = gen_named("petersen")
    cyc = shortest_cycle(pet)
    assert len(cyc) == 5 and is_cycle_witness(pet, cyc)
    c7 = gen_named("cycle(7)")
    assert sorted(shortest_cycle(c7)) == list(range(7))
    p4 = from_edge_list([(0, 1), (1, 2), (2, 3)])
    assert shortest_cycle(p4) is None


def test_girth_of_subdivision_scales():
    assert girth(subdivide(gen_named("petersen"), 1)) == 10
    assert girth(subdivide(gen_named("k4"), 2)) == 9


def test_vertex_class():
    k4s = subdivide(gen_named("k4"), 1)
    assert all(vertex_class(k4s, v) == 3 for v in range(4))
    pet = gen_named("petersen")
    assert all(vertex_class(pet, v) == 0 for v in range(10))
    with pytest.raises(NotAThreeVertex):
        vertex_class(k4s, 4)


def test_is_petersen():
    pet = gen_named("petersen")
    assert is_petersen(pet)
    assert not is_petersen(gen_named("petersen-minus-edge"))
    rnd = random.Random(0)
    for _ in range(5):
        perm = list(range(10))
        rnd.shuffle(perm)
        relabelled = from_edge_list([(perm[u], perm[v]) for u, v in pet.edges()])
        assert is_petersen(relabelled)


def test_components_and_connectivity():
    g = from_edge_list([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert len(components(g)) == 2
    assert not is_connected(g)
    assert average_degree(g) == Fraction(2)


def test_edge_list_round_trip():
    text = "# comment\n4 3\na b\nb c\nc a\nd\n"
    g, labels = read_edge_list(text)
    assert labels == ["a", "b", "c", "d"]
    assert g.degree(3) == 0
    g2, labels2 = read_edge_list(format_edge_list(g, labels))
    assert g2 == g and labels2 == labels


@pytest.mark.parametrize(
    "text,line",
    [("", 1), ("x y\n", 1), ("3 2\na b\n", 2), ("3 1\na b c\n", 2), ("2 1\na b\nc\n", 1)],
)
def test_edge_list_errors_carry_line(text, line):
    with pytest.raises(GraphError, match=f"line {line}"):
        read_edge_list(text)
