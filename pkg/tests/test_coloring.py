import random

import pytest

from sqcolor.coloring import (
    PartialColoring,
    Unsatisfiable,
    color_all_but_edge,
    complete_by_search,
    excess,
    finish_order,
    finish_two_excess,
    format_coloring,
    format_lists,
    greedy_extend,
    pick_saving_pair,
    read_coloring,
    read_lists,
    sdr_assign,
    uniform_lists,
    verify_square_coloring,
)
from sqcolor.errors import Disconnected, PreconditionViolated, StuckAt
from sqcolor.graph import GraphError, distances_from, from_edge_list
from sqcolor.testkit import gen_named, gen_random_cubic, random_lists

PATH5 = from_edge_list([(0, 1), (1, 2), (2, 3), (3, 4)])


def test_excess_values():
    c9 = gen_named("cycle(9)")
    assert excess(PartialColoring(c9, uniform_lists(9, 8)), 0) >= 3
    pet = gen_named("petersen")
    assert excess(PartialColoring(pet, uniform_lists(10, 8)), 0) == 0
    fig = gen_named("figure1b")
    tri = next(v for v in range(8) if any(fig.has_edge(a, b) for a in fig.adj[v] for b in fig.adj[v] if a < b))
    assert excess(PartialColoring(fig, uniform_lists(8, 8)), tri) >= 2


def test_remaining_tracks_neighbours():
    pc = PartialColoring(PATH5, uniform_lists(5, 3))
    pc.assign(0, 1)
    assert pc.remaining(2) == {2, 3}
    assert pc.remaining(3) == {1, 2, 3}
    with pytest.raises(PreconditionViolated):
        pc.assign(1, 1)
    with pytest.raises(PreconditionViolated):
        pc.assign(0, 2)


def test_greedy_single_step_and_stuck():
    pc = PartialColoring(PATH5, [{4, 7}] + [{1}] * 4)
    greedy_extend(pc, [0])
    assert pc.color[0] == 4
    pc = PartialColoring(PATH5, [{1}] * 5)
    pc.assign(0, 1)
    with pytest.raises(StuckAt) as info:
        greedy_extend(pc, [1, 2])
    assert info.value.vertex == 1
    assert pc.color[1] is None  # rolled back


def test_distance_class_order_never_sticks():
    rnd = random.Random(2)
    for seed in range(20):
        g = gen_random_cubic(rnd.choice([10, 20, 40]), seed)
        u, v = g.edges()[0]
        pc = color_all_but_edge(g, random_lists(g.n, 8, 12, rnd), (u, v))
        assert sorted(pc.uncolored()) == sorted((u, v))
        pc.assert_consistent()


@pytest.mark.parametrize("name", ["petersen", "cycle(7)"])
def test_color_all_but_edge(name, rng):
    g = gen_named(name)
    pc = color_all_but_edge(g, random_lists(g.n, 8, 16, rng), (0, 1))
    assert sorted(pc.uncolored()) == [0, 1]
    pc.assert_consistent()


def test_color_all_but_edge_disconnected():
    g = from_edge_list([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    with pytest.raises(Disconnected):
        color_all_but_edge(g, uniform_lists(6, 8), (0, 1))


def test_finish_two_excess_two_vertex(rng):
    for _ in range(20):
        g = gen_random_cubic(20, rng.randrange(1000))
        a, b = g.edges()[0]
        edges = [e for e in g.edges() if e != (a, b)] + [(a, 20), (20, b)]
        h = from_edge_list(edges)
        # the 2-vertex has excess at least 3 and goes last
        u, v = a, 20
        L = random_lists(h.n, 8, 10, rng)
        pc = PartialColoring(h, L)
        d = distances_from(h, [u, v])
        order = sorted((x for x in range(h.n) if x not in (u, v)), key=lambda x: (-d[x], x)) + [u, v]
        done = finish_two_excess(pc, u, v, order)
        assert verify_square_coloring(h, L, done.coloring()) is None


def test_finish_two_excess_contracts():
    pet = gen_named("petersen")
    pc = PartialColoring(pet, uniform_lists(10, 8))
    with pytest.raises(PreconditionViolated):
        finish_two_excess(pc, 0, 1)
    c12 = gen_named("cycle(12)")
    pc = PartialColoring(c12, uniform_lists(12, 8))
    with pytest.raises(PreconditionViolated):
        finish_two_excess(pc, 0, 6)


def test_finish_order_ends_with_pair():
    c9 = gen_named("cycle(9)")
    pc = PartialColoring(c9, uniform_lists(9, 8))
    order = finish_order(pc, 0, 1)
    assert list(order[-2:]) == [0, 1]
    assert sorted(order) == list(range(9))


def _saving_pc(rx, ry, rv):
    pc = PartialColoring(PATH5, [rx, set(range(50, 60)), rv, set(range(60, 70)), ry])
    return pc


def test_pick_saving_pair_common():
    assert pick_saving_pair(_saving_pc({1, 2}, {1, 3}, {1, 2, 3, 4}), 0, 4, 2) == (1, 1)


def test_pick_saving_pair_outside():
    assert pick_saving_pair(_saving_pc({5}, {6}, {1, 2}), 0, 4, 2) == (5, 6)


def test_pick_saving_pair_contract():
    with pytest.raises(PreconditionViolated):
        pick_saving_pair(_saving_pc({1}, {2}, {1, 2, 3}), 0, 4, 2)


def test_sdr():
    rep = sdr_assign([0, 1, 2], {0: {1, 2}, 1: {2, 3}, 2: {3, 1}})
    assert sorted(rep.values()) == [1, 2, 3]
    bad = sdr_assign([0, 1, 2], {v: {1, 2} for v in range(3)})
    assert isinstance(bad, Unsatisfiable)
    assert sorted(bad.witness) == [0, 1, 2]


def test_sdr_ring_pattern(rng):
    for _ in range(200):
        us = {f"u{i}": {2 * i, 2 * i + 1} for i in range(5)}
        vs = {}
        for i in range(5):
            avoid = us[f"u{(i - 2) % 5}"]
            vs[f"v{i}"] = set(rng.sample(sorted(set(range(14)) - avoid), 6))
        lists = {**us, **vs}
        rep = sdr_assign(list(lists), lists)
        assert not isinstance(rep, Unsatisfiable)
        assert len(set(rep.values())) == 10
        assert all(rep[k] in lists[k] for k in lists)


def test_complete_by_search():
    pc = PartialColoring(PATH5, [{1, 2}, {1, 2, 3}, {1, 3}, {1}, {2}])
    assert complete_by_search(pc, range(5))
    assert verify_square_coloring(PATH5, pc.lists, pc.coloring()) is None
    pc = PartialColoring(PATH5, [{1}, {1}, {1}, {1}, {1}])
    assert not complete_by_search(pc, range(5))
    assert pc.uncolored() == list(range(5))


def test_verify():
    c6 = gen_named("cycle(6)")
    L = uniform_lists(6, 3)
    assert verify_square_coloring(c6, L, [1, 2, 3, 1, 2, 3]) is None
    clash = verify_square_coloring(c6, L, [1, 2, 1, 3, 2, 3])
    assert clash.kind == "clash" and clash.vertices == (0, 2)
    assert verify_square_coloring(c6, L, [4, 2, 3, 1, 2, 3]).kind == "list"


def test_list_and_coloring_formats():
    labels = ["a", "b", "c"]
    lists = [{1, 2}, {3}, {2, 5}]
    assert read_lists(format_lists(lists, labels), labels) == lists
    assert read_coloring(format_coloring([1, 3, 2], labels), labels) == [1, 3, 2]
    with pytest.raises(GraphError, match="line 2"):
        read_lists("a: 1\nzz: 2\n", labels)
    with pytest.raises(GraphError, match="line 1"):
        read_lists("a 1 2\n", labels)
