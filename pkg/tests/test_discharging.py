import random
from collections import Counter
from fractions import Fraction

import pytest

from sqcolor import discharging as D
from sqcolor.coloring import PartialColoring, Unsatisfiable, sdr_assign, uniform_lists, verify_square_coloring
from sqcolor.density import mad_exact
from sqcolor.errors import GirthTooSmall, ListTooShort, MadTooLarge, PreconditionViolated
from sqcolor.graph import from_edge_list, girth, induced_subgraph, square
from sqcolor.testkit import (
    exact_list_color,
    gen_cubic_min_girth,
    gen_named,
    gen_random_cubic,
    random_lists,
    subdivide,
    subdivide_edges,
)
from sqcolor.trace import Trace

K4_1 = subdivide(gen_named("k4"), 1)
K4_2 = subdivide(gen_named("k4"), 2)
PET_1 = subdivide(gen_named("petersen"), 1)


# ------------------------------------------------------------------ finders


def test_find_7_examples():
    c = D.find_7_reducible(gen_named("cycle(9)"))
    assert (c.kind, c.vertices) == ("Conf1", (0, 1))
    c = D.find_7_reducible(K4_1)
    assert c.kind == "Conf2" and c.vertices[0] < 4
    assert all(K4_1.degree(u) == 2 for u in c.vertices[1:])
    assert D.find_7_reducible(gen_named("petersen")) is None


def test_find_7_pendant_first():
    g = from_edge_list([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    assert D.find_7_reducible(g).kind == "PendantVertex"


def test_find_6prime_examples():
    assert D.find_6prime_reducible(K4_2).kind == "Adjacent2Vertices"
    c = D.find_6prime_reducible(PET_1)
    assert c.kind == "Class3NearClass23"
    v1, v2, u1, u2, u3, u4 = c.vertices
    assert PET_1.has_edge(v1, u3) and PET_1.has_edge(v2, u3)
    assert D.find_6prime_reducible(gen_named("mcgee")) is None
    with pytest.raises(GirthTooSmall):
        D.find_6prime_reducible(gen_named("cycle(6)"))


# --------------------------------------------------------- decompose/rebuild


def replay_is_valid(g, dt):
    """Every removal is an instance of its kind in the graph left at that
    time, and the removals partition the vertex set."""
    W = D._Work(g)
    finder = D._FINDERS[dt.mode]
    seen = set()
    for inst in dt.removed:
        assert seen.isdisjoint(inst.vertices)
        assert (inst.kind, inst.vertices, inst.context) in set(finder(W, inst.anchor))
        assert len(inst.vertices) == D.ARITY[inst.kind]
        seen.update(inst.vertices)
        W.remove(inst.vertices)
    return seen == set(range(g.n))


def test_decompose_c9():
    g = gen_named("cycle(9)")
    dt = D.decompose(g, D.SEVEN)
    assert sorted(v for c in dt.removed for v in c.vertices) == list(range(9))
    assert replay_is_valid(g, dt)


def test_decompose_rejects_dense():
    with pytest.raises(MadTooLarge) as info:
        D.decompose(gen_named("petersen-minus-edge"), D.SEVEN)
    assert info.value.mad == Fraction(14, 5)


def test_decompose_subdivided_petersen():
    dt = D.decompose(PET_1, D.SIXPRIME)
    assert replay_is_valid(PET_1, dt)
    assert dt.configs_added_to_B <= 10 * PET_1.n


def test_decompose_trace_lines():
    dt = D.decompose(K4_1, D.SEVEN)
    lines = dt.lines()
    assert len(lines) == len(dt.removed)
    assert all(ln.startswith("REMOVE ") for ln in lines)


def test_rebuild_examples(rng):
    c9 = gen_named("cycle(9)")
    L = uniform_lists(9, 7)
    assert verify_square_coloring(c9, L, D.rebuild(c9, D.decompose(c9, D.SEVEN), L)) is None
    L = random_lists(K4_1.n, 7, 14, rng)
    assert verify_square_coloring(K4_1, L, D.rebuild(K4_1, D.decompose(K4_1, D.SEVEN), L)) is None
    L = random_lists(K4_2.n, 6, 12, rng)
    assert verify_square_coloring(K4_2, L, D.rebuild(K4_2, D.decompose(K4_2, D.SIXPRIME), L)) is None


def test_rebuild_list_size():
    dt = D.decompose(K4_2, D.SIXPRIME)
    with pytest.raises(ListTooShort):
        D.rebuild(K4_2, dt, uniform_lists(K4_2.n, 5))


def test_solve7_examples(rng):
    for g in (K4_1, gen_named("cycle(9)")):
        L = random_lists(g.n, 7, 14, rng)
        assert verify_square_coloring(g, L, D.solve7(g, L)) is None
    with pytest.raises(MadTooLarge):
        D.solve7(gen_named("petersen-minus-edge"), uniform_lists(10, 7))
    with pytest.raises(ListTooShort):
        D.solve7(K4_1, uniform_lists(K4_1.n, 6))


def test_solve6_examples(rng):
    for g in (K4_2, PET_1):
        L = random_lists(g.n, 6, 12, rng)
        assert verify_square_coloring(g, L, D.solve6(g, L)) is None
    with pytest.raises(GirthTooSmall):
        D.solve6(gen_named("cycle(6)"), uniform_lists(6, 6))
    with pytest.raises(GirthTooSmall):
        D.solve6(K4_1, uniform_lists(K4_1.n, 6))


def test_solve_trace_format():
    tr = Trace()
    D.solve7(K4_1, uniform_lists(K4_1.n, 7), tr)
    removes = [ln for ln in tr.lines if ln.startswith("REMOVE ")]
    colors = [ln for ln in tr.lines if ln.startswith("COLOR ")]
    assert removes and len(removes) == len(colors)
    assert tr.lines == removes + colors


def test_solve_is_deterministic(rng):
    L = random_lists(PET_1.n, 6, 10, rng)
    assert D.solve6(PET_1, L) == D.solve6(PET_1, L)


def random_sparse(rnd, n, mode):
    g = gen_random_cubic(n, rnd.randrange(1 << 30))
    counts = {}
    for e in g.edges():
        r = rnd.random()
        if mode == D.SEVEN:
            counts[e] = 0 if r < 0.45 else (1 if r < 0.9 else 2)
        else:
            counts[e] = 1 if r < 0.6 else 2
    return subdivide_edges(g, counts)


@pytest.mark.parametrize("mode", [D.SEVEN, D.SIXPRIME])
def test_random_sparse_graphs(mode):
    rnd = random.Random(11 if mode == D.SEVEN else 12)
    done = 0
    while done < 60:
        g = random_sparse(rnd, rnd.choice([4, 6, 8, 12, 16]), mode)
        bound = Fraction(14, 5) if mode == D.SEVEN else Fraction(18, 7)
        if mad_exact(g) >= bound or (mode == D.SIXPRIME and girth(g) < 7):
            continue
        k = 7 if mode == D.SEVEN else 6
        L = random_lists(g.n, k, rnd.choice([k, k + 1, k + 2]), rnd)
        col, dt = (D.solve7 if mode == D.SEVEN else D.solve6)(g, L, return_trace=True)
        assert verify_square_coloring(g, L, col) is None
        assert dt.configs_added_to_B <= 10 * g.n
        done += 1


# ------------------------------------------- configurations placed last


def _instances(g, kind):
    W = D._Work(g)
    return [D.ConfigInstance(k, v, x, c) for x in range(g.n) for k, v, c in D._six_at(W, x) if k == kind]


def host_with(kind, rnd):
    """Girth-5 cubic graph subdivided once except on a few edges chosen so
    that ``kind`` appears: one edge (class 2 pair), a 2-path (H), or a
    3-path (Y)."""
    while True:
        base = gen_cubic_min_girth(rnd.choice([14, 16, 20]), rnd.randrange(1 << 30), 5)
        a = rnd.randrange(base.n)
        b, c, _ = base.adj[a]
        keep = [(a, b)]
        if kind != "AdjacentClass2Pair":
            keep.append((a, c))
        if kind == "YConfiguration":
            keep.append((c, next(w for w in base.adj[c] if w != a)))
        g = subdivide_edges(base, {tuple(sorted(e)): 0 for e in keep})
        if girth(g) >= 7:
            return g


def rebuild_with_last(g, inst, L):
    """Colour ``g`` minus ``inst`` by the solver, then ``inst`` last."""
    rest = [v for v in range(g.n) if v not in inst.vertices]
    h, order = induced_subgraph(g, rest)
    dt = D.decompose(h, D.SIXPRIME)
    lifted = [
        D.ConfigInstance(c.kind, tuple(order[v] for v in c.vertices), order[c.anchor], tuple(order[v] for v in c.context))
        for c in dt.removed
    ]
    full = D.DecomposeTrace(D.SIXPRIME, g.n, [inst] + lifted)
    return D.rebuild(g, full, L), h, order, dt


def _tight_k4_lists(g, inst, L, h, order, dt):
    """Relist the Y-configuration's four vertices so that their remaining
    lists coincide once the rest is coloured: the colours of their
    coloured square-neighbours plus a shared triple."""
    hc = D.rebuild(h, dt, [L[v] for v in order])
    pc = PartialColoring(g, L)
    for i, v in enumerate(order):
        pc.color[v] = hc[i]
    for v in inst.vertices:
        used = sorted(pc.used_near(v))
        L[v] = set(used[:3]) | {90, 91, 92}
        pad = 93
        while len(L[v]) < 6:
            L[v].add(pad)
            pad += 1
    return pc


@pytest.mark.parametrize("kind", ["AdjacentClass2Pair", "HConfiguration", "YConfiguration"])
def test_configuration_rebuilt_last(kind):
    rnd = random.Random(hash(kind) % 1000)
    for _ in range(25):
        g = host_with(kind, rnd)
        inst = rnd.choice(_instances(g, kind))
        L = random_lists(g.n, 6, 7, rnd)
        col, *_ = rebuild_with_last(g, inst, L)
        assert verify_square_coloring(g, L, col) is None


def test_y_configuration_needs_recolouring():
    rnd = random.Random(5)
    forced = 0
    for _ in range(40):
        g = host_with("YConfiguration", rnd)
        inst = rnd.choice(_instances(g, "YConfiguration"))
        L = random_lists(g.n, 6, 7, rnd)
        _, h, order, dt = rebuild_with_last(g, inst, L)
        pc = _tight_k4_lists(g, inst, L, h, order, dt)
        rep = sdr_assign(inst.vertices, {v: set(L[v]) - pc.used_near(v) for v in inst.vertices})
        forced += isinstance(rep, Unsatisfiable)
        col, *_ = rebuild_with_last(g, inst, L)
        assert verify_square_coloring(g, L, col) is None
    assert forced >= 5


def test_h_configuration_reducible_on_random_lists():
    # v1=0 v2=1 v3=2 u1=3 u2=4 u3=5 u4=6 u5=7
    sq = square(from_edge_list([(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6), (1, 7)]))
    sizes = [4, 5, 4, 3, 3, 3, 3, 3]
    rnd = random.Random(9)
    for universe in (5, 6, 7):
        for _ in range(3000):
            lists = [set(rnd.sample(range(universe), k)) for k in sizes]
            assert exact_list_color(sq, lists) is not None


# ----------------------------------------------------------------- recolour


def l17_host(rnd, class2):
    base = gen_cubic_min_girth(rnd.choice([14, 16, 20]), rnd.randrange(1 << 30), 5)
    counts = {}
    if class2:
        # leave a matching-free single edge unsubdivided so one end is class 2
        counts[base.edges()[rnd.randrange(base.num_edges)]] = 0
    return subdivide_edges(base, counts)


def test_recolor_u3_generic(rng):
    for trial in range(20):
        g = l17_host(rng, trial % 2 == 1)
        inst = rng.choice(_instances(g, "Class3NearClass23"))
        L = random_lists(g.n, 6, 9, rng)
        pc = PartialColoring(g, L)
        pc.color = list(D.solve6(g, L))
        phi, psi = D.recolor_u3(inst, pc)
        u3 = inst.vertices[4]
        assert phi[u3] != psi[u3]
        for ext in (phi, psi):
            col = list(pc.color)
            for v, c in ext.items():
                col[v] = c
            assert verify_square_coloring(g, L, col) is None


def test_recolor_u3_two_left_at_u3(rng):
    g = subdivide(gen_named("petersen"), 1)
    inst = _instances(g, "Class3NearClass23")[0]
    L = uniform_lists(g.n, 6)
    pc = PartialColoring(g, L)
    pc.color = list(D.solve6(g, L))
    phi, psi = D.recolor_u3(inst, pc)
    u3 = inst.vertices[4]
    assert {phi[u3], psi[u3]} <= L[u3] and phi[u3] != psi[u3]


def test_recolor_u3_tampered(rng):
    g = PET_1
    inst = _instances(g, "Class3NearClass23")[0]
    v1, v2, u1, u2, u3, u4 = inst.vertices
    bad = D.ConfigInstance(inst.kind, (v1, v2, u1, u2, u3, v1), inst.anchor)
    pc = PartialColoring(g, uniform_lists(g.n, 6))
    pc.color = list(D.solve6(g, uniform_lists(g.n, 6)))
    with pytest.raises(PreconditionViolated):
        D.recolor_u3(bad, pc)
    with pytest.raises(PreconditionViolated):
        D.recolor_u3(D.ConfigInstance("Conf1", (u1, v1), u1), pc)


# -------------------------------------------------------------- discharging


def test_discharge_7_examples():
    ch, low = D.discharge_check_7(gen_named("petersen"))
    assert low == 3 and set(ch) == {3}
    ch, low = D.discharge_check_7(gen_named("cycle(9)"))
    assert low == 2 and set(ch) == {2}
    ch, low = D.discharge_check_7(K4_1)
    # 3-vertices pay 1/5 to each neighbour and nothing at distance 2
    assert set(ch) == {Fraction(12, 5)}


def test_discharge_6_examples():
    ch, low = D.discharge_check_6(gen_named("mcgee"))
    assert low == 3 and set(ch) == {3}
    ch, low = D.discharge_check_6(PET_1)
    assert all(ch[v] == Fraction(18, 7) for v in range(10, 25))
    # no class 1 vertex exists to pay the class 3 vertices
    assert all(ch[v] == Fraction(15, 7) for v in range(10))
    with pytest.raises(GirthTooSmall):
        D.discharge_check_6(gen_named("petersen"))


def test_discharge_charge_is_conserved(rng):
    for _ in range(20):
        g = random_sparse(rng, rng.choice([8, 12]), D.SIXPRIME)
        ch, _ = D.discharge_check_7(g)
        assert sum(ch) == 2 * g.num_edges
        if girth(g) >= 7:
            ch, _ = D.discharge_check_6(g)
            assert sum(ch) == 2 * g.num_edges


def test_discharge_7_two_vertex_on_triangle():
    """A 2-vertex on a triangle has only two vertices at distance 2, so the
    rule leaves it at 13/5 although no configuration is present."""
    h = gen_cubic_min_girth(20, 3, 5)
    x, y = h.edges()[0]
    n = h.n
    edges = [e for e in h.edges() if e != (x, y)] + [(x, n + 1), (y, n + 2), (n + 1, n + 2), (n, n + 1), (n, n + 2)]
    g = from_edge_list(edges)
    assert D.find_7_reducible(g) is None
    ch, low = D.discharge_check_7(g)
    assert low == Fraction(13, 5) == ch[n]
