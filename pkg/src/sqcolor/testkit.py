"""Exact oracles and graph generators used to check the constructive solvers.

The oracles are exponential and meant for small instances: a forward
checking list colourer, an exact chromatic number, and a bounded search for
uncolourable list assignments.
"""

from __future__ import annotations

import random
import re
from collections import namedtuple
from itertools import combinations

from .graph import (
    PETERSEN_EDGES,
    Graph,
    GraphError,
    from_edge_list,
)

__all__ = [
    "exact_list_color",
    "chromatic_number_exact",
    "is_k_choosable_bounded",
    "ChoosabilityResult",
    "gen_named",
    "NAMED",
    "lcf_graph",
    "subdivide",
    "subdivide_edges",
    "gen_random_cubic",
    "gen_cubic_min_girth",
    "OddOrder",
    "random_lists",
    "core_stress_lists",
]


class OddOrder(GraphError):
    """A 3-regular graph needs an even number of vertices, at least 4."""


# ------------------------------------------------------------------ oracles


def exact_list_color(g2: Graph, lists):
    """Proper colouring of ``g2`` with ``coloring[v] in lists[v]``, or ``None``.

    Backtracking that always branches on the uncoloured vertex with the
    fewest remaining colours (ties: larger degree) and prunes as soon as a
    neighbour's domain empties.
    """
    n = g2.n
    dom = [set(lists[v]) for v in range(n)]
    if any(not d for d in dom):
        return None
    color = [None] * n
    adj = g2.adj

    def pick():
        best, key = None, None
        for v in range(n):
            if color[v] is None:
                k = (len(dom[v]), -len(adj[v]))
                if key is None or k < key:
                    best, key = v, k
        return best

    def rec():
        v = pick()
        if v is None:
            return True
        for c in sorted(dom[v]):
            removed = []
            ok = True
            for w in adj[v]:
                if color[w] is None and c in dom[w]:
                    dom[w].discard(c)
                    removed.append(w)
                    if not dom[w]:
                        ok = False
                        break
            if ok:
                color[v] = c
                if rec():
                    return True
                color[v] = None
            for w in removed:
                dom[w].add(c)
        return False

    return list(color) if rec() else None


def _max_clique_size(g: Graph) -> int:
    best = 0

    def grow(size, cand):
        nonlocal best
        if size > best:
            best = size
        if size + len(cand) <= best:
            return
        for v in sorted(cand):
            grow(size + 1, cand & g.nbr_sets[v])
            cand = cand - {v}
            if size + len(cand) <= best:
                return

    grow(0, set(range(g.n)))
    return best


def chromatic_number_exact(g: Graph) -> int:
    """Exact chromatic number; searches upward from the clique number."""
    if g.n == 0:
        return 0
    k = max(1, _max_clique_size(g))
    while True:
        if exact_list_color(g, [range(k)] * g.n) is not None:
            return k
        k += 1


ChoosabilityResult = namedtuple("ChoosabilityResult", "choosable witness assignments_checked universe")
ChoosabilityResult.__bool__ = lambda self: bool(self.choosable)


def is_k_choosable_bounded(g: Graph, k: int, universe_size: int) -> ChoosabilityResult:
    """Search every assignment of ``k``-subsets of ``range(universe_size)``
    for one that ``g`` cannot be coloured from.

    This is a falsifier, not a choosability decision: ``choosable=True``
    only says no counterexample exists inside the universe.  Assignments
    are enumerated up to renaming colours, by requiring new colours to
    appear in increasing order of first use.
    """
    n = g.n
    lists = [None] * n
    count = 0

    def options(fresh):
        # subsets using old colours < fresh and the next j new colours
        for j in range(0, k + 1):
            if fresh + j > universe_size or k - j > fresh:
                continue
            new = tuple(range(fresh, fresh + j))
            for old in combinations(range(fresh), k - j):
                yield set(old) | set(new), fresh + j

    def rec(v, fresh):
        nonlocal count
        if v == n:
            count += 1
            return exact_list_color(g, lists) is not None
        for s, nf in options(fresh):
            lists[v] = s
            if not rec(v + 1, nf):
                return False
        return True

    ok = rec(0, 0)
    witness = None if ok else [set(s) for s in lists]
    return ChoosabilityResult(ok, witness, count, universe_size)


# ----------------------------------------------------------------- fixtures


def lcf_graph(n, shifts, repeats):
    """Hamiltonian cubic graph from LCF notation ``[shifts]^repeats``."""
    edges = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    seq = list(shifts) * repeats
    for i, s in enumerate(seq):
        edges.add(tuple(sorted((i, (i + s) % n))))
    return from_edge_list(sorted(edges))


def _cycle(n):
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return from_edge_list([(i, (i + 1) % n) for i in range(n)])


# an 8-vertex cubic graph with one triangle and diameter 2 (found by search)
FIGURE1B_EDGES = [
    (0, 2), (0, 3), (0, 4), (1, 3), (1, 5), (1, 7),
    (2, 5), (2, 6), (3, 6), (4, 6), (4, 7), (5, 7),
]

PRISM_EDGES = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]


def _named_table():
    return {
        "petersen": lambda: from_edge_list(PETERSEN_EDGES),
        "petersen-minus-edge": lambda: from_edge_list([e for e in PETERSEN_EDGES if e != (0, 1)]),
        "figure1a": lambda: from_edge_list([(i, (i + 1) % 8) for i in range(8)] + [(i, i + 4) for i in range(4)]),
        "figure1b": lambda: from_edge_list(FIGURE1B_EDGES),
        "prism": lambda: from_edge_list(PRISM_EDGES),
        # subdivide the matching edge 2-5 with new vertex 6
        "prism-subdivided": lambda: from_edge_list([e for e in PRISM_EDGES if e != (2, 5)] + [(2, 6), (6, 5)]),
        "heawood": lambda: lcf_graph(14, [5, -5], 7),
        "mcgee": lambda: lcf_graph(24, [12, 7, -7], 8),
        "k4": lambda: from_edge_list(list(combinations(range(4), 2))),
    }


NAMED = tuple(_named_table()) + ("cycle(n)",)


def gen_named(name: str) -> Graph:
    """Canonical fixture by name, e.g. ``"mcgee"`` or ``"cycle(7)"``."""
    key = name.strip().lstrip("@").lower()
    m = re.fullmatch(r"cycle\(?(\d+)\)?", key)
    if m:
        return _cycle(int(m.group(1)))
    table = _named_table()
    if key not in table:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(NAMED)}")
    return table[key]()


# --------------------------------------------------------------- generators


def subdivide(g: Graph, k: int) -> Graph:
    """Replace every edge by a path with ``k`` new internal vertices."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return Graph(g.n, [list(a) for a in g.adj])
    adj = [[] for _ in range(g.n + k * g.num_edges)]
    nxt = g.n
    for u, v in g.edges():
        path = [u] + list(range(nxt, nxt + k)) + [v]
        nxt += k
        for a, b in zip(path, path[1:]):
            adj[a].append(b)
            adj[b].append(a)
    return Graph(len(adj), adj)


def subdivide_edges(g: Graph, counts, default: int = 1) -> Graph:
    """Subdivide each edge ``(u, v)`` (``u < v``) ``counts.get((u, v), default)``
    times; new vertices are numbered from ``g.n`` in edge order."""
    adj = [list(a) for a in g.adj]
    for a in adj:
        a.clear()
    for u, v in g.edges():
        k = counts.get((u, v), default)
        path = [u] + list(range(len(adj), len(adj) + k)) + [v]
        adj.extend([] for _ in range(k))
        for a, b in zip(path, path[1:]):
            adj[a].append(b)
            adj[b].append(a)
    return Graph(len(adj), adj)


def gen_random_cubic(n: int, seed: int) -> Graph:
    """Random simple 3-regular graph from the pairing model.

    Half-edges are matched uniformly at random; matchings with loops or
    repeated edges are rejected and redrawn.  Deterministic in ``seed``.
    """
    if n % 2 or n < 4:
        raise OddOrder(f"no 3-regular graph on {n} vertices")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(3)]
    while True:
        rng.shuffle(points)
        seen = set()
        ok = True
        for i in range(0, len(points), 2):
            a, b = points[i], points[i + 1]
            e = (a, b) if a < b else (b, a)
            if a == b or e in seen:
                ok = False
                break
            seen.add(e)
        if ok:
            return from_edge_list(sorted(seen))


def _short_cycle_edge(adj, n, g):
    """An edge on a cycle shorter than ``g``, or ``None``."""
    for r in range(n):
        depth = {r: 0}
        parent = {r: None}
        frontier = [r]
        while frontier and 2 * depth[frontier[0]] + 1 < g:
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y == parent[x]:
                        continue
                    if y in depth:
                        if depth[x] + depth[y] + 1 < g:
                            return (x, y)
                    else:
                        depth[y] = depth[x] + 1
                        parent[y] = x
                        nxt.append(y)
            frontier = nxt
    return None


def _path_shorter(adj, a, b, limit):
    """True iff ``dist(a, b) < limit``."""
    if a == b:
        return True
    seen = {a}
    frontier = [a]
    d = 0
    while frontier and d + 1 < limit:
        d += 1
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in seen:
                    if y == b:
                        return True
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return False


def gen_cubic_min_girth(n: int, seed: int, girth: int, max_steps=None) -> Graph:
    """Random cubic graph of girth at least ``girth`` by edge switching.

    Starts from :func:`gen_random_cubic` and repeatedly replaces an edge
    ``ab`` on a short cycle and a random edge ``cd`` by ``ac`` and ``bd``,
    accepting only switches that close no cycle shorter than ``girth``.
    """
    rng = random.Random(seed)
    budget = max_steps if max_steps is not None else 200 * n
    for _ in range(50):
        adj = [set(a) for a in gen_random_cubic(n, rng.randrange(1 << 30)).adj]
        if _switch_to_girth(adj, n, girth, rng, budget):
            return Graph(n, [sorted(a) for a in adj])
    raise RuntimeError(f"could not reach girth {girth} on {n} vertices")


def _switch_to_girth(adj, n, girth, rng, budget):
    for _ in range(budget):
        e = _short_cycle_edge(adj, n, girth)
        if e is None:
            return True
        a, b = e
        c = rng.randrange(n)
        d = rng.choice(sorted(adj[c]))
        if len({a, b, c, d}) < 4 or c in adj[a] or d in adj[b]:
            continue
        for x, y in ((a, b), (c, d)):
            adj[x].discard(y)
            adj[y].discard(x)
        ok = not _path_shorter(adj, a, c, girth - 1)
        if ok:
            adj[a].add(c)
            adj[c].add(a)
            ok = not _path_shorter(adj, b, d, girth - 1)
            if not ok:
                adj[a].discard(c)
                adj[c].discard(a)
        if ok:
            adj[b].add(d)
            adj[d].add(b)
        else:
            for x, y in ((a, b), (c, d)):
                adj[x].add(y)
                adj[y].add(x)
    return _short_cycle_edge(adj, n, girth) is None


def random_lists(n, k, universe, rng):
    """``n`` independent uniformly random ``k``-subsets of ``1..universe``."""
    pool = range(1, universe + 1)
    return [set(rng.sample(pool, k)) for _ in range(n)]


def core_stress_lists(g: Graph, core, universe: int, rng, k: int = 8, offset: int = 1000):
    """List assignment that leaves ``core`` with minimum-size lists.

    Vertices outside ``core`` get ``k`` colours from ``offset`` upwards, so
    they never touch core colours.  A core vertex ``v`` gets a random subset
    of ``1..universe`` of size ``k - |N2(v) \\ core|``, exactly what would
    survive if every coloured square-neighbour removed a distinct colour.
    """
    from .graph import square

    sq = square(g)
    core = set(core)
    out = []
    for v in range(g.n):
        if v in core:
            size = k - sum(1 for w in sq.adj[v] if w not in core)
            out.append(set(rng.sample(range(1, universe + 1), max(size, 0))))
        else:
            out.append(set(rng.sample(range(offset, offset + 3 * k), k)))
    return out
