"""Simple undirected graphs, their squares, and the structural metrics the
solvers dispatch on (girth, shortest cycles, vertex classes, Petersen test).
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from math import inf

__all__ = [
    "Graph",
    "GraphError",
    "DuplicateEdge",
    "SelfLoop",
    "DegreeExceeded",
    "UndeclaredVertex",
    "NotAThreeVertex",
    "from_edge_list",
    "square",
    "girth",
    "shortest_cycle",
    "is_cycle_witness",
    "vertex_class",
    "is_petersen",
    "average_degree",
    "distances_from",
    "distance",
    "is_connected",
    "components",
    "induced_subgraph",
    "read_edge_list",
    "format_edge_list",
    "PETERSEN_EDGES",
]


class GraphError(ValueError):
    """Base class for malformed graph input."""


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DegreeExceeded(GraphError):
    pass


class UndeclaredVertex(GraphError):
    pass


class NotAThreeVertex(GraphError):
    pass


class Graph:
    """Immutable simple undirected graph on vertices ``0 .. n-1``.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``.  Instances cache
    derived data (the square, neighbour sets) since they never change.
    """

    __slots__ = ("n", "adj", "_nbr_sets", "_cache")

    def __init__(self, n: int, adj):
        self.n = n
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self._nbr_sets = None
        self._cache = {}

    @property
    def nbr_sets(self):
        if self._nbr_sets is None:
            self._nbr_sets = tuple(frozenset(a) for a in self.adj)
        return self._nbr_sets

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbr_sets[u]

    def is_subcubic(self) -> bool:
        return self.max_degree() <= 3

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


def from_edge_list(edges, subcubic: bool = False, n: int | None = None) -> Graph:
    """Build a :class:`Graph` from ``(u, v)`` pairs of nonnegative ints.

    Without ``n`` every id in ``0..max`` must be touched by some edge; pass
    ``n`` to declare isolated vertices.
    """
    edges = [(int(u), int(v)) for u, v in edges]
    top = max((max(e) for e in edges), default=-1)
    declared = n is not None
    if not declared:
        n = top + 1
    elif top >= n:
        raise UndeclaredVertex(f"vertex {top} outside declared range 0..{n - 1}")
    adj = [set() for _ in range(n)]
    for u, v in edges:
        if u < 0 or v < 0:
            raise GraphError(f"negative vertex id in edge ({u}, {v})")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        if v in adj[u]:
            raise DuplicateEdge(f"duplicate edge ({u}, {v})")
        adj[u].add(v)
        adj[v].add(u)
    if subcubic:
        for v, a in enumerate(adj):
            if len(a) > 3:
                raise DegreeExceeded(f"vertex {v} has degree {len(a)} > 3")
    if not declared:
        for v, a in enumerate(adj):
            if not a:
                raise UndeclaredVertex(f"vertex {v} has no incident edge and n was not declared")
    return Graph(n, adj)


def square(g: Graph) -> Graph:
    """Graph on the same vertices joining pairs at distance 1 or 2 in ``g``."""
    sq = g._cache.get("square")
    if sq is None:
        adj = []
        for v in range(g.n):
            s = set(g.adj[v])
            for w in g.adj[v]:
                s.update(g.adj[w])
            s.discard(v)
            adj.append(s)
        sq = Graph(g.n, adj)
        g._cache["square"] = sq
    return sq


def distances_from(g: Graph, sources, limit=None, alive=None):
    """BFS distances from a vertex or iterable of vertices.

    ``limit`` caps the search depth; ``alive`` (a container) restricts the
    search to the induced subgraph on those vertices.
    """
    if isinstance(sources, int):
        sources = (sources,)
    dist = {s: 0 for s in sources}
    queue = deque(dist)
    while queue:
        x = queue.popleft()
        d = dist[x]
        if limit is not None and d >= limit:
            continue
        for y in g.adj[x]:
            if y not in dist and (alive is None or y in alive):
                dist[y] = d + 1
                queue.append(y)
    return dist


def distance(g: Graph, u: int, v: int, limit=None):
    """Distance between ``u`` and ``v``; ``inf`` if farther than ``limit``."""
    if u == v:
        return 0
    dist = distances_from(g, u, limit=limit)
    return dist.get(v, inf)


def components(g: Graph):
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = sorted(distances_from(g, s))
        for v in comp:
            seen[v] = True
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(distances_from(g, 0)) == g.n


def induced_subgraph(g: Graph, vertices):
    """Return ``(h, order)``: the induced subgraph relabelled ``0..k-1`` and
    the original id of each new vertex."""
    order = sorted(vertices)
    index = {v: i for i, v in enumerate(order)}
    adj = [[index[w] for w in g.adj[v] if w in index] for v in order]
    return Graph(len(order), adj), order


def average_degree(g: Graph) -> Fraction:
    if g.n == 0:
        raise GraphError("average degree of the empty graph")
    return Fraction(2 * g.num_edges, g.n)


def _cycle_through_root(g: Graph, root: int, bound):
    """Shortest cycle found by BFS from ``root`` with length < ``bound``.

    Returns ``(length, x, y, parent, depth)`` for the closing edge ``xy`` or
    ``None``.  The closed walk is a simple cycle whenever its length is the
    global girth.
    """
    depth = {root: 0}
    parent = {root: None}
    queue = deque([root])
    best = None
    while queue:
        x = queue.popleft()
        dx = depth[x]
        # any cycle closed from here on has length >= 2*dx + 1
        if 2 * dx + 1 >= bound:
            break
        for y in g.adj[x]:
            if y == parent[x]:
                continue
            if y in depth:
                length = dx + depth[y] + 1
                if length < bound:
                    bound = length
                    best = (length, x, y)
            else:
                depth[y] = dx + 1
                parent[y] = x
                queue.append(y)
    if best is None:
        return None
    return best + (parent,)


def _walk_to_root(parent, x):
    path = [x]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path


def _normalize_cycle(cyc):
    k = len(cyc)
    i = cyc.index(min(cyc))
    fwd = cyc[i:] + cyc[:i]
    bwd = [fwd[0]] + fwd[1:][::-1]
    return tuple(min(fwd, bwd))


def shortest_cycle(g: Graph):
    """A shortest cycle of ``g`` as a vertex tuple, or ``None`` for forests.

    The witness comes from the smallest root whose BFS attains the girth; it
    is rotated to start at its smallest vertex, oriented towards the smaller
    of its two neighbours on the cycle.
    """
    if "shortest_cycle" in g._cache:
        return g._cache["shortest_cycle"]
    best_len = inf
    best = None
    for r in range(g.n):
        found = _cycle_through_root(g, r, best_len)
        if found is not None and found[0] < best_len:
            length, x, y, parent = found
            best_len = length
            px = _walk_to_root(parent, x)
            py = _walk_to_root(parent, y)
            cyc = px[::-1] + py[:-1]
            if length == 3:
                best = cyc
                break
            best = cyc
    result = None if best is None else _normalize_cycle(best)
    g._cache["shortest_cycle"] = result
    return result


def girth(g: Graph):
    """Length of a shortest cycle; ``math.inf`` for forests."""
    cyc = shortest_cycle(g)
    return inf if cyc is None else len(cyc)


def is_cycle_witness(g: Graph, cyc) -> bool:
    k = len(cyc)
    if k < 3 or len(set(cyc)) != k:
        return False
    return all(g.has_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k))


def vertex_class(g: Graph, v: int) -> int:
    """Number of degree-2 neighbours of the 3-vertex ``v``."""
    if g.degree(v) != 3:
        raise NotAThreeVertex(f"vertex {v} has degree {g.degree(v)}")
    return sum(1 for w in g.adj[v] if len(g.adj[w]) == 2)


# outer 5-cycle 0..4, spokes i -- i+5, inner pentagram
PETERSEN_EDGES = (
    [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
)
_PETERSEN = None


def _petersen():
    global _PETERSEN
    if _PETERSEN is None:
        _PETERSEN = from_edge_list(PETERSEN_EDGES)
    return _PETERSEN


def _isomorphic_backtrack(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if sorted(map(len, g.adj)) != sorted(map(len, h.adj)):
        return False
    # map g's vertices in BFS order so each new vertex has a mapped neighbour
    order = []
    seen = set()
    for s in range(g.n):
        if s not in seen:
            for v in distances_from(g, s):
                if v not in seen:
                    seen.add(v)
                    order.append(v)
    mapping = {}
    used = set()

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for w in range(h.n):
            if w in used or h.degree(w) != g.degree(v):
                continue
            ok = True
            for x, y in mapping.items():
                if g.has_edge(v, x) != h.has_edge(w, y):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return extend(0)


def is_petersen(g: Graph) -> bool:
    if g.n != 10 or g.num_edges != 15 or any(len(a) != 3 for a in g.adj):
        return False
    if girth(g) != 5:
        return False
    return _isomorphic_backtrack(g, _petersen())


def read_edge_list(text: str):
    """Parse the edge-list text format.

    First non-comment line is ``n m``; the next ``m`` lines are ``u v`` label
    pairs.  Further single-label lines declare isolated vertices.  Labels are
    remapped to ``0..n-1`` in order of first appearance.

    Returns ``(graph, labels)`` where ``labels[i]`` is the label of vertex
    ``i``.  Raises ``GraphError`` with the offending line number.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise GraphError("line 1: empty graph file")
    lineno, head = rows[0]
    try:
        n, m = (int(t) for t in head)
    except ValueError:
        raise GraphError(f"line {lineno}: expected 'n m' header, got {' '.join(head)!r}") from None
    if len(rows) - 1 < m:
        raise GraphError(f"line {rows[-1][0]}: expected {m} edges, found {len(rows) - 1}")
    index = {}
    labels = []

    def vid(label):
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    edges = []
    for lineno, toks in rows[1 : m + 1]:
        if len(toks) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {' '.join(toks)!r}")
        edges.append((vid(toks[0]), vid(toks[1])))
    for lineno, toks in rows[m + 1 :]:
        if len(toks) != 1:
            raise GraphError(f"line {lineno}: unexpected content {' '.join(toks)!r}")
        vid(toks[0])
    if len(labels) != n:
        raise GraphError(f"line {rows[0][0]}: header declares {n} vertices, found {len(labels)}")
    try:
        g = from_edge_list(edges, n=n)
    except GraphError as exc:
        raise GraphError(f"{exc} (labels remapped in order of appearance)") from None
    return g, labels


def format_edge_list(g: Graph, labels=None) -> str:
    lab = labels if labels is not None else [str(v) for v in range(g.n)]
    lines = [f"{g.n} {g.num_edges}"]
    lines += [f"{lab[u]} {lab[v]}" for u, v in g.edges()]
    isolated = [lab[v] for v in range(g.n) if not g.adj[v]]
    lines += isolated
    return "\n".join(lines) + "\n"
