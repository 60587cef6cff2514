"""Partial list colourings of a graph's square and the greedy machinery the
constructive proofs are built from: excess, distance-class greedy, the
two-vertex finisher, colour saving, and distinct representatives.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import Disconnected, PreconditionViolated, StuckAt
from .graph import Graph, distances_from, is_connected, square

__all__ = [
    "PartialColoring",
    "Unsatisfiable",
    "Violation",
    "excess",
    "greedy_extend",
    "color_all_but",
    "color_all_but_edge",
    "finish_order",
    "finish_two_excess",
    "pick_saving_pair",
    "complete_by_search",
    "sdr_assign",
    "verify_square_coloring",
    "read_lists",
    "format_lists",
    "read_coloring",
    "format_coloring",
    "uniform_lists",
]


class PartialColoring:
    """A proper partial colouring of ``square(g)`` from per-vertex lists.

    ``lists[v]`` is the working list of ``v``.  Solvers may shrink the
    working list of an uncoloured vertex (:meth:`trim`), which is how "discard
    colours until equality holds" is carried out; every colour ever used
    still comes from the caller's original list.
    """

    def __init__(self, g: Graph, lists, trace=None, check=False):
        self.g = g
        self.sq = square(g)
        self.nbrs = self.sq.adj
        self.lists = [set(lists[v]) for v in range(g.n)]
        self.base = tuple(frozenset(s) for s in self.lists)
        self.color = [None] * g.n
        self.trace = trace
        self.check = check
        self.context = ("-", "-")

    def copy(self):
        new = PartialColoring.__new__(PartialColoring)
        new.g, new.sq, new.nbrs = self.g, self.sq, self.nbrs
        new.lists = [set(s) for s in self.lists]
        new.base = self.base
        new.color = list(self.color)
        new.trace, new.check, new.context = self.trace, self.check, self.context
        return new

    def used_near(self, v):
        col = self.color
        return {col[w] for w in self.nbrs[v] if col[w] is not None}

    def remaining(self, v):
        """Working list of ``v`` minus colours on its square-neighbours."""
        return self.lists[v] - self.used_near(v)

    def uncolored_near(self, v):
        col = self.color
        return sum(1 for w in self.nbrs[v] if col[w] is None)

    def is_colored(self, v):
        return self.color[v] is not None

    def uncolored(self):
        return [v for v in range(self.g.n) if self.color[v] is None]

    def adjacent(self, u, v):
        return v in self.sq.nbr_sets[u]

    def assign(self, v, c, reason="choice"):
        if self.color[v] is not None:
            raise PreconditionViolated("uncolored", f"vertex {v} is already coloured")
        if c not in self.lists[v] or c in self.used_near(v):
            raise PreconditionViolated("available", f"colour {c} is not available at vertex {v}")
        self.color[v] = c
        if self.trace is not None:
            self.trace.decision(self.context[0], self.context[1], v, c, reason)
        if self.check:
            self.assert_consistent()

    def uncolor(self, v, reset=False):
        """Uncolour ``v``; with ``reset`` also restore its original list."""
        self.color[v] = None
        if reset:
            self.lists[v] = set(self.base[v])

    def restrict(self, v, colors):
        """Replace the working list of uncoloured ``v`` by ``colors``."""
        self.lists[v] = set(colors)

    def trim(self, v, k):
        """Keep only the ``k`` smallest remaining colours of ``v``."""
        rem = sorted(self.remaining(v))
        if len(rem) < k:
            raise StuckAt(v, f"vertex {v} has {len(rem)} colours left, expected at least {k}")
        self.lists[v] = set(rem[:k])

    def assert_consistent(self):
        for v in range(self.g.n):
            c = self.color[v]
            if c is None:
                continue
            if c not in self.lists[v]:
                raise AssertionError(f"vertex {v} coloured {c} outside its list")
            for w in self.nbrs[v]:
                if self.color[w] == c:
                    raise AssertionError(f"vertices {v} and {w} share colour {c}")

    def coloring(self):
        return list(self.color)


@dataclass(frozen=True)
class Unsatisfiable:
    """No system of distinct representatives; ``witness`` violates Hall."""

    witness: tuple


@dataclass(frozen=True)
class Violation:
    kind: str  # "list", "clash" or "uncolored"
    vertices: tuple
    message: str


def excess(pc: PartialColoring, v: int) -> int:
    """``1 + |remaining(v)| - #uncoloured square-neighbours`` of uncoloured ``v``."""
    if pc.color[v] is not None:
        raise PreconditionViolated("uncolored", f"excess of coloured vertex {v}")
    return 1 + len(pc.remaining(v)) - pc.uncolored_near(v)


def greedy_extend(pc: PartialColoring, order, reason="greedy") -> PartialColoring:
    """Colour ``order`` in sequence, each with its smallest remaining colour.

    Atomic: on failure every colour assigned by this call is withdrawn and
    :class:`StuckAt` names the first vertex with nothing left.
    """
    done = []
    for v in order:
        if pc.color[v] is not None:
            raise PreconditionViolated("order", f"vertex {v} in the order is already coloured")
        rem = pc.remaining(v)
        if not rem:
            for w in done:
                pc.color[w] = None
            raise StuckAt(v)
        pc.assign(v, min(rem), reason)
        done.append(v)
    return pc


def color_all_but(pc: PartialColoring, keep, reason="distance class") -> PartialColoring:
    """Greedily colour every uncoloured vertex outside ``keep``, farthest
    distance class first (distance in ``g`` to the set ``keep``)."""
    keep = set(keep)
    dist = distances_from(pc.g, keep)
    todo = [v for v in dist if v not in keep and pc.color[v] is None]
    todo.sort(key=lambda v: (-dist[v], v))
    return greedy_extend(pc, todo, reason)


def color_all_but_edge(g: Graph, lists, uv, trace=None) -> PartialColoring:
    """Colour everything except the ends of edge ``uv`` (lists of size 8)."""
    u, v = uv
    if not g.has_edge(u, v):
        raise PreconditionViolated("edge", f"({u}, {v}) is not an edge")
    if not is_connected(g):
        raise Disconnected()
    pc = PartialColoring(g, lists, trace)
    return color_all_but(pc, (u, v))


def finish_order(pc: PartialColoring, u, v):
    """An order of the uncoloured vertices ending ``u, v`` in which every
    other vertex is followed by at least two of its square-neighbours, or
    ``None`` if none exists.  Built by peeling backwards from ``{u, v}``."""
    col = pc.color
    placed = {u, v}
    count = {}
    queue = deque()
    for x in (u, v):
        for w in pc.nbrs[x]:
            if col[w] is None and w not in placed:
                count[w] = count.get(w, 0) + 1
    for w in sorted(count):
        if count[w] >= 2:
            queue.append(w)
    seq = []
    while queue:
        w = queue.popleft()
        if w in placed:
            continue
        placed.add(w)
        seq.append(w)
        for x in pc.nbrs[w]:
            if col[x] is None and x not in placed:
                count[x] = count.get(x, 0) + 1
                if count[x] == 2:
                    queue.append(x)
    if any(col[x] is None and x not in placed for x in range(pc.g.n)):
        return None
    return seq[::-1] + [u, v]


def _check_finish_order(pc, u, v, order):
    uncolored = set(pc.uncolored())
    if len(order) != len(uncolored) or set(order) != uncolored:
        raise PreconditionViolated("order covers uncolored", "order must list each uncoloured vertex once")
    if order[-2:] != [u, v]:
        raise PreconditionViolated("order ends u, v", "order must end with u then v")
    pos = {w: i for i, w in enumerate(order)}
    for i, w in enumerate(order[:-2]):
        after = sum(1 for x in pc.nbrs[w] if x in pos and pos[x] > i)
        if after < 2:
            raise PreconditionViolated(
                "order succession", f"vertex {w} is followed by {after} < 2 square-neighbours"
            )


def finish_two_excess(pc: PartialColoring, u, v, order=None, reason="finish") -> PartialColoring:
    """Complete ``pc`` when ``excess(u) >= 1``, ``excess(v) >= 2`` and ``u, v``
    are square-adjacent.

    Greedy along ``order`` (computed if omitted); ``u`` and ``v`` go last.
    A stuck vertex here contradicts the counting argument and is raised as
    :class:`~sqcolor.errors.InternalCaseFailure`.
    """
    from .errors import InternalCaseFailure

    if pc.color[u] is not None or pc.color[v] is not None:
        raise PreconditionViolated("u, v uncolored")
    if not pc.adjacent(u, v):
        raise PreconditionViolated("u ~ v in square", f"{u} and {v} are not adjacent in the square")
    if excess(pc, u) < 1:
        raise PreconditionViolated("excess(u) >= 1", f"excess({u}) = {excess(pc, u)}")
    if excess(pc, v) < 2:
        raise PreconditionViolated("excess(v) >= 2", f"excess({v}) = {excess(pc, v)}")
    if order is None:
        order = finish_order(pc, u, v)
        if order is None:
            raise PreconditionViolated("order succession", "no valid finishing order exists")
    else:
        order = list(order)
        # callers may name only part of the order; complete it with peeling
        if set(order) != set(pc.uncolored()):
            raise PreconditionViolated("order covers uncolored", "order must list each uncoloured vertex once")
    _check_finish_order(pc, u, v, order)
    try:
        greedy_extend(pc, order, reason)
    except StuckAt as exc:
        raise InternalCaseFailure(f"finishing greedy stuck at {exc.vertex}", pc.trace) from exc
    return pc


def pick_saving_pair(pc: PartialColoring, x, y, v):
    """Colours ``(c1, c2)`` for ``x`` and ``y`` costing ``v`` at most one colour.

    Prefers a common colour; otherwise uses a colour of ``x`` (then of
    ``y``) missing from ``remaining(v)`` and the smallest colour on the other.
    One of the two always exists when ``|R(x)| + |R(y)| > |R(v)|``; if
    neither does, ``PreconditionViolated`` is raised.  Nothing is assigned.
    """
    col = pc.color
    if col[x] is not None or col[y] is not None:
        raise PreconditionViolated("x, y uncolored")
    if not (pc.adjacent(x, v) and pc.adjacent(y, v)):
        raise PreconditionViolated("x, y ~ v", f"{x} and {y} must both be square-adjacent to {v}")
    if x == y or pc.adjacent(x, y):
        raise PreconditionViolated("x !~ y", f"{x} and {y} are adjacent in the square")
    rx, ry, rv = pc.remaining(x), pc.remaining(y), pc.remaining(v)
    if not rx or not ry:
        raise PreconditionViolated("nonempty lists", f"no colour left at {x if not rx else y}")
    common = rx & ry
    if common:
        c = min(common)
        return c, c
    out_x = rx - rv
    if out_x:
        return min(out_x), min(ry)
    out_y = ry - rv
    if out_y:
        return min(rx), min(out_y)
    raise PreconditionViolated(
        "|R(x)|+|R(y)| > |R(v)|", f"|R({x})|+|R({y})| = {len(rx) + len(ry)} <= |R({v})| = {len(rv)}"
    )


def complete_by_search(pc: PartialColoring, verts) -> bool:
    """Colour the uncoloured vertices of ``verts`` by backtracking.

    Meant for a handful of vertices.  Returns False, leaving ``pc``
    unchanged, if no completion exists.
    """
    verts = [v for v in verts if pc.color[v] is None]

    def rec(i):
        if i == len(verts):
            return True
        v = verts[i]
        for c in sorted(pc.remaining(v)):
            pc.color[v] = c
            if rec(i + 1):
                return True
            pc.color[v] = None
        return False

    if not rec(0):
        return False
    for v in verts:
        c = pc.color[v]
        pc.color[v] = None
        pc.assign(v, c, "local search")
    return True


def sdr_assign(vertices, lists):
    """Distinct representatives by augmenting paths.

    Returns ``{vertex: colour}`` or :class:`Unsatisfiable` whose witness is
    a vertex set whose lists have too small a union.
    """
    vertices = list(vertices)
    owner = {}  # colour -> vertex
    match = {}

    def augment(v, seen):
        for c in sorted(lists[v]):
            if c in seen:
                continue
            seen.add(c)
            if c not in owner or augment(owner[c], seen):
                owner[c] = v
                match[v] = c
                return True
        return False

    for v in vertices:
        seen = set()
        if not augment(v, seen):
            # alternating-reachable vertices from v form a Hall violator
            witness = {v}
            for c in seen:
                if c in owner:
                    witness.add(owner[c])
            return Unsatisfiable(tuple(sorted(witness, key=vertices.index)))
    return {v: match[v] for v in vertices}


def verify_square_coloring(g: Graph, lists, coloring):
    """``None`` if ``coloring`` is a proper list colouring of ``square(g)``,
    otherwise the first :class:`Violation` found."""
    sq = square(g)
    for v in range(g.n):
        c = coloring[v]
        if c is None:
            return Violation("uncolored", (v,), f"vertex {v} is uncoloured")
        if c not in lists[v]:
            return Violation("list", (v,), f"vertex {v} has colour {c} outside its list")
    for v in range(g.n):
        for w in sq.adj[v]:
            if v < w and coloring[v] == coloring[w]:
                return Violation("clash", (v, w), f"vertices {v} and {w} are within distance 2 and share colour {coloring[v]}")
    return None


def uniform_lists(n, k):
    return [set(range(1, k + 1)) for _ in range(n)]


def read_lists(text, labels):
    """Parse ``label: c1 c2 ...`` lines into per-vertex colour sets."""
    from .graph import GraphError

    index = {str(lab): i for i, lab in enumerate(labels)}
    lists = [None] * len(labels)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise GraphError(f"line {lineno}: expected 'label: colours'")
        lab, rest = line.split(":", 1)
        lab = lab.strip()
        if lab not in index:
            raise GraphError(f"line {lineno}: unknown vertex label {lab!r}")
        try:
            colors = {int(t) for t in rest.split()}
        except ValueError:
            raise GraphError(f"line {lineno}: colours must be nonnegative integers") from None
        if any(c < 0 for c in colors):
            raise GraphError(f"line {lineno}: colours must be nonnegative integers")
        lists[index[lab]] = colors
    missing = [labels[i] for i, s in enumerate(lists) if s is None]
    if missing:
        raise GraphError(f"line {lineno if text else 0}: no list for vertex {missing[0]}")
    return lists


def format_lists(lists, labels=None):
    lab = labels if labels is not None else list(range(len(lists)))
    return "".join(f"{lab[v]}: {' '.join(map(str, sorted(s)))}\n" for v, s in enumerate(lists))


def format_coloring(coloring, labels=None):
    lab = labels if labels is not None else list(range(len(coloring)))
    return "".join(f"{lab[v]} = {c}\n" for v, c in enumerate(coloring))


def read_coloring(text, labels):
    index = {str(lab): i for i, lab in enumerate(labels)}
    out = [None] * len(labels)
    for raw in text.splitlines():
        line = raw.strip()
        if line:
            lab, c = line.split("=")
            out[index[lab.strip()]] = int(c)
    return out
