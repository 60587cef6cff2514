"""List-colouring squares of sparse subcubic graphs by reducible
configurations, and exact discharging audits.

``solve7`` handles ``mad < 14/5`` with lists of size 7 and ``solve6`` handles
girth at least 7 with ``mad < 18/7`` and lists of size 6.  Both peel the graph
one reducible configuration at a time (queue ``B`` of candidates, stack ``A``
of removals) and then colour the configurations back in reverse order.

Every configuration used here has each vertex adjacent to at most one vertex
outside it, so deleting it never removes a distance-2 pair between the
remaining vertices; a single partial colouring over the full square is
therefore a colouring of every intermediate square.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product

from .coloring import (
    PartialColoring,
    Unsatisfiable,
    complete_by_search,
    greedy_extend,
    sdr_assign,
    verify_square_coloring,
)
from .density import mad_below, mad_exact
from .errors import (
    GirthTooSmall,
    InternalCaseFailure,
    ListTooShort,
    MadTooLarge,
    NoConfigurationFound,
    PreconditionViolated,
    StuckAt,
)
from .graph import Graph, girth
from .trace import Trace

__all__ = [
    "SEVEN",
    "SIXPRIME",
    "SEVEN_KINDS",
    "SIXPRIME_KINDS",
    "ARITY",
    "ConfigInstance",
    "DecomposeTrace",
    "find_7_reducible",
    "find_6prime_reducible",
    "decompose",
    "rebuild",
    "solve7",
    "solve6",
    "recolor_u3",
    "discharge_check_7",
    "discharge_check_6",
]

SEVEN = "Seven"
SIXPRIME = "SixPrime"

SEVEN_KINDS = ("PendantVertex", "Conf1", "Conf2", "Conf3", "Conf4")
SIXPRIME_KINDS = (
    "PendantVertex",
    "Adjacent2Vertices",
    "AdjacentClass2Pair",
    "Class3NearClass23",
    "HConfiguration",
    "YConfiguration",
)
ARITY = {
    "PendantVertex": 1,
    "Conf1": 2,
    "Conf2": 3,
    "Conf3": 4,
    "Conf4": 7,
    "Adjacent2Vertices": 2,
    "AdjacentClass2Pair": 6,
    "Class3NearClass23": 6,
    "HConfiguration": 8,
    "YConfiguration": 4,
}

# rescan radius around the neighbours of a removed configuration
_RESCAN = 3


@dataclass(frozen=True)
class ConfigInstance:
    """One reducible configuration found in a (working) graph.

    ``vertices`` follows the kind's template and is exactly the set that is
    removed:

    =====================  ==========================================
    PendantVertex          ``(x,)``, degree at most 1
    Conf1                  ``(u1, u2)``
    Conf2                  ``(v, u1, u2)``
    Conf3                  ``(v1, v2, u1, u2)``
    Conf4                  ``(v1, v2, v3, u1, u2, u3, w)``
    Adjacent2Vertices      ``(u1, u2)``
    AdjacentClass2Pair     ``(v1, v2, u1, u2, u3, u4)``
    Class3NearClass23      ``(v1, v2, u1, u2, u3, u4)``
    HConfiguration         ``(v1, v2, v3, u1, u2, u3, u4, u5)``
    YConfiguration         ``(v1, u1, u2, u3)``; ``context`` holds
                           ``(v2, v3, v4, u4, u5, u6)``
    =====================  ==========================================
    """

    kind: str
    vertices: tuple
    anchor: int
    context: tuple = ()
    stamp: int = 0

    @property
    def key(self):
        return (self.kind, self.vertices, self.context)


@dataclass
class DecomposeTrace:
    """Removal stack ``A`` and the work counters of one decomposition."""

    mode: str
    n: int
    removed: list = field(default_factory=list)
    configs_added_to_B: int = 0
    configs_discarded_as_destroyed: int = 0

    def lines(self, labels=None):
        lab = (lambda v: str(labels[v])) if labels is not None else str
        return [f"REMOVE {c.kind} [{' '.join(lab(v) for v in c.vertices)}]" for c in self.removed]


# ------------------------------------------------------------ working graph


class _Work:
    """Mutable copy of a graph supporting vertex deletion."""

    def __init__(self, g: Graph):
        self.adj = [set(a) for a in g.adj]
        self.alive = [True] * g.n
        self.count = g.n

    def deg(self, x):
        return len(self.adj[x])

    def twos(self, x):
        return sorted(y for y in self.adj[x] if len(self.adj[y]) == 2)

    def cls(self, x):
        """Class of a 3-vertex (number of 2-neighbours); ``None`` otherwise."""
        if len(self.adj[x]) != 3:
            return None
        return sum(1 for y in self.adj[x] if len(self.adj[y]) == 2)

    def remove(self, verts):
        for v in verts:
            for y in self.adj[v]:
                self.adj[y].discard(v)
        for v in verts:
            self.adj[v] = set()
            self.alive[v] = False
        self.count -= len(verts)

    def ball(self, sources, radius):
        seen = set(sources)
        frontier = list(seen)
        for _ in range(radius):
            nxt = []
            for x in frontier:
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def remainder(self):
        alive = [v for v in range(len(self.alive)) if self.alive[v]]
        index = {v: i for i, v in enumerate(alive)}
        return Graph(len(alive), [[index[w] for w in self.adj[v]] for v in alive])


# ------------------------------------------------------------------ finders


def _seven_at(W: _Work, x):
    d = W.deg(x)
    if d <= 1:
        yield ("PendantVertex", (x,), ())
        return
    if d == 2:
        for y in sorted(W.adj[x]):
            if W.deg(y) == 2 and x < y:
                yield ("Conf1", (x, y), ())
        return
    twos = W.twos(x)
    for u1, u2 in combinations(twos, 2):
        yield ("Conf2", (x, u1, u2), ())
    for y in sorted(W.adj[x]):
        if W.deg(y) == 3 and x < y:
            for u1 in twos:
                for u2 in W.twos(y):
                    if u2 != u1:
                        yield ("Conf3", (x, y, u1, u2), ())
    vs = sorted(W.adj[x])
    if all(W.deg(v) == 3 for v in vs):
        for us in product(*(W.twos(v) for v in vs)):
            if len(set(us)) == 3:
                yield ("Conf4", tuple(vs) + tuple(us) + (x,), ())


def _six_at(W: _Work, x):
    d = W.deg(x)
    if d <= 1:
        yield ("PendantVertex", (x,), ())
        return
    if d == 2:
        for y in sorted(W.adj[x]):
            if W.deg(y) == 2 and x < y:
                yield ("Adjacent2Vertices", (x, y), ())
        a, b = sorted(W.adj[x])
        for v1, v2 in ((a, b), (b, a)):
            if W.cls(v1) == 3 and W.cls(v2) in (2, 3):
                u1, u2 = [u for u in W.twos(v1) if u != x]
                for u4 in W.twos(v2):
                    if u4 != x:
                        yield ("Class3NearClass23", (v1, v2, u1, u2, x, u4), ())
        return
    c = W.cls(x)
    if c == 2:
        for y in sorted(W.adj[x]):
            if W.cls(y) == 2 and x < y:
                yield ("AdjacentClass2Pair", (x, y) + tuple(W.twos(x)) + tuple(W.twos(y)), ())
    if c == 1:
        threes = sorted(y for y in W.adj[x] if W.deg(y) == 3)
        if len(threes) != 2:
            return
        (u_mid,) = W.twos(x)
        if all(W.cls(y) == 2 for y in threes):
            v1, v3 = threes
            yield ("HConfiguration", (v1, x, v3) + tuple(W.twos(v1)) + tuple(W.twos(v3)) + (u_mid,), ())
        (v1,) = [y for y in W.adj[u_mid] if y != x]
        if W.cls(v1) == 3:
            u1, u2 = [u for u in W.twos(v1) if u != u_mid]
            for v3, v4 in permutations(threes):
                if W.cls(v3) == 2 and W.cls(v4) == 1:
                    u4, u5 = W.twos(v3)
                    (u6,) = W.twos(v4)
                    yield ("YConfiguration", (v1, u1, u2, u_mid), (x, v3, v4, u4, u5, u6))


_FINDERS = {SEVEN: _seven_at, SIXPRIME: _six_at}
_KINDS = {SEVEN: SEVEN_KINDS, SIXPRIME: SIXPRIME_KINDS}


def _find_first(W, mode):
    best = {}
    finder = _FINDERS[mode]
    for x in range(len(W.alive)):
        if not W.alive[x]:
            continue
        for kind, verts, ctx in finder(W, x):
            cand = (verts, ctx, x)
            if kind not in best or cand < best[kind]:
                best[kind] = cand
    for kind in _KINDS[mode]:
        if kind in best:
            verts, ctx, x = best[kind]
            return ConfigInstance(kind, verts, x, ctx)
    return None


def find_7_reducible(g: Graph):
    """Lowest-id instance of the highest-priority configuration, in the order
    pendant vertex, two adjacent 2-vertices, a 3-vertex with two
    2-neighbours, adjacent 3-vertices with distinct 2-neighbours, a 3-vertex
    whose three 3-neighbours have distinct 2-neighbours.  ``None`` if absent.

    Examples
    --------
    >>> from sqcolor.testkit import gen_named
    >>> find_7_reducible(gen_named("cycle(9)")).vertices
    (0, 1)
    """
    if not g.is_subcubic():
        raise PreconditionViolated("subcubic", "maximum degree exceeds 3")
    return _find_first(_Work(g), SEVEN)


def find_6prime_reducible(g: Graph):
    """As :func:`find_7_reducible` for the girth-7 configurations: pendant
    vertex, adjacent 2-vertices, adjacent class 2 vertices, a class 3 and a
    class 2 or 3 vertex sharing a 2-neighbour, H-configuration,
    Y-configuration."""
    if not g.is_subcubic():
        raise PreconditionViolated("subcubic", "maximum degree exceeds 3")
    gi = girth(g)
    if gi < 7:
        raise GirthTooSmall(gi, 7)
    return _find_first(_Work(g), SIXPRIME)


# --------------------------------------------------------------- decompose


def _check_mode(mode):
    if mode not in (SEVEN, SIXPRIME):
        raise ValueError(f"unknown mode {mode!r}")


def _preconditions(g, mode):
    if not g.is_subcubic():
        raise PreconditionViolated("subcubic", "maximum degree exceeds 3")
    if g.n == 0:
        return
    if mode == SIXPRIME:
        gi = girth(g)
        if gi < 7:
            raise GirthTooSmall(gi, 7)
        bound = Fraction(18, 7)
    else:
        bound = Fraction(14, 5)
    if not mad_below(g, bound):
        raise MadTooLarge(mad_exact(g), bound)


def decompose(g: Graph, mode: str = SEVEN, check_preconditions: bool = True) -> DecomposeTrace:
    """Remove reducible configurations until nothing is left.

    Candidates wait in a FIFO queue and are revalidated when popped; a
    destroyed one is discarded.  After each removal only vertices within
    distance 3 of the removed set's neighbours are searched for new
    candidates.

    Raises
    ------
    MadTooLarge, GirthTooSmall
        When the mad or girth hypothesis fails.
    NoConfigurationFound
        If a nonempty remainder has no configuration, which the
        hypotheses rule out.
    """
    _check_mode(mode)
    if check_preconditions:
        _preconditions(g, mode)
    finder = _FINDERS[mode]
    W = _Work(g)
    out = DecomposeTrace(mode, g.n)
    B = deque()
    pending = set()
    stamp = 0

    def scan(x):
        nonlocal stamp
        for kind, verts, ctx in finder(W, x):
            key = (kind, verts, ctx)
            if key not in pending:
                pending.add(key)
                stamp += 1
                B.append(ConfigInstance(kind, verts, x, ctx, stamp))
                out.configs_added_to_B += 1

    for x in range(g.n):
        scan(x)
    while W.count:
        if not B:
            found = _find_first(W, mode)
            if found is not None:
                raise InternalCaseFailure(f"configuration {found} missed by local rescans")
            raise NoConfigurationFound(W.remainder(), mode)
        inst = B.popleft()
        pending.discard(inst.key)
        a = inst.anchor
        if not W.alive[a] or (inst.kind, inst.vertices, inst.context) not in set(finder(W, a)):
            out.configs_discarded_as_destroyed += 1
            continue
        vs = set(inst.vertices)
        boundary = set()
        for v in inst.vertices:
            outside = [y for y in W.adj[v] if y not in vs]
            if len(outside) > 1:
                raise InternalCaseFailure(f"{inst.kind} vertex {v} has {len(outside)} outside neighbours")
            boundary.update(outside)
        W.remove(inst.vertices)
        out.removed.append(inst)
        for x in sorted(W.ball(boundary, _RESCAN)):
            scan(x)
    return out


# ------------------------------------------------------------------ rebuild


def _greedy(pc, order):
    try:
        greedy_extend(pc, order, "greedy")
    except StuckAt as exc:
        raise InternalCaseFailure(f"stuck at {exc.vertex}", pc.trace) from exc


def _trim(pc, v, k):
    try:
        pc.trim(v, k)
    except StuckAt as exc:
        raise InternalCaseFailure(f"vertex {v} has fewer than {k} colours left", pc.trace) from exc


def _outside_color(pc, v, u):
    """Smallest colour of ``v`` not available at ``u``."""
    diff = pc.remaining(v) - pc.remaining(u)
    if not diff:
        raise InternalCaseFailure(f"no colour of {v} outside the list of {u}", pc.trace)
    return min(diff)


def _class2_pair(pc, verts):
    v1, v2, u1, u2, u3, u4 = verts
    for v in (v1, v2):
        _trim(pc, v, 4)
    for u in (u1, u2, u3, u4):
        _trim(pc, u, 3)
    pc.assign(v1, _outside_color(pc, v1, u1), "colour outside L(u1)")
    _greedy(pc, (u3, u4, v2, u2, u1))


def _l17_colorings(pc, verts, both=False):
    """Colour a class-3-near-class-2/3 instance; with ``both`` return the
    two colourings that differ at ``u3``."""
    v1, v2, u1, u2, u3, u4 = verts
    for v, k in ((u1, 3), (u2, 3), (u3, 5), (u4, 2), (v1, 4), (v2, 2)):
        _trim(pc, v, k)
    pc.assign(v1, _outside_color(pc, v1, u1), "colour outside L(u1)")
    _greedy(pc, (v2, u4))
    opts = sorted(pc.remaining(u3))
    if len(opts) < 2:
        raise InternalCaseFailure(f"u3 = {u3} has {len(opts)} colours left, expected 2", pc.trace)
    results = []
    for c in opts[: 2 if both else 1]:
        trial = pc.copy()
        trial.assign(u3, c, "either colour at u3")
        _greedy(trial, (u2, u1))
        results.append(trial)
    return results


def _hconf(pc, verts):
    """Colour ``v2`` outside ``L(u5)`` first, as the reduction suggests.

    The fixed greedy order after that step can leave ``u4`` with nothing
    (``u4`` sees ``v2``, ``u3`` and ``v3`` on a 3-list), so the other seven
    vertices are completed by search, and if every such first colour fails
    the whole configuration is searched.
    """
    v1, v2, v3, u1, u2, u3, u4, u5 = verts
    for u in (u1, u2, u3, u4, u5):
        _trim(pc, u, 3)
    _trim(pc, v1, 4)
    _trim(pc, v3, 4)
    _trim(pc, v2, 5)
    for c in sorted(pc.remaining(v2) - pc.remaining(u5)):
        trial = pc.copy()
        trial.assign(v2, c, "colour outside L(u5)")
        if complete_by_search(trial, (v1, v3, u1, u2, u3, u4, u5)):
            return trial
    if complete_by_search(pc, verts):
        return pc
    raise InternalCaseFailure(f"H-configuration {verts} has no colouring", pc.trace)


def _present_degree(pc, v):
    return sum(1 for w in pc.g.adj[v] if pc.color[w] is not None)


def _validate_l17_present(pc, verts):
    """Check the Class3NearClass23 template in the graph of coloured vertices."""
    v1, v2, u1, u2, u3, u4 = verts
    inside = set(verts)

    def deg(x):
        return sum(1 for w in pc.g.adj[x] if pc.color[w] is not None or w in inside)

    ok = (
        len(inside) == 6
        and deg(v1) == 3
        and all(pc.g.has_edge(v1, u) for u in (u1, u2, u3))
        and pc.g.has_edge(v2, u3)
        and pc.g.has_edge(v2, u4)
        and deg(v2) == 3
        and all(deg(u) == 2 for u in (u1, u2, u3, u4))
    )
    if not ok:
        raise PreconditionViolated("Class3NearClass23 instance", f"{verts} is not a valid instance here")


def recolor_u3(instance: ConfigInstance, pc: PartialColoring):
    """Two colourings of a Class3NearClass23 instance that differ at ``u3``.

    The instance's six vertices are uncoloured in a copy of ``pc`` (every
    other present vertex is assumed coloured) and recoloured twice, once
    with each of two colours left at ``u3``.

    Returns
    -------
    (phi, psi) : two dicts ``vertex -> colour`` with ``phi[u3] != psi[u3]``.
    """
    if instance.kind != "Class3NearClass23":
        raise PreconditionViolated("kind", f"expected a Class3NearClass23 instance, got {instance.kind}")
    work = pc.copy()
    for v in instance.vertices:
        work.uncolor(v, reset=True)
    _validate_l17_present(work, instance.vertices)
    a, b = _l17_colorings(work, instance.vertices, both=True)
    return tuple({v: t.color[v] for v in instance.vertices} for t in (a, b))


def _yconf(pc, inst):
    verts = inst.vertices
    rep = sdr_assign(verts, {v: pc.remaining(v) for v in verts})
    if not isinstance(rep, Unsatisfiable):
        for v in verts:
            pc.assign(v, rep[v], "distinct colours")
        return pc
    v2, v3, v4, u4, u5, u6 = inst.context
    under = ConfigInstance("Class3NearClass23", (v3, v4, u4, u5, v2, u6), v2)
    if pc.trace is not None:
        pc.trace.note(f"NOTE Y-configuration at {inst.vertices}: recolouring {under.vertices}")
    for alt in recolor_u3(under, pc):
        trial = pc.copy()
        for v in alt:
            trial.uncolor(v, reset=True)
        for v, c in alt.items():
            trial.assign(v, c, "recoloured")
        rep = sdr_assign(verts, {v: trial.remaining(v) for v in verts})
        if not isinstance(rep, Unsatisfiable):
            for v in verts:
                trial.assign(v, rep[v], "distinct colours")
            return trial
    raise InternalCaseFailure(f"Y-configuration {inst.vertices}: neither recolouring extends", pc.trace)


def _color_instance(pc, inst):
    k = inst.kind
    v = inst.vertices
    if k == "PendantVertex" or k in ("Conf1", "Adjacent2Vertices", "Conf2", "Conf3", "Conf4"):
        # the listed order is the greedy order, except Conf4's w goes fourth
        order = v if k != "Conf4" else (v[0], v[1], v[2], v[6], v[3], v[4], v[5])
        _greedy(pc, order)
        return pc
    if k == "AdjacentClass2Pair":
        _class2_pair(pc, v)
        return pc
    if k == "Class3NearClass23":
        return _l17_colorings(pc, v)[0]
    if k == "HConfiguration":
        return _hconf(pc, v)
    if k == "YConfiguration":
        return _yconf(pc, inst)
    raise ValueError(f"unknown kind {k}")


def rebuild(g: Graph, dt: DecomposeTrace, L, trace: Trace | None = None):
    """Colour the removed configurations back in reverse removal order.

    Returns the total colouring as a list.  With ``trace`` one
    ``COLOR <kind> [v=c ...]`` line is written per configuration.
    """
    need = 7 if dt.mode == SEVEN else 6
    for v in range(g.n):
        if len(L[v]) < need:
            raise ListTooShort(v, len(L[v]), need)
    pc = PartialColoring(g, L)
    pc.context = ("R", dt.mode)
    for inst in reversed(dt.removed):
        pc = _color_instance(pc, inst)
        if trace is not None:
            body = " ".join(f"{trace.label(v)}={pc.color[v]}" for v in inst.vertices)
            trace.note(f"COLOR {inst.kind} [{body}]")
    col = pc.coloring()
    bad = verify_square_coloring(g, L, col)
    if bad is not None:
        raise InternalCaseFailure(f"rebuild produced an improper colouring: {bad.message}", trace)
    return col


def _solve(g, L, mode, trace):
    need = 7 if mode == SEVEN else 6
    for v in range(g.n):
        if len(L[v]) < need:
            raise ListTooShort(v, len(L[v]), need)
    dt = decompose(g, mode)
    if trace is not None:
        trace.extend(dt.lines(trace.labels))
    col = rebuild(g, dt, L, trace)
    return col, dt


def solve7(g: Graph, L, trace: Trace | None = None, return_trace: bool = False):
    """Colour ``square(g)`` from lists of size 7 when ``mad(g) < 14/5``.

    Raises ``MadTooLarge`` (carrying the exact mad) otherwise.
    """
    col, dt = _solve(g, L, SEVEN, trace)
    return (col, dt) if return_trace else col


def solve6(g: Graph, L, trace: Trace | None = None, return_trace: bool = False):
    """Colour ``square(g)`` from lists of size 6 when ``g`` has girth at
    least 7 and ``mad(g) < 18/7``."""
    col, dt = _solve(g, L, SIXPRIME, trace)
    return (col, dt) if return_trace else col


# -------------------------------------------------------------- discharging

# charges are kept as integers scaled by 70 so 1/5, 1/10, 2/7 and 1/7 are exact
_SCALE = 70


def _result(charge):
    out = [Fraction(c, _SCALE) for c in charge]
    return out, (min(out) if out else None)


def discharge_check_7(g: Graph):
    """Final charges under: every 3-vertex gives 1/5 to each 2-vertex at
    distance 1 and 1/10 to each 2-vertex at distance 2.

    Returns ``(charges, minimum)`` as Fractions.
    """
    charge = [_SCALE * g.degree(v) for v in range(g.n)]
    for v in range(g.n):
        if g.degree(v) != 3:
            continue
        near = set(g.adj[v])
        far = {y for x in g.adj[v] for y in g.adj[x]} - near - {v}
        for x in near:
            if g.degree(x) == 2:
                charge[v] -= 14
                charge[x] += 14
        for y in far:
            if g.degree(y) == 2:
                charge[v] -= 7
                charge[y] += 7
    return _result(charge)


def discharge_check_6(g: Graph):
    """Final charges under the three girth-7 rules: a 3-vertex gives 2/7 to
    each adjacent 2-vertex; a class 0 vertex gives 1/7 to each adjacent
    3-vertex; a class 1 vertex gives 1/7 to each adjacent class 2 vertex and
    to each class 3 vertex at distance 2."""
    gi = girth(g)
    if gi < 7:
        raise GirthTooSmall(gi, 7)
    deg = [g.degree(v) for v in range(g.n)]
    cls = [sum(1 for w in g.adj[v] if deg[w] == 2) if deg[v] == 3 else None for v in range(g.n)]
    charge = [_SCALE * d for d in deg]

    def give(a, b, amount):
        charge[a] -= amount
        charge[b] += amount

    for v in range(g.n):
        if deg[v] != 3:
            continue
        for x in g.adj[v]:
            if deg[x] == 2:
                give(v, x, 20)
        if cls[v] == 0:
            for x in g.adj[v]:
                give(v, x, 10)
        elif cls[v] == 1:
            for x in g.adj[v]:
                if cls[x] == 2:
                    give(v, x, 10)
            far = {y for x in g.adj[v] for y in g.adj[x]} - set(g.adj[v]) - {v}
            for y in far:
                if cls[y] == 3:
                    give(v, y, 10)
    return _result(charge)
