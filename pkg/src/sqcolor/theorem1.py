"""Constructive 8-list-colouring of the square of a connected non-Petersen
subcubic graph.

The graph is classified by :func:`detect_structure`; each structure has a
routine that greedily colours everything far away by distance class and then
finishes the few central vertices with a short case analysis.  Every routine
colours all of ``G``; nothing falls back to search except the two constant
size steps noted in ``_two_five_path``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .coloring import (
    PartialColoring,
    Unsatisfiable,
    color_all_but,
    complete_by_search,
    excess,
    finish_order,
    finish_two_excess,
    greedy_extend,
    pick_saving_pair,
    sdr_assign,
    verify_square_coloring,
)
from .errors import (
    Disconnected,
    GirthTooSmall,
    InternalCaseFailure,
    ListTooShort,
    PetersenInput,
    PreconditionViolated,
    StuckAt,
)
from .graph import (
    Graph,
    components,
    distance,
    induced_subgraph,
    is_connected,
    is_petersen,
    shortest_cycle,
)
from .trace import Trace

__all__ = [
    "StructureWitness",
    "detect_structure",
    "solve8",
    "color_c6_square",
    "extend_high_girth",
    "KINDS",
]

KINDS = (
    "LowDegreeVertex",
    "Triangle",
    "FourCycle",
    "TwoFiveCyclesSharingPath",
    "TwoFiveCyclesSharingEdge",
    "FiveCycle",
    "SixCycle",
    "HighGirthCycle",
)


@dataclass(frozen=True)
class StructureWitness:
    """A named structure together with the vertices instantiating it.

    ``cycle`` holds ``v1, v2, ...`` in order; ``outer`` holds ``u1, u2, ...``
    (the off-cycle neighbours) where the kind has them.  For the two-5-cycle
    kinds ``cycle`` is the 7- or 8-tuple labelled as in the routines below.
    """

    kind: str
    cycle: tuple
    outer: tuple = field(default=())

    def check(self, g: Graph) -> bool:
        """Re-instantiate the witness in ``g``."""
        c = self.cycle
        if self.kind == "LowDegreeVertex":
            return g.degree(c[0]) <= 2
        if self.kind == "TwoFiveCyclesSharingPath":
            v1, v2, v3, v4, v5, v6, v7 = c
            ring = (v1, v2, v3, v4, v5, v6)
            return (
                len(set(c)) == 7
                and all(g.has_edge(ring[i], ring[(i + 1) % 6]) for i in range(6))
                and g.has_edge(v7, v1)
                and g.has_edge(v7, v4)
            )
        if self.kind == "TwoFiveCyclesSharingEdge":
            return (
                len(set(c)) == 8
                and all(g.has_edge(c[i], c[(i + 1) % 8]) for i in range(8))
                and g.has_edge(c[0], c[4])
            )
        k = len(c)
        ok = len(set(c)) == k and all(g.has_edge(c[i], c[(i + 1) % k]) for i in range(k))
        expected = {"Triangle": 3, "FourCycle": 4, "FiveCycle": 5, "SixCycle": 6}.get(self.kind)
        if expected is not None:
            ok = ok and k == expected
        if self.outer:
            ok = ok and all(g.has_edge(v, u) and u not in c for v, u in zip(c, self.outer))
        return ok


# ---------------------------------------------------------------- detection


def _outer(g, cyc):
    """Third neighbour of each vertex of ``cyc`` (3-regular graphs)."""
    k = len(cyc)
    out = []
    for i, v in enumerate(cyc):
        on = {cyc[(i - 1) % k], cyc[(i + 1) % k]}
        rest = [w for w in g.adj[v] if w not in on]
        out.append(rest[0])
    return tuple(out)


def _shared_path_witnesses(g: Graph, middles=None):
    """All labellings ``(v1..v7)`` of two 5-cycles through ``v1 v7 v4``.

    ``v7`` is the middle of the shared path; ``v1 v2 v3 v4 v5 v6`` the
    6-cycle formed by the other vertices.
    """
    nbr = g.nbr_sets
    for b in sorted(middles) if middles is not None else range(g.n):
        nb = g.adj[b]
        for i in range(len(nb)):
            for j in range(len(nb)):
                if i == j:
                    continue
                a, c = nb[i], nb[j]
                paths = []
                for x in g.adj[c]:
                    if x in (a, b):
                        continue
                    for y in g.adj[x]:
                        if y in (a, b, c) or a not in nbr[y]:
                            continue
                        paths.append((x, y))
                for p in range(len(paths)):
                    for q in range(len(paths)):
                        if p == q:
                            continue
                        x, y = paths[p]
                        x2, y2 = paths[q]
                        if len({x, y, x2, y2}) == 4:
                            yield (a, y, x, c, x2, y2, b)


def _shared_edge_witness(g: Graph):
    """First ``(v1..v8)``: an 8-cycle with chord ``v1 v5``."""
    for a in range(g.n):
        for b in g.adj[a]:
            if b < a:
                continue
            paths = []
            for x in g.adj[a]:
                if x == b:
                    continue
                for y in g.adj[x]:
                    if y in (a, b):
                        continue
                    for z in g.adj[y]:
                        if z in (a, b, x) or not g.has_edge(z, b):
                            continue
                        paths.append((x, y, z))
            for p in range(len(paths)):
                for q in range(p + 1, len(paths)):
                    s, t = paths[p], paths[q]
                    if not set(s) & set(t):
                        return (a,) + s + (b,) + t[::-1]
    return None


def _two_four_cycle_pair(g: Graph):
    """``(v2, v1)`` with ``v1`` on two 4-cycles and ``v2`` a neighbour of
    ``v1`` on one of them, or ``None``."""
    for v in range(g.n):
        cycles = []
        nb = g.adj[v]
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                a, c = nb[i], nb[j]
                for x in g.adj[a]:
                    if x != v and x in g.nbr_sets[c]:
                        cycles.append((a, c))
        if len(cycles) >= 2:
            return cycles[0][0], v
    return None


def detect_structure(g: Graph) -> StructureWitness:
    """Classify a connected non-Petersen subcubic graph by the first
    structure present, in this priority order: a vertex of degree at most
    2, a triangle, a 4-cycle, two 5-cycles sharing a 2-edge path, two
    5-cycles sharing an edge, a 5-cycle, a 6-cycle, and otherwise a shortest
    cycle (length at least 7).

    Results are cached on ``g``.

    Raises
    ------
    PetersenInput, Disconnected
    """
    cached = g._cache.get("structure")
    if cached is not None:
        return cached
    if g.n < 2:
        raise PreconditionViolated("n >= 2", "structure detection needs at least two vertices")
    if not g.is_subcubic():
        raise PreconditionViolated("subcubic", "maximum degree exceeds 3")
    if not is_connected(g):
        raise Disconnected()
    if is_petersen(g):
        raise PetersenInput()
    w = _detect(g)
    g._cache["structure"] = w
    return w


def _detect(g: Graph) -> StructureWitness:
    for v in range(g.n):
        if g.degree(v) <= 2:
            return StructureWitness("LowDegreeVertex", (v, g.adj[v][0]))
    cyc = shortest_cycle(g)
    k = len(cyc)
    if k == 3:
        return StructureWitness("Triangle", cyc)
    if k == 4:
        return StructureWitness("FourCycle", cyc, _outer(g, cyc))
    if k == 5:
        for lab in _shared_path_witnesses(g):
            return StructureWitness("TwoFiveCyclesSharingPath", lab)
        lab = _shared_edge_witness(g)
        if lab is not None:
            return StructureWitness("TwoFiveCyclesSharingEdge", lab)
        return StructureWitness("FiveCycle", cyc, _outer(g, cyc))
    if k == 6:
        return StructureWitness("SixCycle", cyc, _outer(g, cyc))
    return StructureWitness("HighGirthCycle", cyc, _outer(g, cyc))


# ------------------------------------------------------------------ helpers


class _CaseFailed(Exception):
    """A case's entry condition held but a later check did not."""


def _ctx(pc, lemma, case):
    pc.context = (str(lemma), str(case))


def _trim(pc, v, size):
    """Discard colours at ``v`` down to ``size``, but never below
    ``#uncoloured square-neighbours - 1`` (the zero-excess level the size
    bounds presume); an extra uncoloured neighbour keeps its colour."""
    pc.trim(v, max(size, pc.uncolored_near(v) - 1))


def _save(pc, x, y, v, reason=None):
    """Colour ``x, y`` so that ``v`` loses at most one colour.

    When ``|R(x)| + |R(y)| <= |R(v)|`` the bound the case needs already
    holds with a colour to spare at ``v``; the same preference order is used
    without the guarantee.
    """
    rx, ry, rv = pc.remaining(x), pc.remaining(y), pc.remaining(v)
    for w, r in ((x, rx), (y, ry)):
        if not r:
            raise StuckAt(w)
    if len(rx) + len(ry) > len(rv):
        c1, c2 = pick_saving_pair(pc, x, y, v)
    elif rx & ry:
        c1 = c2 = min(rx & ry)
    elif rx - rv:
        c1, c2 = min(rx - rv), min(ry)
    elif ry - rv:
        c1, c2 = min(rx), min(ry - rv)
    else:
        c1, c2 = min(rx), min(ry)
    why = reason or f"save at {v}"
    pc.assign(x, c1, why)
    pc.assign(y, c2, why)
    return c1, c2


def _greedy(pc, order, reason="greedy"):
    greedy_extend(pc, [v for v in order if pc.color[v] is None], reason)


def _can_finish(pc, u, v):
    if pc.color[u] is not None or pc.color[v] is not None or not pc.adjacent(u, v):
        return False
    return excess(pc, u) >= 1 and excess(pc, v) >= 2 and finish_order(pc, u, v) is not None


def _try_finish(pc, *pairs):
    """Finish with the first pair (either role) meeting the excess bounds."""
    for a, b in pairs:
        for u, v in ((a, b), (b, a)):
            if _can_finish(pc, u, v):
                return finish_two_excess(pc, u, v)
    return None


def _finish(pc, u, v):
    """Finish with ``excess(u) >= 1, excess(v) >= 2``; anything else means
    the case's counting did not hold."""
    try:
        return finish_two_excess(pc, u, v)
    except PreconditionViolated as exc:
        raise _CaseFailed(str(exc)) from exc


def _dihedral(seq):
    k = len(seq)
    for r in range(k):
        yield tuple(seq[(r + i) % k] for i in range(k))
        yield tuple(seq[(r - i) % k] for i in range(k))


# ---------------------------------------------------------- structure routines


def _low_degree(pc, w):
    low, nbr = w.cycle
    _ctx(pc, 5, 1)
    return finish_two_excess(pc, nbr, low)


def _triangle(pc, w):
    a, b, _ = w.cycle
    _ctx(pc, 6, 1)
    return finish_two_excess(pc, a, b)


def _four_cycle(pc, w):
    g = pc.g
    pair = _two_four_cycle_pair(g)
    if pair is not None:
        _ctx(pc, 7, "two-4-cycles")
        done = _try_finish(pc, pair)
        if done is not None:
            return done
    base = w.cycle
    outer = dict(zip(w.cycle, w.outer))
    H = set(base) | set(w.outer)
    if len(H) != 8:
        raise InternalCaseFailure("4-cycle neighbours are not distinct", pc.trace)
    _ctx(pc, 7, "far")
    color_all_but(pc, H)
    start = pc.copy()

    # Case 1: some labelling with dist(u1, v3) = 3
    for lab in _dihedral(base):
        v1, v2, v3, v4 = lab
        u1, u2, u3, u4 = (outer[x] for x in lab)
        if distance(g, u1, v3, limit=3) == 3:
            pc = start.copy()
            _ctx(pc, 7, 1)
            _trim(pc, v1, 6)
            _save(pc, u1, v3, v1)
            return finish_two_excess(pc, v2, v1, [u2, u3, u4, v4, v2, v1])

    # Case 2: u1 u3 and u2 u4 adjacent; some dist(ui, ui+1) = 3
    for lab in _dihedral(base):
        v1, v2 = lab[0], lab[1]
        u1, u2 = outer[v1], outer[v2]
        if distance(g, u1, u2, limit=3) == 3:
            pc = start.copy()
            _ctx(pc, 7, 2)
            for v in base:
                _trim(pc, v, 7)
            _save(pc, u1, u2, v1)
            return _finish(pc, v2, v1)
    raise InternalCaseFailure("4-cycle: no case applies (would force a triangle)", pc.trace)


def _two_five_path_case(g, lab):
    v1, v2, v3, v4, v5, v6, v7 = lab
    d25 = distance(g, v2, v5, limit=3)
    d36 = distance(g, v3, v6, limit=3)
    if d25 >= 3 and d36 >= 3:
        return 1
    if d25 == 2 and d36 == 2:
        return 3
    return 2


def _mirror8(lab):
    v1, v2, v3, v4, v5, v6, v7 = lab
    return (v4, v3, v2, v1, v6, v5, v7)


def _two_five_path(pc, w):
    g = pc.g
    lab = w.cycle
    case = _two_five_path_case(g, lab)
    if case == 3:
        # other 5-cycle pairs around the same core; one avoids Case 3
        v1, v2, v3, v4, v5, v6, v7 = lab
        v8 = next(x for x in g.adj[v2] if x not in (v1, v3))
        v9 = next(x for x in g.adj[v3] if x not in (v2, v4))
        core = {v1, v2, v3, v4, v5, v6, v7, v8, v9}
        for alt in _shared_path_witnesses(g, core):
            if set(alt) <= core and _two_five_path_case(g, alt) != 3:
                lab = alt
                case = _two_five_path_case(g, alt)
                break
        else:
            raise InternalCaseFailure("two 5-cycles: no relabelling leaves Case 3", pc.trace)
        if pc.trace is not None:
            pc.trace.note(f"NOTE LEMMA 8 CASE 3 relabelled to {lab}")
    v1, v2, v3, v4, v5, v6, v7 = lab
    _ctx(pc, 8, "far")
    color_all_but(pc, lab)
    if case == 1:
        return _two_five_path_case1(pc, lab)
    if distance(g, v2, v5, limit=3) == 2:
        lab = _mirror8(lab)
    return _two_five_path_case2(pc, lab)


def _two_five_path_case1(pc, lab):
    v1, v2, v3, v4, v5, v6, v7 = lab
    for v in (v1, v4, v7):
        _trim(pc, v, 5)
    for v in (v2, v3, v5, v6):
        _trim(pc, v, 4)
    for cand in (lab, _mirror8(lab)):
        a1, a2, a3, a4, a5, a6, a7 = cand
        common = pc.remaining(a2) & pc.remaining(a5)
        if common:
            _ctx(pc, 8, "1.1")
            c1 = min(common)
            pc.assign(a2, c1, "common colour")
            pc.assign(a5, c1, "common colour")
            _save(pc, a3, a6, a7)
            _greedy(pc, (a1, a4, a7))
            return pc
    # Subcase 1.2: constant-size search over v1, v4, v7, then the 4-cycle
    _ctx(pc, 8, "1.2")
    R = {v: sorted(pc.remaining(v)) for v in lab}
    for c1, c4, c7 in product(R[v1], R[v4], R[v7]):
        if len({c1, c4, c7}) < 3:
            continue
        trial = pc.copy()
        trial.assign(v1, c1, "1.2 search")
        trial.assign(v4, c4, "1.2 search")
        trial.assign(v7, c7, "1.2 search")
        sizes = [len(trial.remaining(v)) for v in (v2, v3, v5, v6)]
        if min(sizes) == 0 or sum(1 for s in sizes if s == 1) > 1:
            continue
        if complete_by_search(trial, (v2, v3, v5, v6)):
            return trial
    raise InternalCaseFailure("two 5-cycles: Subcase 1.2 search failed", pc.trace)


def _two_five_path_case2(pc, lab):
    g = pc.g
    v1, v2, v3, v4, v5, v6, v7 = lab
    u2 = next(x for x in g.adj[v2] if x not in (v1, v3))
    pc.uncolor(u2)
    for v, k in ((v1, 6), (v2, 5), (v3, 6), (v4, 5), (v5, 4), (v6, 5), (v7, 5), (u2, 2)):
        _trim(pc, v, k)
    common = pc.remaining(u2) & pc.remaining(v4)
    if common:
        _ctx(pc, 8, "2.1")
        c1 = min(common)
        pc.assign(u2, c1, "common colour")
        pc.assign(v4, c1, "common colour")
        _save(pc, v2, v5, v3)
        _greedy(pc, (v7, v6, v1, v3))
        return pc
    _ctx(pc, 8, "2.2")
    common = pc.remaining(v2) & pc.remaining(v5)
    if common:
        c = min(common)
        pc.assign(v2, c, "common colour")
        pc.assign(v5, c, "common colour")
        _save(pc, u2, v4, v3)
        _greedy(pc, (v7, v6, v1, v3))
        return pc
    _save(pc, u2, v4, v3)
    for c6, c7 in product(sorted(pc.remaining(v6)), sorted(pc.remaining(v7))):
        if c6 == c7:
            continue
        trial = pc.copy()
        trial.assign(v6, c6, "2.2 search")
        trial.assign(v7, c7, "2.2 search")
        if not trial.remaining(v2) or not trial.remaining(v5):
            continue
        if complete_by_search(trial, (v1, v2, v3, v5)):
            return trial
    raise InternalCaseFailure("two 5-cycles: Subcase 2.2 search failed", pc.trace)


def _two_five_edge(pc, w):
    v1, v2, v3, v4, v5, v6, v7, v8 = w.cycle
    _ctx(pc, 9, "far")
    color_all_but(pc, w.cycle)
    for v, k in ((v1, 6), (v2, 4), (v3, 3), (v4, 4), (v5, 6), (v6, 4), (v7, 3), (v8, 4)):
        _trim(pc, v, k)
    common = pc.remaining(v4) & pc.remaining(v8)
    if common:
        _ctx(pc, 9, 1)
        c1 = min(common)
        pc.assign(v4, c1, "common colour")
        pc.assign(v8, c1, "common colour")
        _save(pc, v2, v6, v5)
        return _finish(pc, v1, v5)
    _ctx(pc, 9, 2)
    _save(pc, v2, v6, v5)
    _greedy(pc, (v3, v7))
    done = _try_finish(pc, (v5, v4), (v5, v8))
    if done is not None:
        return done
    _greedy(pc, (v1,))
    done = _try_finish(pc, (v5, v4), (v5, v8))
    if done is None:
        raise InternalCaseFailure("two 5-cycles sharing an edge: no finishing pair", pc.trace)
    return done


def _five_cycle(pc, w):
    g = pc.g
    outer = dict(zip(w.cycle, w.outer))
    H = set(w.cycle) | set(w.outer)
    _ctx(pc, 10, "far")
    color_all_but(pc, H)
    for v in w.cycle:
        _trim(pc, v, 6)
    labs = list(_dihedral(w.cycle))
    for lab in labs:
        v1, v2, v3, v4, v5 = lab
        u1, u2, u3, u4, u5 = (outer[x] for x in lab)
        common = pc.remaining(u1) & pc.remaining(v3)
        if common:
            _ctx(pc, 10, 1)
            c1 = min(common)
            pc.assign(u1, c1, "common colour")
            pc.assign(v3, c1, "common colour")
            _greedy(pc, (u2, u3, u4))
            _save(pc, u5, v2, v1)
            _greedy(pc, (v4, v5, v1))
            return pc
    for lab in labs:
        v1, v2, v3, v4, v5 = lab
        u1, u2, u3, u4, u5 = (outer[x] for x in lab)
        common = pc.remaining(u1) & pc.remaining(u2)
        if common:
            _ctx(pc, 10, 2)
            c1 = min(common)
            pc.assign(u1, c1, "common colour")
            pc.assign(u2, c1, "common colour")
            _save(pc, v5, u3, v2)
            _greedy(pc, (u5,))
            return _finish(pc, v1, v2)
    _ctx(pc, 10, 3)
    verts = list(w.cycle) + list(w.outer)
    rep = sdr_assign(verts, {v: pc.remaining(v) for v in verts})
    if isinstance(rep, Unsatisfiable):
        raise InternalCaseFailure(f"5-cycle: Hall violator {rep.witness}", pc.trace)
    for v in verts:
        pc.assign(v, rep[v], "distinct representatives")
    return pc


def _c6_adjacent(i, j):
    d = (i - j) % 6
    return d in (1, 2, 4, 5)


def _c6_greedy(lists, col, order):
    for i in order:
        used = {col[j] for j in range(6) if col[j] is not None and _c6_adjacent(i, j)}
        avail = sorted(lists[i] - used)
        if not avail:
            return False
        col[i] = avail[0]
    return True


def _c6_tail(L, col):
    """Colour v2, v3, v5, v6 once v1 and v4 (indices 0 and 3) are coloured."""
    used = {col[0], col[3]}
    common = (L[1] & L[4]) - used
    if common:
        c = min(common)
        col[1] = col[4] = c
        return _c6_greedy(L, col, (2, 5))
    if not _c6_greedy(L, col, (2,)):
        return False
    if len(L[1] - {col[0], col[3], col[2]}) >= 2:
        return _c6_greedy(L, col, (4, 5, 1))
    return _c6_greedy(L, col, (1, 5, 4))


def color_c6_square(lists):
    """Colour the square of the 6-cycle ``v1 .. v6`` from lists of size >= 3.

    Parameters
    ----------
    lists : sequence of six colour collections, in cycle order.

    Returns
    -------
    list of six colours, distinct on any two vertices at cycle distance 1 or 2.

    Examples
    --------
    >>> color_c6_square([{1, 2, 3}] * 6)
    [1, 2, 3, 1, 2, 3]
    """
    if len(lists) != 6:
        raise PreconditionViolated("six lists", "expected six lists")
    for i, s in enumerate(lists):
        if len(set(s)) < 3:
            raise ListTooShort(i, len(set(s)), 3)
    base = [set(sorted(set(s))[:3]) for s in lists]

    for r in range(3):
        if base[r] & base[r + 3]:
            # rotate so the antipodal pair with a common colour is v1, v4
            L = base[r:] + base[:r]
            col = [None] * 6
            col[0] = col[3] = min(L[0] & L[3])
            if not _c6_tail(L, col):
                break
            return col[-r:] + col[:-r] if r else col
    else:
        L = base
        col = [None] * 6
        col[0] = min(L[0])
        c2 = None
        for i in (1, 2, 4, 5):
            if col[0] in L[i]:
                c2 = min(L[3] - L[i])
                break
        col[3] = c2 if c2 is not None else min(L[3])
        rest = {j: L[j] - {col[0], col[3]} for j in (1, 2, 4, 5)}
        short = [j for j in rest if len(rest[j]) == 1]
        if not short:
            ok = _c6_tail(L, col)
        else:
            k = short[0]
            partner = {1: 2, 2: 1, 4: 5, 5: 4}[k]
            ok = _c6_greedy(L, col, (k, partner, (partner + 3) % 6, (k + 3) % 6))
        if ok:
            return col
    raise InternalCaseFailure(f"6-cycle square: lists {base} not coloured")


def _six_cycle(pc, w):
    _ctx(pc, 11, "far")
    color_all_but(pc, w.cycle)
    lists = [pc.remaining(v) for v in w.cycle]
    _ctx(pc, 11, "claim")
    cols = color_c6_square(lists)
    for v, c in zip(w.cycle, cols):
        pc.assign(v, c, "6-cycle square")
    return pc


# ------------------------------------------------------------- high girth


class _Ring:
    """Index arithmetic on ``v_i`` / ``u_i`` around an oriented cycle."""

    def __init__(self, cyc, outer):
        self.v = cyc
        self.u = outer
        self.k = len(cyc)

    def V(self, i):
        return self.v[i % self.k]

    def U(self, i):
        return self.u[i % self.k]


def _hg_continue_case1(pc, r, i):
    """``u_i`` and ``u_{i+1}`` coloured with v_i, v_{i+1} keeping >= 5."""
    _save(pc, r.U(i - 1), r.V(i + 2), r.V(i))
    _greedy(pc, (r.U(i + 2),))
    return _finish(pc, r.V(i + 1), r.V(i))


def _hg_case1(pc, r, i):
    vi, vj = r.V(i), r.V(i + 1)
    Ri, Rj = pc.remaining(vi), pc.remaining(vj)
    for c1 in sorted(pc.remaining(r.U(i))):
        for c2 in sorted(pc.remaining(r.U(i + 1))):
            if c1 != c2 and pc.adjacent(r.U(i), r.U(i + 1)):
                continue
            if len(Ri - {c1, c2}) >= 5 and len(Rj - {c1, c2}) >= 5:
                _ctx(pc, "1", f"1:i={i}")
                pc.assign(r.U(i), c1, "case 1 pair")
                pc.assign(r.U(i + 1), c2, "case 1 pair")
                return _hg_continue_case1(pc, r, i)
    return None


def _hg_case2(pc, r, i):
    vi = r.V(i)
    out = pc.remaining(r.U(i)) - pc.remaining(vi)
    if not out:
        return None
    _ctx(pc, "1", f"2:i={i}")
    pc.assign(r.U(i), min(out), "colour outside L(v_i)")
    before = pc.remaining(r.V(i - 1))
    c2, c3 = pick_saving_pair(pc, r.U(i - 1), r.V(i + 1), r.V(i - 1))
    if c2 == c3:
        pc.assign(r.U(i - 1), c2, "common colour")
        pc.assign(r.V(i + 1), c3, "common colour")
        _greedy(pc, (r.U(i + 1),))
        return _finish(pc, r.V(i - 1), r.V(i))
    if c2 not in before:
        pc.assign(r.U(i - 1), c2, "colour outside L(v_{i-1})")
        return _hg_continue_case1(pc, r, i - 1)
    pc.assign(r.V(i + 1), c3, "colour outside L(v_{i-1})")
    _greedy(pc, (r.U(i + 1), r.U(i + 2)))
    done = _try_finish(pc, (r.V(i - 1), r.V(i)))
    if done is not None:
        return done
    _save(pc, r.U(i - 1), r.V(i + 2), r.V(i))
    return _finish(pc, r.V(i - 1), r.V(i))


def _hg_case3(pc, r, i):
    vi = r.V(i)
    out = pc.remaining(r.U(i + 1)) - pc.remaining(vi)
    if not out:
        return None
    _ctx(pc, "1", f"3:i={i}")
    pc.assign(r.U(i + 1), min(out), "colour outside L(v_i)")
    before = pc.remaining(r.V(i + 1))
    c2, c3 = pick_saving_pair(pc, r.U(i), r.V(i + 2), r.V(i + 1))
    if c2 == c3:
        pc.assign(r.U(i), c2, "common colour")
        pc.assign(r.V(i + 2), c3, "common colour")
        _greedy(pc, (r.U(i + 2),))
        return _finish(pc, r.V(i), r.V(i + 1))
    if c2 not in before:
        pc.assign(r.U(i), c2, "colour outside L(v_{i+1})")
        return _hg_continue_case1(pc, r, i)
    pc.assign(r.V(i + 2), c3, "colour outside L(v_{i+1})")
    _greedy(pc, (r.U(i + 2), r.U(i + 3)))
    done = _try_finish(pc, (r.V(i), r.V(i + 1)))
    if done is not None:
        return done
    _save(pc, r.U(i), r.V(i + 3), r.V(i + 1))
    return _finish(pc, r.V(i), r.V(i + 1))


def _hg_case4(pc, r, i):
    a, b = r.U(i - 1), r.U(i + 1)
    Ri = pc.remaining(r.V(i))
    choice = None
    for c1 in sorted(pc.remaining(a)):
        for c2 in sorted(pc.remaining(b)):
            if c1 != c2 and pc.adjacent(a, b):
                continue
            if len(Ri - {c1, c2}) >= 5:
                choice = (c1, c2)
                break
        if choice:
            break
    if choice is None:
        return None
    _ctx(pc, "1", f"4:i={i}")
    pc.assign(a, choice[0], "case 4 pair")
    pc.assign(b, choice[1], "case 4 pair")
    before = pc.remaining(r.V(i + 1))
    c3, c4 = pick_saving_pair(pc, r.U(i), r.V(i + 2), r.V(i + 1))
    if c3 == c4:
        pc.assign(r.U(i), c3, "common colour")
        pc.assign(r.V(i + 2), c4, "common colour")
        return _finish(pc, r.V(i + 1), r.V(i))
    if c3 not in before:
        pc.assign(r.U(i), c3, "colour outside L(v_{i+1})")
        _save(pc, r.V(i - 1), r.U(i + 2), r.V(i + 1))
        return _finish(pc, r.V(i), r.V(i + 1))
    pc.assign(r.V(i + 2), c4, "colour outside L(v_{i+1})")
    _greedy(pc, (r.U(i + 2), r.U(i + 3)))
    _save(pc, r.U(i), r.V(i + 3), r.V(i + 1))
    return _finish(pc, r.V(i), r.V(i + 1))


def _hg_case5(pc, r):
    _ctx(pc, "1", "5")
    before = {r.U(j): pc.remaining(r.U(j)) for j in range(r.k)}
    _greedy(pc, r.u, "arbitrary colour on u_j")
    for j in range(r.k):
        u, v = r.U(j), r.V(j)
        opts = sorted((before[u] - {pc.color[u]}) & pc.remaining(v))
        if not opts:
            raise InternalCaseFailure(f"high girth Case 5: nothing left at {v}", pc.trace)
        pc.assign(v, opts[0], "from L(u_j) minus c(u_j)")
    return pc


def extend_high_girth(g: Graph, L, cycle=None, trace=None, pc=None):
    """Colour ``square(g)`` for a 3-regular ``g`` of girth at least 7.

    Everything off ``H`` (the cycle and its outer neighbours) is coloured
    by distance class; Cases 1 to 4 are then tried at every position in
    both orientations, and Case 5 colours the rest directly.
    """
    if any(g.degree(v) != 3 for v in range(g.n)):
        raise PreconditionViolated("3-regular", "high-girth routine needs a 3-regular graph")
    cyc = shortest_cycle(g) if cycle is None else tuple(cycle)
    if cyc is None or len(cyc) < 7:
        raise GirthTooSmall(len(cyc) if cyc else float("inf"), 7)
    outer = _outer(g, cyc)
    # no two outer neighbours coincide or are adjacent
    if len(set(outer)) != len(outer) or any(g.has_edge(a, b) for a in outer for b in outer):
        raise InternalCaseFailure("outer neighbours of a shortest cycle are adjacent", trace)
    if pc is None:
        pc = PartialColoring(g, L, trace)
    _ctx(pc, "1", "far")
    color_all_but(pc, set(cyc) | set(outer))
    for v in cyc:
        _trim(pc, v, 6)
    rings = [_Ring(cyc, outer)]
    rev = tuple(reversed(cyc))
    rings.append(_Ring(rev, tuple(reversed(outer))))
    for case in (_hg_case1, _hg_case2, _hg_case3, _hg_case4):
        for r in rings:
            for i in range(r.k):
                trial = pc.copy()
                try:
                    done = case(trial, r, i)
                except (_CaseFailed, PreconditionViolated, StuckAt) as exc:
                    if trace is not None:
                        trace.note(f"NOTE {case.__name__} at i={i} abandoned: {exc}")
                    continue
                if done is not None:
                    return done
    return _hg_case5(pc, rings[0])


def _high_girth(pc, w):
    return extend_high_girth(pc.g, None, w.cycle, pc.trace, pc)


_ROUTINES = {
    "LowDegreeVertex": _low_degree,
    "Triangle": _triangle,
    "FourCycle": _four_cycle,
    "TwoFiveCyclesSharingPath": _two_five_path,
    "TwoFiveCyclesSharingEdge": _two_five_edge,
    "FiveCycle": _five_cycle,
    "SixCycle": _six_cycle,
    "HighGirthCycle": _high_girth,
}


def _solve_connected(g, L, trace):
    if g.n == 1:
        c = min(L[0])
        if trace is not None:
            trace.decision("0", "single", 0, c, "isolated vertex")
        return [c]
    w = detect_structure(g)
    pc = PartialColoring(g, L, trace)
    try:
        done = _ROUTINES[w.kind](pc, w)
    except (_CaseFailed, StuckAt) as exc:
        raise InternalCaseFailure(f"{w.kind}: {exc}", trace) from exc
    except PreconditionViolated as exc:
        raise InternalCaseFailure(f"{w.kind}: internal precondition {exc.clause}: {exc}", trace) from exc
    col = done.coloring()
    bad = verify_square_coloring(g, L, col)
    if bad is not None:
        raise InternalCaseFailure(f"{w.kind}: {bad.message}", trace)
    return col


def solve8(g: Graph, L, trace: Trace | None = None):
    """List-colour ``square(g)`` from lists of size at least 8.

    Parameters
    ----------
    g : Graph
        Subcubic; no component may be the Petersen graph.  Components are
        coloured independently.
    L : sequence of sets
        One list per vertex.
    trace : Trace, optional
        Receives one line per colouring decision.

    Returns
    -------
    list
        ``coloring[v]`` for every vertex.

    Raises
    ------
    PetersenInput, ListTooShort, InternalCaseFailure
    """
    if not g.is_subcubic():
        raise PreconditionViolated("subcubic", "maximum degree exceeds 3")
    for v in range(g.n):
        if len(L[v]) < 8:
            raise ListTooShort(v, len(L[v]), 8)
    if is_connected(g):
        return _solve_connected(g, L, trace)
    out = [None] * g.n
    for comp in components(g):
        h, order = induced_subgraph(g, comp)
        sub = [L[v] for v in order]
        sub_trace = None if trace is None else Trace([trace.label(v) for v in order])
        col = _solve_connected(h, sub, sub_trace)
        if trace is not None:
            trace.extend(sub_trace.lines)
        for i, v in enumerate(order):
            out[v] = col[i]
    return out
