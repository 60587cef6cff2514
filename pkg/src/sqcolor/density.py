"""Exact maximum average degree.

Small graphs are handled by enumerating every vertex subset with numpy bit
tricks; larger ones by Dinkelbach iteration on Goldberg's density network,
each step an integer min-cut.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, maximum_flow

from .graph import Graph, GraphError

__all__ = ["mad_exact", "mad_brute", "mad_flow", "mad_below", "closure", "BRUTE_LIMIT"]

BRUTE_LIMIT = 24
_CHUNK = 1 << 20
# scipy's maximum_flow is int32-only and silently misbehaves past that
_INT32_BUDGET = 2**31 - 1


def mad_brute(g: Graph) -> Fraction:
    """Max of ``2|E(H)|/|V(H)|`` over all nonempty vertex subsets."""
    n = g.n
    if n == 0:
        raise GraphError("mad of the empty graph")
    if n > 30:
        raise ValueError("brute-force mad is limited to 30 vertices")
    edges = g.edges()
    best_e, best_s = 0, 1
    total = 1 << n
    for start in range(1, total, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        size = np.zeros(masks.shape, dtype=np.int64)
        for v in range(n):
            size += (masks >> v) & 1
        ecount = np.zeros(masks.shape, dtype=np.int64)
        for u, v in edges:
            ecount += (masks >> u) & (masks >> v) & 1
        ratio = ecount / size
        top = ratio.max()
        # densities have denominators <= 30, so float ties are resolved exactly
        for j in np.nonzero(ratio >= top - 1e-9)[0]:
            if ecount[j] * best_s > best_e * size[j]:
                best_e, best_s = int(ecount[j]), int(size[j])
    return Fraction(2 * best_e, best_s)


def _network(g: Graph, p: int, q: int):
    # Goldberg: s->v (qU), v->t (qU + 2p - q d(v)), u<->v (q); U = max degree
    n = g.n
    U = max(g.max_degree(), 1)
    s, t = n, n + 1
    rows, cols, caps = [], [], []
    for v in range(n):
        rows.append(s)
        cols.append(v)
        caps.append(q * U)
        c = q * U + 2 * p - q * len(g.adj[v])
        if c:
            rows.append(v)
            cols.append(t)
            caps.append(c)
        for w in g.adj[v]:
            rows.append(v)
            cols.append(w)
            caps.append(q)
    return s, t, rows, cols, caps, q * U * n


def _cut_scipy(n, s, t, rows, cols, caps):
    size = n + 2
    cap = csr_matrix((np.array(caps, dtype=np.int32), (rows, cols)), shape=(size, size))
    res = maximum_flow(cap, s, t)
    residual = (cap - res.flow).tocsr()
    residual.data[residual.data < 0] = 0
    residual.eliminate_zeros()
    from_s = breadth_first_order(residual, s, directed=True, return_predecessors=False)
    to_t = breadth_first_order(residual.T.tocsr(), t, directed=True, return_predecessors=False)
    minimal = sorted(int(v) for v in from_s if v < n)
    reaches_t = set(int(v) for v in to_t)
    maximal = [v for v in range(n) if v not in reaches_t]
    return int(res.flow_value), minimal, maximal


def _cut_networkx(n, s, t, rows, cols, caps):
    import networkx as nx

    dg = nx.DiGraph()
    dg.add_nodes_from(range(n + 2))
    for a, b, c in zip(rows, cols, caps):
        dg.add_edge(a, b, capacity=c)
    R = nx.algorithms.flow.preflow_push(dg, s, t)
    value = R.graph["flow_value"]
    res_edges = [(a, b) for a, b, d in R.edges(data=True) if d["capacity"] - d["flow"] > 0]
    rg = nx.DiGraph(res_edges)
    rg.add_nodes_from(range(n + 2))
    reaches_t = nx.ancestors(rg, t) | {t}
    minimal = sorted(v for v in nx.descendants(rg, s) if v < n)
    maximal = [v for v in range(n) if v not in reaches_t]
    return int(value), minimal, maximal


def closure(g: Graph, lam):
    """Solve ``max_S |E(S)| - lam*|S|`` exactly.

    Returns ``(value, minimal, maximal)``: the optimum as a Fraction and the
    inclusion-minimal and inclusion-maximal optimal vertex sets.
    """
    lam = Fraction(lam)
    p, q = lam.numerator, lam.denominator
    s, t, rows, cols, caps, total = _network(g, p, q)
    if total + q * g.n < _INT32_BUDGET:
        cut, minimal, maximal = _cut_scipy(g.n, s, t, rows, cols, caps)
    else:
        cut, minimal, maximal = _cut_networkx(g.n, s, t, rows, cols, caps)
    # cut = qUn + 2p|S| - 2q E(S) at the optimum
    value = Fraction(total - cut, 2 * q)
    return value, minimal, maximal


def mad_below(g: Graph, bound) -> bool:
    """True iff ``mad(g) < bound``, decided with a single min-cut."""
    if g.n == 0:
        raise GraphError("mad of the empty graph")
    if g.n <= BRUTE_LIMIT or "mad" in g._cache:
        return mad_exact(g) < bound
    value, _, maximal = closure(g, Fraction(bound) / 2)
    return value < 0 or (value == 0 and not maximal)


def mad_flow(g: Graph) -> Fraction:
    """Exact mad by Dinkelbach iteration over min-cut closure problems."""
    if g.n == 0:
        raise GraphError("mad of the empty graph")
    lam = Fraction(g.num_edges, g.n)
    while True:
        value, chosen, _ = closure(g, lam)
        if value <= 0 or not chosen:
            return 2 * lam
        cs = set(chosen)
        e_in = sum(1 for v in chosen for w in g.adj[v] if w in cs) // 2
        new = Fraction(e_in, len(chosen))
        if new <= lam:
            return 2 * lam
        lam = new


def mad_exact(g: Graph) -> Fraction:
    """Maximum over nonempty induced subgraphs of twice edges over vertices."""
    cached = g._cache.get("mad")
    if cached is None:
        cached = mad_brute(g) if g.n <= BRUTE_LIMIT else mad_flow(g)
        g._cache["mad"] = cached
    return cached
