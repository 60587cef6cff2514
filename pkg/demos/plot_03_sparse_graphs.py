"""
Sparse graphs: seven and six colours
====================================

When the maximum average degree (mad) is below 14/5, lists of size 7 are
enough.  With girth at least 7 and mad below 18/7, lists of size 6 are.
Both solvers peel off small reducible configurations until nothing is
left, then put them back in reverse order.
"""

import random
from collections import Counter
from fractions import Fraction

from sqcolor import discharging as D
from sqcolor.coloring import verify_square_coloring
from sqcolor.density import mad_exact
from sqcolor.graph import from_edge_list
from sqcolor.testkit import gen_cubic_min_girth, gen_named, gen_random_cubic, random_lists, subdivide

rng = random.Random(1)

# %%
# mad is computed exactly, as a fraction.
for name in ("petersen", "petersen-minus-edge", "cycle(9)"):
    print(f"{name:20s} mad = {mad_exact(gen_named(name))}")

# %%
# Decompose a once-subdivided cubic graph and count the configuration kinds.
g = subdivide(gen_random_cubic(40, 3), 1)
dt = D.decompose(g, D.SEVEN)
print("mad =", mad_exact(g), "removed:", Counter(c.kind for c in dt.removed))
print("queue insertions:", dt.configs_added_to_B, "for", g.n, "vertices")
L = random_lists(g.n, 7, 14, rng)
print("7-list colouring valid:", verify_square_coloring(g, L, D.rebuild(g, dt, L)) is None)

# %%
# Six colours on a twice-subdivided graph.
g = subdivide(gen_random_cubic(30, 4), 2)
L = random_lists(g.n, 6, 12, rng)
col, dt = D.solve6(g, L, return_trace=True)
print("6-list colouring valid:", verify_square_coloring(g, L, col) is None)
print("kinds:", Counter(c.kind for c in dt.removed))

# %%
# Discharging: a graph with no configuration must be dense.  A girth-7 cubic
# graph keeps charge 3 everywhere.
ch, low = D.discharge_check_6(gen_cubic_min_girth(60, 1, 7))
print("girth 7 cubic: minimum charge", low)

# %%
# The seven-colour rule counts 3-vertices at distance exactly two, so a
# 2-vertex on a triangle collects less than 14/5 even though no
# configuration is present.
h = gen_cubic_min_girth(20, 3, 5)
x, y = h.edges()[0]
n = h.n
edges = [e for e in h.edges() if e != (x, y)] + [(x, n + 1), (y, n + 2), (n + 1, n + 2), (n, n + 1), (n, n + 2)]
t = from_edge_list(edges)
ch, low = D.discharge_check_7(t)
print("configuration:", D.find_7_reducible(t), "charge of the 2-vertex:", ch[n], "<", Fraction(14, 5))
