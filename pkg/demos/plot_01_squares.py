"""
Squares of subcubic graphs
==========================

The square of a graph joins every pair of vertices at distance at most two.
For a subcubic graph each vertex has at most nine neighbours in the square,
and the Petersen graph is the one case where the square is complete.
"""

from itertools import combinations

from sqcolor import square
from sqcolor.coloring import uniform_lists
from sqcolor.testkit import chromatic_number_exact, exact_list_color, gen_named

# %%
# The Petersen graph: every pair of vertices is adjacent in the square.
p = gen_named("petersen")
sq = square(p)
print("Petersen square:", sq.n, "vertices,", sq.num_edges, "edges")
print("complete:", all(sq.has_edge(u, v) for u, v in combinations(range(sq.n), 2)))

# %%
# Two 8-vertex graphs whose squares are K8, so 7 colours never suffice,
# whatever the lists.
for name in ("figure1a", "figure1b"):
    s = square(gen_named(name))
    seven = exact_list_color(s, uniform_lists(8, 7))
    eight = exact_list_color(s, uniform_lists(8, 8))
    print(f"{name}: {s.num_edges} edges in the square, 7 colours: {seven}, 8 colours: {eight}")

# %%
# A sparse graph whose square still needs 7 colours: the prism with its
# triangle edges subdivided.
g = gen_named("prism-subdivided")
print("prism-subdivided:", g.n, "vertices, chromatic number of square =", chromatic_number_exact(square(g)))
