"""
Eight colours for every subcubic graph except Petersen
======================================================

``solve8`` colours the square of any subcubic graph other than the Petersen
graph from lists of size 8.  It looks for a short cycle or low-degree
vertex, colours the rest recursively and finishes the local structure by
hand.  Every step can be written to a trace.
"""

import random

from sqcolor import Trace, solve8, verify_square_coloring
from sqcolor.errors import PetersenInput
from sqcolor.testkit import gen_named, gen_random_cubic, random_lists
from sqcolor.theorem1 import detect_structure

rng = random.Random(0)

# %%
# The structure found first on a few fixtures.
for name in ("petersen-minus-edge", "heawood", "mcgee", "figure1b"):
    print(f"{name:20s}", detect_structure(gen_named(name)).kind)

# %%
# Colour Petersen minus an edge from random 8-lists drawn from 24 colours,
# and look at the first few trace lines.
g = gen_named("petersen-minus-edge")
L = random_lists(g.n, 8, 24, rng)
tr = Trace()
col = solve8(g, L, tr)
print("colouring:", col, "valid:", verify_square_coloring(g, L, col) is None)
print("\n".join(tr.lines[:5]))

# %%
# The Petersen graph itself is refused.
try:
    solve8(gen_named("petersen"), L)
except PetersenInput as exc:
    print("refused:", exc)

# %%
# A batch of random cubic graphs.
ok = 0
for _ in range(100):
    h = gen_random_cubic(rng.randrange(10, 200, 2), rng.randrange(1 << 30))
    L = random_lists(h.n, 8, 16, rng)
    ok += verify_square_coloring(h, L, solve8(h, L)) is None
print(ok, "of 100 random cubic graphs coloured")
