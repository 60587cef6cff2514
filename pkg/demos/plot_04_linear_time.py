"""
Running time of the seven-colour solver
=======================================

Decomposition keeps a queue of candidate configurations and rescans only
near removed vertices, so the whole solve is linear in the graph size.
Fit a line to log time against log size: the slope should be close to 1.
"""

import random
import time

import numpy as np

from sqcolor import discharging as D
from sqcolor.testkit import gen_random_cubic, random_lists, subdivide

rng = random.Random(2)
sizes, times = [], []
for base in (1000, 2000, 4000, 8000, 16000):
    g = subdivide(gen_random_cubic(base, base), 1)
    L = random_lists(g.n, 7, 14, rng)
    t0 = time.perf_counter()
    D.solve7(g, L)
    sizes.append(g.n)
    times.append(time.perf_counter() - t0)
    print(f"n = {g.n:6d}  {times[-1]:.3f} s")

# %%
slope = np.polyfit(np.log(sizes), np.log(times), 1)[0]
print(f"log-log slope: {slope:.2f}")
