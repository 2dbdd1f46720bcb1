"""
Simulated entries versus the lattice-point formula
--------------------------------------------------

The event simulator and the count over reachable cycle tuples are two
independent ways to get N_1(T); they agree exactly.
"""

import numpy as np

from cyclecount import enumerate_reachable_tuples, example_graph, n1_exact, n_x, simulate

g = example_graph("fig4")
D = enumerate_reachable_tuples(g)
print({k: len(v) for k, v in D.items()})

log = simulate(g, 80.0)
for T in np.linspace(10, 80, 8):
    print(f"T={T:5.1f}  simulator={n_x(log, 1, T):6d}  formula={n1_exact(g, D, T):6d}")
