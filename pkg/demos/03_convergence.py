"""
Convergence of N(T) / T^(beta-1)
--------------------------------

Large horizons are out of reach for the event simulator, so the counts
come from the lattice counter in ``cyclecount.walks``.  Plotting needs
matplotlib.
"""

import matplotlib.pyplot as plt
import numpy as np

from cyclecount import enumerate_complete_tuples, example_graph, leading_coefficients
from cyclecount.walks import count_points

g = example_graph("fig4")
limit = leading_coefficients(g, enumerate_complete_tuples(g)).n_leading

T = np.geomspace(20, 500, 10)
ratio = count_points(g, T) / T ** (g.beta - 1)

plt.semilogx(T, ratio, "o-", label="N(T) / T^4")
plt.axhline(limit, color="k", ls="--", label="leading coefficient")
plt.xlabel("T")
plt.legend()
plt.show()
