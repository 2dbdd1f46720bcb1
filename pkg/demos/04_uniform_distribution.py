"""
Points spread evenly over the graph
-----------------------------------

The share of moving points on a segment tends to the segment's share of
total graph length.
"""

from cyclecount import example_graph
from cyclecount.walks import count_points, count_segment

g = example_graph("fig4")
T = 400.0
total = count_points(g, T)
for e in g.edges:
    tau = e.length.value / 2
    share = count_segment(g, T, e.id, 0.0, tau) / total
    print(f"edge {e.id} ({e.tail}->{e.head}): share={share:.4f}  expected={tau / g.total_length:.4f}")
