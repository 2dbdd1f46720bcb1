"""
Leading coefficient of the Fig. 4 style graph
---------------------------------------------

Four vertices, eight edges with square roots of primes as lengths.
We enumerate the complete cycle tuples and evaluate the leading terms of
N_1(T) and N(T).
"""

from cyclecount import enumerate_complete_tuples, example_graph, leading_coefficients

g = example_graph("fig4")
print("beta =", g.beta)

tuples = enumerate_complete_tuples(g)
for d in tuples:
    print([c.vertices for c in d])

rep = leading_coefficients(g, tuples)
print("a1        =", rep.a1)
print("n_leading =", rep.n_leading)
