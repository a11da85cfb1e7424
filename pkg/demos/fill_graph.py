"""Fill the fundamental cycles of a cubic graph with disks and read the graph back."""

from homsphere.complex import betti
from homsphere.diskfill import DiskFillParams, fill_cycles, recover_graph
from homsphere.graphkit import edge_multiplicity, fundamental_cycle_basis, random_regular_graph

g = random_regular_graph(3, 12, 3)
cycles = fundamental_cycle_basis(g)
k = max(edge_multiplicity(g, cycles).values())
params = DiskFillParams(p=2, deg_max=3, k=k)
filled = fill_cycles(g, cycles, params)

print(f"graph: {g.n} vertices, {g.m} edges, {len(cycles)} cycles, k={k}, T={params.T}")
print(f"filled complex: {len(filled.complex)} triangles, betti over GF(2) = {tuple(betti(filled.complex, 2))}")
print("recovered graph matches:", recover_graph(filled.complex, params.T).edges == g.edges)
