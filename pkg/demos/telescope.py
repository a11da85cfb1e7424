"""Build a two-level telescope over K4 and collapse it."""

from homsphere.graphkit import complete_graph
from homsphere.telescope import build_hierarchy, collapse, expansion_report, telescope_complex

h = build_hierarchy(complete_graph(4), levels=2, trials=50, seed=1)
t = telescope_complex(h)
rep = collapse(t.complex, mode="scheduled", telescope=t)
print(f"telescope: {len(t.complex)} facets, scheduled collapse ok: {rep.success}")
for n, level in enumerate(expansion_report(h)):
    print(f"level {n}: cellular lambda2={level.cellular.lambda2:.4f} max degree={level.cellular.max_degree}")
