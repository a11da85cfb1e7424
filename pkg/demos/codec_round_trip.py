"""Colour a random stellated 2-sphere, encode it, and decode it again."""

import numpy as np

from homsphere.colorcodec import ColoredComplex, colored_isomorphic, decode, encode
from homsphere.complex import random_stellated_sphere
from homsphere.dualcodec import graph_to_sphere, sphere_to_graph

rng = np.random.default_rng(7)
sphere = random_stellated_sphere(2, 4, 7)
colors = {f: int(rng.integers(1, 3)) for f in sphere.facets}
x = ColoredComplex(sphere, colors)

y = encode(x, 2)
back = decode(y, 2, 2)
print(f"colour codec: {len(sphere)} facets -> {len(y)} facets, round trip ok: {colored_isomorphic(x, back)}")

g = sphere_to_graph(sphere)
rebuilt = graph_to_sphere(g, 2)
print(f"dual codec: graph with {g.n} vertices, rebuilt {len(rebuilt)} facets")
