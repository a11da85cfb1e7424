"""Constructive codecs between graphs, 2-complexes and triangulated manifolds."""

__version__ = "0.1.0"
