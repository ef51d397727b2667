"""Cliques and intersecting families in derangement graphs of permutation groups.

Modules: ``perm`` (permutations, groups, blocks, wreath products), ``derangement``
(the derangement graph, cliques, cocliques), ``hypergraph`` ((a,b)-hypergraph
colouring), ``covering`` (covering subgroups), ``conjclasses`` (class counts),
``search`` and ``catalog`` (exceptional-group search and the shipped group
files) and ``cli``.
"""

__version__ = "0.1.0"
