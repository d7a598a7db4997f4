"""Bundled demonstration inputs.

The additive pair is a 3-path with both roots at one end together with a
4-vertex tree whose roots are the two ends of its central edge; its c-comb
product has two 12-vertex components. The multiplicative pair is the same
shape with loops at the roots that feed alternating walk counts (a loop on
the path's root and a loop on the tree's first root).
"""

from __future__ import annotations

from .graphs import birooted

__all__ = [
    "additive_demo_pair",
    "multiplicative_demo_pair",
]


def additive_demo_pair() -> tuple:
    g1 = birooted(3, [(0, 1), (1, 2)], 0, 0)
    g2 = birooted(4, [(0, 1), (1, 2), (1, 3)], 0, 1)
    return g1, g2


def multiplicative_demo_pair() -> tuple:
    g1 = birooted(3, [(0, 0), (0, 1), (1, 2)], 0, 0)
    g2 = birooted(4, [(0, 0), (0, 1), (1, 2), (1, 3)], 0, 1)
    return g1, g2
