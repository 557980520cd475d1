"""
Seeded random families for falsification runs.
"""

import random

from ..subspace import Family
from .graph import CompatibilityGraph


def random_clique_family(
    graph: CompatibilityGraph, rng: random.Random, keep: float = 0.7
) -> Family:
    """
    Greedy random clique: visit the vertices in shuffled order and take each
    compatible one with probability keep.

    Over a graph built from UnionConstraint(s) the result is a random s-union
    family; the empty family is possible.
    """
    order = list(range(graph.size))
    rng.shuffle(order)
    chosen = 0
    allowed = graph.all_mask
    for v in order:
        if not allowed >> v & 1 or rng.random() >= keep:
            continue
        chosen |= 1 << v
        allowed &= graph.adjacency[v]
    return graph.family_of(chosen)


def random_subset(count: int, rng: random.Random, min_size: int = 1) -> list[int]:
    """A uniformly sized random subset of range(count), sorted."""
    size = rng.randint(min_size, count)
    return sorted(rng.sample(range(count), size))
