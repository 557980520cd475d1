"""
Constraint implementations.

Provides implementations of the Constraint interface used to build
compatibility graphs for extremal searches.

Available implementations:
- UnionConstraint: s-union families (dim(F + F') <= s), closed downwards
- AntichainConstraint: no member below another
- IntersectingConstraint: t-intersecting families (dim(F cap F') >= t), closed upwards
"""

from .antichain import AntichainConstraint
from .intersecting import IntersectingConstraint
from .union import UnionConstraint

__all__ = ["AntichainConstraint", "IntersectingConstraint", "UnionConstraint"]
