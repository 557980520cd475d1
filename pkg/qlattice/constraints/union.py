"""
s-union constraint.

Pairs of members must span at most s dimensions; since F + F = F this also
caps the dimension of every single member.
"""

from typing_extensions import override

from ..exceptions import ConfigurationError
from ..families import is_s_union
from ..interfaces import Closure, Constraint
from ..models import LatticeVertex
from ..subspace import Family


class UnionConstraint(Constraint):
    """dim(F + F') <= s for all members."""

    closure: Closure | None = "down"

    def __init__(self, s: int):
        if s < 0:
            raise ConfigurationError(f"s must be >= 0, got {s}")
        self.s: int = s

    @property
    @override
    def name(self) -> str:
        return f"{self.s}-union"

    @override
    def admits(self, vertex: LatticeVertex) -> bool:
        return vertex.dim <= self.s

    @override
    def compatible(self, a: LatticeVertex, b: LatticeVertex) -> bool:
        return a.join_dim(b) <= self.s

    @override
    def holds(self, family: Family) -> bool:
        return is_s_union(family, self.s)
