"""
t-intersecting constraint, the orthogonal dual of the union constraint.
"""

from typing_extensions import override

from ..exceptions import ConfigurationError
from ..families import is_t_intersecting
from ..interfaces import Closure, Constraint
from ..models import LatticeVertex
from ..subspace import Family


class IntersectingConstraint(Constraint):
    """dim(F cap F') >= t for all members."""

    closure: Closure | None = "up"

    def __init__(self, t: int):
        if t < 0:
            raise ConfigurationError(f"t must be >= 0, got {t}")
        self.t: int = t

    @property
    @override
    def name(self) -> str:
        return f"{self.t}-intersecting"

    @override
    def admits(self, vertex: LatticeVertex) -> bool:
        return vertex.dim >= self.t

    @override
    def compatible(self, a: LatticeVertex, b: LatticeVertex) -> bool:
        return a.meet_dim(b) >= self.t

    @override
    def holds(self, family: Family) -> bool:
        return is_t_intersecting(family, self.t)
