"""
Antichain constraint.
"""

from typing_extensions import override

from ..families import is_antichain
from ..interfaces import Constraint
from ..models import LatticeVertex
from ..subspace import Family


class AntichainConstraint(Constraint):
    """No member lies inside another."""

    @property
    @override
    def name(self) -> str:
        return "antichain"

    @override
    def admits(self, vertex: LatticeVertex) -> bool:
        return True

    @override
    def compatible(self, a: LatticeVertex, b: LatticeVertex) -> bool:
        return not (a.lies_in(b) or b.lies_in(a))

    @override
    def holds(self, family: Family) -> bool:
        return is_antichain(family)
