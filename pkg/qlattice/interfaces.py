"""
Abstract base classes defining the pluggable parts of the search layer.

Constraints describe a pairwise family property; solvers find maximum cliques
in the compatibility graph the constraints induce; stores persist certificates.
"""

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Literal

from typing_extensions import TypedDict

from .models import CliqueOutcome, LatticeVertex, SearchCertificate
from .subspace import Family

if TYPE_CHECKING:
    from .search.graph import CompatibilityGraph

Closure = Literal["down", "up"]


class CertificateDocument(TypedDict):
    """TypedDict for the JSON form of a SearchCertificate."""

    problem: str
    parameters: dict[str, int]
    constraints: list[str]
    exclusion: str | None
    maximum: int
    complete: bool
    nodes_explored: int
    seed: int | None
    solver: str
    verdicts: dict[str, bool | int | str]
    witnesses: list[str]  # Family text format


class Constraint(ABC):
    """A pairwise property of families of subspaces."""

    # Direction in which every maximal family with this property is closed.
    closure: Closure | None = None

    @property
    @abstractmethod
    def name(self) -> str:
        """Short label recorded in certificates."""
        pass

    @abstractmethod
    def admits(self, vertex: LatticeVertex) -> bool:
        """Whether the single-member family {vertex} has the property."""
        pass

    @abstractmethod
    def compatible(self, a: LatticeVertex, b: LatticeVertex) -> bool:
        """Whether two distinct admissible vertices may appear together."""
        pass

    @abstractmethod
    def holds(self, family: Family) -> bool:
        """Check the property with the literal predicates (independent path)."""
        pass


class CliqueSolver(ABC):
    """Interface for maximum-clique solvers over a compatibility graph."""

    @abstractmethod
    def solve(
        self,
        graph: "CompatibilityGraph",
        exclusions: tuple[int, ...] = (),
        closure: tuple[int, ...] | None = None,
    ) -> CliqueOutcome:
        """
        Find the maximum feasible clique(s).

        Args:
            graph: Compatibility graph over admissible vertices
            exclusions: Vertex bitmasks; a clique is feasible iff it has a
                vertex outside every one of them
            closure: Optional per-vertex bitmasks of vertices forced in with it

        Returns:
            CliqueOutcome with vertex-bitmask cliques
        """
        pass


class CertificateStore(ABC):
    """Interface for persisting search certificates."""

    @abstractmethod
    def save(self, certificate: SearchCertificate) -> None:
        """Persist a certificate as the latest result and append it to history."""
        pass

    @abstractmethod
    def load(self) -> SearchCertificate | None:
        """Load the latest certificate, or None if nothing valid is stored."""
        pass
