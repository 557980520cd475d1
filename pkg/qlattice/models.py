"""
Core dataclasses for qlattice.

Defines lattice vertices, clique outcomes, search certificates and
verification reports with validation.
"""

from dataclasses import dataclass, field

from .exceptions import ValidationError
from .subspace import Family, Subspace

Verdict = bool | int | str


@dataclass(frozen=True)
class LatticeVertex:
    """A subspace together with the bitmask of the vectors it contains."""

    subspace: Subspace
    points: int

    @property
    def dim(self) -> int:
        return self.subspace.k

    def meet_dim(self, other: "LatticeVertex") -> int:
        """dim of the intersection, read off the shared point count q^dim."""
        count = (self.points & other.points).bit_count()
        q = self.subspace.field.q
        dim = 0
        while count > 1:
            count //= q
            dim += 1
        return dim

    def join_dim(self, other: "LatticeVertex") -> int:
        return self.dim + other.dim - self.meet_dim(other)

    def lies_in(self, other: "LatticeVertex") -> bool:
        return self.points & other.points == self.points


@dataclass(frozen=True)
class CliqueOutcome:
    """Result of a maximum-clique run over vertex bitmasks."""

    maximum: int
    cliques: list[int]
    nodes_explored: int
    complete: bool

    def __post_init__(self) -> None:
        """Validate clique outcome data."""
        if self.maximum < 0:
            raise ValidationError(f"maximum must be >= 0, got {self.maximum}")
        for clique in self.cliques:
            if clique.bit_count() != self.maximum:
                raise ValidationError(
                    f"clique of size {clique.bit_count()} reported with maximum {self.maximum}"
                )


@dataclass
class SearchCertificate:
    """Record of a completed extremal search."""

    problem: str
    parameters: dict[str, int]
    constraints: list[str]
    exclusion: str | None
    maximum: int
    witnesses: list[Family]
    nodes_explored: int
    complete: bool
    seed: int | None = None
    solver: str = "BranchAndBoundSolver"
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Validate certificate data."""
        if not self.problem:
            raise ValidationError("problem cannot be empty")
        if self.maximum < 0:
            raise ValidationError(f"maximum must be >= 0, got {self.maximum}")
        if self.nodes_explored < 0:
            raise ValidationError("nodes_explored cannot be negative")
        for witness in self.witnesses:
            if len(witness) != self.maximum:
                raise ValidationError(
                    f"witness of size {len(witness)} does not match maximum {self.maximum}"
                )


@dataclass
class Counterexample:
    """A tested configuration that violates the checked statement."""

    kind: str
    detail: str
    families: list[Family] = field(default_factory=list)


@dataclass
class VerificationReport:
    """Outcome of a brute-force verifier."""

    check: str
    parameters: dict[str, int]
    mode: str
    tested: int
    counterexamples: list[Counterexample] = field(default_factory=list)
    equality_cases: int = 0
    seed: int | None = None
    notes: dict[str, Verdict] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Validate report data."""
        if self.tested < 0:
            raise ValidationError("tested cannot be negative")
        if self.mode not in ("exhaustive", "sample", "closed-form"):
            raise ValidationError(f"unknown verification mode {self.mode!r}")

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_document(self) -> dict[str, object]:
        return {
            "check": self.check,
            "parameters": dict(self.parameters),
            "mode": self.mode,
            "tested": self.tested,
            "passed": self.passed,
            "equality_cases": self.equality_cases,
            "seed": self.seed,
            "notes": dict(self.notes),
            "counterexamples": [
                {
                    "kind": c.kind,
                    "detail": c.detail,
                    "families": [f.to_text() for f in c.families],
                }
                for c in self.counterexamples
            ],
        }
