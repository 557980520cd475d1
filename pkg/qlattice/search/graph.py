"""
Compatibility graphs over the subspace lattice.

Every subspace is represented by the bitmask of the vectors it contains
(vector codes are little-endian base-q numbers). Intersection dimensions,
containment and span dimensions then reduce to AND and popcount on Python
integers, which keeps graph construction cheap at desk scale.
"""

import itertools
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from ..exceptions import BudgetExceeded, ValidationError
from ..gfq import Field
from ..interfaces import Constraint
from ..logging_config import get_logger
from ..models import LatticeVertex
from ..qbinom import gaussian_binomial
from ..subspace import Family, Subspace, lattice

# Module-level logger
logger = get_logger("graph")

VERTEX_BUDGET = 400
LATTICE_BUDGET = 100_000


def point_mask(subspace: Subspace) -> int:
    """Bitmask with bit c set iff the vector with code c lies in the subspace."""
    f, n, k = subspace.field, subspace.n, subspace.k
    q = f.q
    coefficients = np.array(
        list(itertools.product(range(q), repeat=k)), dtype=np.int64
    ).reshape(q**k, k)
    basis = subspace.basis.to_array()
    vectors = np.zeros((q**k, n), dtype=np.int64)
    for j in range(k):
        scaled = f.mul_table[coefficients[:, j : j + 1], basis[j : j + 1, :]]
        vectors = f.add_table[vectors, scaled]
    codes = vectors.astype(np.int64) @ (q ** np.arange(n, dtype=np.int64))
    mask = 0
    for code in codes.tolist():
        mask |= 1 << code
    return mask


def lattice_vertices(field: Field, n: int) -> list[LatticeVertex]:
    """Every subspace of F_q^n with its point mask, in canonical order."""
    total = sum(gaussian_binomial(n, k, field.q) for k in range(n + 1))
    if total > LATTICE_BUDGET:
        raise BudgetExceeded(
            f"L(V) has {total} subspaces, above the lattice budget {LATTICE_BUDGET}"
        )
    return [LatticeVertex(s, point_mask(s)) for s in lattice(field, n)]


@dataclass
class CompatibilityGraph:
    """
    Admissible vertices and bitset adjacency for a set of constraints.

    Vertices are ordered by descending degree (ties by canonical subspace
    order); bit i of a mask refers to vertices[i]. A family has every
    constraint iff it is a clique.
    """

    field: Field
    n: int
    constraints: tuple[Constraint, ...]
    vertices: list[LatticeVertex]
    adjacency: list[int]

    @classmethod
    def build(
        cls,
        field: Field,
        n: int,
        constraints: Sequence[Constraint],
        vertex_budget: int = VERTEX_BUDGET,
    ) -> "CompatibilityGraph":
        """
        Raises:
            BudgetExceeded: If more than vertex_budget subspaces are admissible
        """
        admissible = [
            v
            for v in lattice_vertices(field, n)
            if all(c.admits(v) for c in constraints)
        ]
        if len(admissible) > vertex_budget:
            raise BudgetExceeded(
                f"{len(admissible)} admissible subspaces exceed the vertex budget {vertex_budget}"
            )

        size = len(admissible)
        raw = [0] * size
        for i in range(size):
            for j in range(i + 1, size):
                if all(c.compatible(admissible[i], admissible[j]) for c in constraints):
                    raw[i] |= 1 << j
                    raw[j] |= 1 << i

        order = sorted(
            range(size), key=lambda i: (-raw[i].bit_count(), admissible[i].subspace.key)
        )
        position = {old: new for new, old in enumerate(order)}
        adjacency = [0] * size
        for new, old in enumerate(order):
            neighbours = raw[old]
            while neighbours:
                low = neighbours & -neighbours
                adjacency[new] |= 1 << position[low.bit_length() - 1]
                neighbours ^= low

        names = ", ".join(c.name for c in constraints)
        edges = sum(a.bit_count() for a in adjacency) // 2
        logger.debug(f"Graph [{names}] over GF({field.q})^{n}: {size} vertices, {edges} edges")
        return cls(
            field=field,
            n=n,
            constraints=tuple(constraints),
            vertices=[admissible[i] for i in order],
            adjacency=adjacency,
        )

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def all_mask(self) -> int:
        return (1 << self.size) - 1

    def mask_where(self, keep: Callable[[LatticeVertex], bool]) -> int:
        mask = 0
        for i, vertex in enumerate(self.vertices):
            if keep(vertex):
                mask |= 1 << i
        return mask

    def layer_mask(self, k: int) -> int:
        return self.mask_where(lambda v: v.dim == k)

    def mask_of(self, family: Family) -> int:
        """
        Raises:
            ValidationError: If a member of the family is not a vertex
        """
        index = {v.subspace: i for i, v in enumerate(self.vertices)}
        mask = 0
        for member in family:
            if member not in index:
                raise ValidationError(f"{member} is not a vertex of this graph")
            mask |= 1 << index[member]
        return mask

    def family_of(self, mask: int) -> Family:
        members: list[Subspace] = []
        while mask:
            low = mask & -mask
            members.append(self.vertices[low.bit_length() - 1].subspace)
            mask ^= low
        return Family.of(self.field, self.n, members)

    def is_clique(self, mask: int) -> bool:
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            if rest & ~self.adjacency[low.bit_length() - 1]:
                return False
        return True

    def closure_masks(self) -> tuple[int, ...] | None:
        """
        Per-vertex masks of the vertices every maximal clique through that
        vertex must also contain, or None when the constraints are not all
        closed in the same direction.
        """
        directions = {c.closure for c in self.constraints}
        if len(directions) != 1 or None in directions:
            return None
        direction = directions.pop()
        masks: list[int] = []
        for i, v in enumerate(self.vertices):
            mask = 0
            for j, w in enumerate(self.vertices):
                if i == j:
                    continue
                inside = w.lies_in(v) if direction == "down" else v.lies_in(w)
                if inside:
                    mask |= 1 << j
            masks.append(mask)
        return tuple(masks)
