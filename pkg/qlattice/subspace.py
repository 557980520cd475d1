"""
Canonical subspaces of F_q^n and the lattice operations on them.

A Subspace is stored as the reduced row echelon form of any basis, so equal
subspaces are equal values. A Family is a sorted, deduplicated tuple of
subspaces over a common ambient space and has a plain-text interchange format.
"""

import itertools
import re
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

from .exceptions import (
    AmbientMismatch,
    BudgetExceeded,
    DimensionOrderViolation,
    EmptyFamily,
    EntryOutOfRange,
    FamilyFormatError,
    MixedDimensions,
    TopLayer,
    ValidationError,
)
from .gfq import Field, Matrix, field_new, reduce_rows
from .logging_config import get_logger
from .qbinom import gaussian_binomial

# Module-level logger
logger = get_logger("subspace")

ENUMERATION_BUDGET = 10**7

_HEADER = re.compile(r"^q=(\d+)\s+n=(\d+)$")
_DIMENSION = re.compile(r"^k=(\d+)$")


@dataclass(frozen=True)
class Subspace:
    """Subspace of F_q^n given by its RREF basis (k rows, n columns)."""

    field: Field
    n: int
    basis: Matrix

    def __post_init__(self) -> None:
        """Validate shape."""
        if self.basis.cols != self.n:
            raise ValidationError(
                f"basis has {self.basis.cols} columns, ambient dimension is {self.n}"
            )
        if self.basis.rows > self.n:
            raise ValidationError(f"{self.basis.rows} basis rows exceed n = {self.n}")

    @classmethod
    def from_vectors(
        cls, field: Field, n: int, vectors: Iterable[Sequence[int]]
    ) -> "Subspace":
        """Span of the given vectors in canonical form."""
        rows = [list(v) for v in vectors]
        for row in rows:
            if len(row) != n:
                raise ValidationError(f"vector {row} does not have length {n}")
            field.check_entries(row)
        reduced, _ = reduce_rows(field, rows, n)
        return cls(field, n, Matrix.from_rows(reduced, n))

    @property
    def k(self) -> int:
        return self.basis.rows

    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.k, self.basis.entries)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(
            next(c for c, x in enumerate(row) if x) for row in self.basis.to_rows()
        )

    def rows(self) -> list[list[int]]:
        return self.basis.to_rows()

    def __str__(self) -> str:
        sep = "" if self.field.q <= 9 else ","
        body = " ".join(sep.join(str(x) for x in row) for row in self.rows())
        return f"<{body}>" if body else "<0>"


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.field != b.field or a.n != b.n:
        raise AmbientMismatch(
            f"cannot combine subspaces of {a.field}^{a.n} and {b.field}^{b.n}"
        )


def zero_subspace(field: Field, n: int) -> Subspace:
    return Subspace(field, n, Matrix(0, n, ()))


def full_space(field: Field, n: int) -> Subspace:
    return unit_span(field, n, range(n))


def unit_span(field: Field, n: int, indices: Iterable[int]) -> Subspace:
    """Span of the unit vectors e_i for the given coordinate indices."""
    vectors = [[1 if c == i else 0 for c in range(n)] for i in sorted(set(indices))]
    return Subspace.from_vectors(field, n, vectors)


def span(a: Subspace, b: Subspace) -> Subspace:
    """Canonical A + B."""
    _check_ambient(a, b)
    return Subspace.from_vectors(a.field, a.n, a.rows() + b.rows())


def span_dim(a: Subspace, b: Subspace) -> int:
    """dim(A + B) without building the canonical basis."""
    _check_ambient(a, b)
    _, pivots = reduce_rows(a.field, a.rows() + b.rows(), a.n)
    return len(pivots)


def intersection_dim(a: Subspace, b: Subspace) -> int:
    return a.k + b.k - span_dim(a, b)


def orth_complement(a: Subspace) -> Subspace:
    """A-perp under the standard dot product: the null space of the basis."""
    field, n = a.field, a.n
    pivot_set = set(a.pivots)
    rows = a.rows()
    vectors: list[list[int]] = []
    for free in (c for c in range(n) if c not in pivot_set):
        vector = [0] * n
        vector[free] = 1
        for row, pivot in zip(rows, a.pivots):
            vector[pivot] = field.neg(row[free])
        vectors.append(vector)
    return Subspace.from_vectors(field, n, vectors)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Canonical A cap B, computed as (A-perp + B-perp)-perp."""
    _check_ambient(a, b)
    return orth_complement(span(orth_complement(a), orth_complement(b)))


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff A <= B: every basis row of A reduces to zero against B."""
    _check_ambient(a, b)
    if a.k > b.k:
        return False
    add, mul, neg = a.field.add_rows, a.field.mul_rows, a.field.neg_row
    b_rows = b.rows()
    for row in a.rows():
        vector = list(row)
        for b_row, pivot in zip(b_rows, b.pivots):
            factor = vector[pivot]
            if factor:
                times = mul[neg[factor]]
                vector = [add[x][times[y]] for x, y in zip(vector, b_row)]
        if any(vector):
            return False
    return True


def _check_budget(n: int, k: int, q: int) -> None:
    if not 0 <= k <= n:
        raise ValidationError(f"need 0 <= k <= n, got k={k}, n={n}")
    count = gaussian_binomial(n, k, q)
    if count > ENUMERATION_BUDGET:
        raise BudgetExceeded(
            f"[{n},{k}]_{q} = {count} subspaces exceeds the enumeration budget {ENUMERATION_BUDGET}"
        )


def _generate(field: Field, n: int, k: int) -> Iterator[Subspace]:
    q = field.q
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free_slots = [
            i * n + c
            for i, p in enumerate(pivots)
            for c in range(p + 1, n)
            if c not in pivot_set
        ]
        template = [0] * (k * n)
        for i, p in enumerate(pivots):
            template[i * n + p] = 1
        for values in itertools.product(range(q), repeat=len(free_slots)):
            entries = list(template)
            for slot, value in zip(free_slots, values):
                entries[slot] = value
            yield Subspace(field, n, Matrix(k, n, tuple(entries)))


def enumerate_subspaces(field: Field, n: int, k: int) -> Iterator[Subspace]:
    """
    Every k-subspace of F_q^n exactly once, in canonical order.

    Order is lexicographic over pivot-column sets, then over the free entries
    read row by row as base-q digits.

    Raises:
        BudgetExceeded: If [n, k]_q exceeds 10^7
    """
    _check_budget(n, k, field.q)
    return _generate(field, n, k)


def lattice(field: Field, n: int, max_dim: int | None = None) -> list[Subspace]:
    """All subspaces of dimension <= max_dim (default n), layer by layer."""
    top = n if max_dim is None else min(max_dim, n)
    return [s for k in range(top + 1) for s in enumerate_subspaces(field, n, k)]


def _combine(field: Field, coefficients: Sequence[int], rows: Sequence[Sequence[int]]) -> list[int]:
    add, mul = field.add_rows, field.mul_rows
    vector = [0] * (len(rows[0]) if rows else 0)
    for c, row in zip(coefficients, rows):
        if c:
            times = mul[c]
            vector = [add[x][times[y]] for x, y in zip(vector, row)]
    return vector


def subspaces_of(a: Subspace, u: int) -> Iterator[Subspace]:
    """All u-dimensional subspaces of A."""
    rows = a.rows()
    for coefficients in enumerate_subspaces(a.field, a.k, u):
        yield Subspace.from_vectors(
            a.field, a.n, (_combine(a.field, c, rows) for c in coefficients.rows())
        )


@dataclass(frozen=True)
class Family:
    """Sorted, deduplicated family of subspaces of one ambient space."""

    field: Field
    n: int
    members: tuple[Subspace, ...]

    def __post_init__(self) -> None:
        """Validate ambient space and canonical order."""
        for member in self.members:
            if member.field != self.field or member.n != self.n:
                raise AmbientMismatch(
                    f"member {member} is not a subspace of {self.field}^{self.n}"
                )
        keys = [m.key for m in self.members]
        if any(x >= y for x, y in zip(keys, keys[1:])):
            raise ValidationError("members must be strictly sorted by (k, basis)")

    @classmethod
    def of(cls, field: Field, n: int, members: Iterable[Subspace]) -> "Family":
        unique = {m.key: m for m in members}
        return cls(field, n, tuple(unique[key] for key in sorted(unique)))

    @classmethod
    def empty(cls, field: Field, n: int) -> "Family":
        return cls(field, n, ())

    @cached_property
    def member_set(self) -> frozenset[Subspace]:
        return frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.members)

    def __contains__(self, item: object) -> bool:
        return item in self.member_set

    def issubset(self, other: "Family") -> bool:
        return self.member_set <= other.member_set

    def union(self, other: "Family") -> "Family":
        if other.field != self.field or other.n != self.n:
            raise AmbientMismatch("families live in different ambient spaces")
        return Family.of(self.field, self.n, self.members + other.members)

    def to_text(self) -> str:
        """Serialize in the Family text format."""
        sep = "" if self.field.q <= 9 else ","
        lines = [f"q={self.field.q} n={self.n}"]
        for member in self.members:
            lines.append(f"k={member.k}")
            lines.extend(sep.join(str(x) for x in row) for row in member.rows())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Family":
        """
        Parse the Family text format.

        Lines starting with '#' and blank lines are ignored. Member bases need
        not be canonical; they are reduced on the way in.

        Raises:
            FamilyFormatError: If the document is malformed
        """
        lines = [
            line.strip()
            for line in text.splitlines()
            if line.strip() and not line.strip().startswith("#")
        ]
        if not lines:
            raise FamilyFormatError("empty family document")
        header = _HEADER.match(lines[0])
        if header is None:
            raise FamilyFormatError(f"bad header line {lines[0]!r}, expected 'q=<q> n=<n>'")
        q, n = int(header.group(1)), int(header.group(2))
        field = field_new(q)

        members: list[Subspace] = []
        position = 1
        while position < len(lines):
            match = _DIMENSION.match(lines[position])
            if match is None:
                raise FamilyFormatError(f"expected 'k=<k>', got {lines[position]!r}")
            k = int(match.group(1))
            rows = lines[position + 1 : position + 1 + k]
            if len(rows) != k:
                raise FamilyFormatError(f"member with k={k} has only {len(rows)} rows")
            vectors = [_parse_row(row, q, n) for row in rows]
            try:
                member = Subspace.from_vectors(field, n, vectors)
            except EntryOutOfRange as e:
                raise FamilyFormatError(str(e)) from e
            if member.k != k:
                raise FamilyFormatError(f"rows of a k={k} member have rank {member.k}")
            members.append(member)
            position += 1 + k

        logger.debug(f"Parsed family of {len(members)} members in GF({q})^{n}")
        return cls.of(field, n, members)


def _parse_row(row: str, q: int, n: int) -> list[int]:
    try:
        values = [int(x) for x in (row if q <= 9 else row.split(","))]
    except ValueError as e:
        raise FamilyFormatError(f"bad row {row!r}: {e}") from e
    if len(values) != n:
        raise FamilyFormatError(f"row {row!r} does not have {n} entries")
    return values


def layer_family(field: Field, n: int, k: int) -> Family:
    """The full layer [V, k] as a Family."""
    return Family.of(field, n, enumerate_subspaces(field, n, k))


def shadow(h: Family, u: int) -> Family:
    """
    The u-shadow: all u-spaces below some member of H.

    Raises:
        DimensionOrderViolation: If a member has dimension < u
    """
    for member in h:
        if member.k < u:
            raise DimensionOrderViolation(
                f"member {member} has dimension {member.k} < u = {u}"
            )
    below = (g for member in h for g in subspaces_of(member, u))
    return Family.of(h.field, h.n, below)


def shade(h: Family) -> Family:
    """
    All (k+1)-spaces above some member of a k-uniform family.

    Raises:
        MixedDimensions: If members differ in dimension
        TopLayer: If the members are the full space
    """
    dims = {member.k for member in h}
    if len(dims) > 1:
        raise MixedDimensions(f"shade needs a uniform family, got dimensions {sorted(dims)}")
    if dims and dims.pop() >= h.n:
        raise TopLayer("the full space has nothing above it")
    lines = list(enumerate_subspaces(h.field, h.n, 1))
    above = (
        span(member, line)
        for member in h
        for line in lines
        if not contains(line, member)
    )
    return Family.of(h.field, h.n, above)


def dual(f: Family) -> Family:
    """Member-wise orthogonal complement."""
    return Family.of(f.field, f.n, (orth_complement(member) for member in f))


def min_dim(f: Family) -> int:
    if not f.members:
        raise EmptyFamily("min_dim of an empty family")
    return min(member.k for member in f)


def max_dim(f: Family) -> int:
    if not f.members:
        raise EmptyFamily("max_dim of an empty family")
    return max(member.k for member in f)
