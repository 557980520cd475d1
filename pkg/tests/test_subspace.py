"""
Tests for canonical subspaces, enumeration and the Family format.
"""

import pytest

from qlattice.exceptions import (
    AmbientMismatch,
    BudgetExceeded,
    DimensionOrderViolation,
    EmptyFamily,
    FamilyFormatError,
    MixedDimensions,
    TopLayer,
    ValidationError,
)
from qlattice.gfq import field_new
from qlattice.qbinom import gaussian_binomial
from qlattice.subspace import (
    Family,
    Subspace,
    contains,
    dual,
    enumerate_subspaces,
    full_space,
    intersect,
    intersection_dim,
    lattice,
    layer_family,
    max_dim,
    min_dim,
    orth_complement,
    shade,
    shadow,
    span,
    span_dim,
    subspaces_of,
    unit_span,
    zero_subspace,
)

GF2 = field_new(2)
GF3 = field_new(3)


class TestSubspace:
    """Canonical form and lattice operations."""

    def test_equal_spans_are_equal_values(self) -> None:
        """Two bases of the same plane give the same Subspace."""
        a = Subspace.from_vectors(GF2, 3, [[1, 0, 0], [0, 1, 0]])
        b = Subspace.from_vectors(GF2, 3, [[1, 1, 0], [0, 1, 0]])
        assert a == b
        assert hash(a) == hash(b)
        assert a.k == 2
        assert a.pivots == (0, 1)

    def test_string_form(self) -> None:
        """Subspaces print their RREF rows."""
        assert str(unit_span(GF2, 3, [0, 1])) == "<100 010>"
        assert str(zero_subspace(GF2, 3)) == "<0>"

    def test_vector_length_is_checked(self) -> None:
        """Vectors must have n coordinates."""
        with pytest.raises(ValidationError):
            Subspace.from_vectors(GF2, 3, [[1, 0]])

    def test_span_and_intersection_dimensions(self) -> None:
        """dim(A+B) + dim(A cap B) = dim A + dim B."""
        # Arrange
        a = unit_span(GF3, 4, [0, 1])
        b = Subspace.from_vectors(GF3, 4, [[0, 1, 0, 0], [0, 0, 1, 2]])

        # Act
        joined = span(a, b)
        met = intersect(a, b)

        # Assert
        assert span_dim(a, b) == joined.k == 3
        assert intersection_dim(a, b) == met.k == 1
        assert met == unit_span(GF3, 4, [1])
        assert contains(met, a) and contains(met, b)
        assert contains(a, joined) and contains(b, joined)

    def test_containment(self) -> None:
        """contains(a, b) means a is a subspace of b."""
        line = unit_span(GF2, 3, [0])
        plane = unit_span(GF2, 3, [0, 1])
        assert contains(line, plane)
        assert not contains(plane, line)
        assert contains(zero_subspace(GF2, 3), line)
        assert contains(plane, full_space(GF2, 3))
        assert not contains(unit_span(GF2, 3, [2]), plane)

    def test_orthogonal_complement(self) -> None:
        """A-perp has complementary dimension and is orthogonal to A."""
        a = Subspace.from_vectors(GF3, 4, [[1, 2, 0, 1]])
        perp = orth_complement(a)
        assert perp.k == 3
        for row in perp.rows():
            assert sum(x * y for x, y in zip(row, a.rows()[0])) % 3 == 0
        assert orth_complement(perp) == a

    def test_ambient_mismatch(self) -> None:
        """Subspaces of different spaces do not combine."""
        with pytest.raises(AmbientMismatch):
            span(unit_span(GF2, 3, [0]), unit_span(GF2, 4, [0]))
        with pytest.raises(AmbientMismatch):
            span(unit_span(GF2, 3, [0]), unit_span(GF3, 3, [0]))

    def test_subspaces_of_a_plane(self) -> None:
        """A plane over GF(3) holds four lines, all inside it."""
        plane = unit_span(GF3, 4, [1, 3])
        lines = list(subspaces_of(plane, 1))
        assert len(set(lines)) == 4
        assert all(contains(line, plane) for line in lines)

    @pytest.mark.parametrize("q", [2, 3])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_modular_law_and_complements_on_every_pair(self, n: int, q: int) -> None:
        """Dimension formula and (A+B)-perp = A-perp cap B-perp for all pairs."""
        field = field_new(q)
        spaces = lattice(field, n)
        for a in spaces:
            for b in spaces:
                joined = span(a, b)
                met = intersect(a, b)
                assert joined.k + met.k == a.k + b.k, f"{a}, {b}"
                assert contains(met, a) and contains(met, b) and contains(a, joined)
                assert orth_complement(joined) == intersect(
                    orth_complement(a), orth_complement(b)
                ), f"{a}, {b}"

    def test_self_orthogonal_line(self) -> None:
        """Over GF(2) the line <11> is its own complement."""
        line = Subspace.from_vectors(GF2, 2, [[1, 1]])
        assert orth_complement(line) == line

    def test_zero_rows_span_the_zero_subspace(self) -> None:
        """A non-empty all-zero basis reduces away."""
        assert Subspace.from_vectors(GF3, 3, [[0, 0, 0], [0, 0, 0]]) == zero_subspace(GF3, 3)


class TestEnumeration:
    """Exhaustive enumeration of layers."""

    @pytest.mark.parametrize(
        ("q", "n", "k"),
        [(2, 3, 1), (2, 4, 2), (2, 5, 3), (3, 3, 1), (3, 4, 2), (4, 3, 2), (5, 3, 1)],
    )
    def test_counts_match_gaussian_binomial(self, q: int, n: int, k: int) -> None:
        """Every k-space appears exactly once."""
        field = field_new(q)
        members = list(enumerate_subspaces(field, n, k))
        assert len(members) == gaussian_binomial(n, k, q)
        assert len(set(members)) == len(members), "enumeration repeated a subspace"
        assert all(m.k == k for m in members)

    def test_order_is_deterministic(self) -> None:
        """Two enumerations agree element by element."""
        first = list(enumerate_subspaces(GF3, 3, 2))
        second = list(enumerate_subspaces(GF3, 3, 2))
        assert first == second

    def test_budget_is_checked_eagerly(self) -> None:
        """An oversized layer raises before yielding anything."""
        with pytest.raises(BudgetExceeded):
            enumerate_subspaces(GF2, 12, 6)

    def test_lattice_counts_all_layers(self) -> None:
        """L(GF(2)^3) has 1 + 7 + 7 + 1 members."""
        assert len(lattice(GF2, 3)) == 16
        assert len(lattice(GF2, 3, max_dim=1)) == 8


class TestFamily:
    """Family invariants, text format and derived families."""

    def test_text_format(self) -> None:
        """One line, written in the documented layout."""
        family = Family.of(GF2, 3, [unit_span(GF2, 3, [0])])
        assert family.to_text() == "q=2 n=3\nk=1\n100\n"

    def test_text_format_for_large_fields(self) -> None:
        """Rows are comma separated once entries can have two digits."""
        field = field_new(11)
        family = Family.of(field, 2, [Subspace.from_vectors(field, 2, [[1, 10]])])
        assert family.to_text() == "q=11 n=2\nk=1\n1,10\n"
        assert Family.from_text(family.to_text()) == family

    def test_parse_reduces_and_sorts(self) -> None:
        """Non-canonical input is reduced, deduplicated and sorted."""
        # Arrange
        text = "# two bases of one plane, then a line\nq=2 n=3\nk=2\n110\n010\n\nk=2\n100\n010\nk=1\n001\n"

        # Act
        family = Family.from_text(text)

        # Assert
        assert len(family) == 2
        assert [m.k for m in family] == [1, 2]
        assert unit_span(GF2, 3, [0, 1]) in family

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "q=2\nk=1\n100\n",
            "q=2 n=3\nk=2\n100\n",
            "q=2 n=3\nk=1\n10\n",
            "q=2 n=3\nk=1\n102\n",
            "q=2 n=3\nk=2\n100\n100\n",
            "q=2 n=3\n100\n",
        ],
    )
    def test_malformed_documents(self, text: str) -> None:
        """Malformed documents raise FamilyFormatError."""
        with pytest.raises(FamilyFormatError):
            Family.from_text(text)

    def test_unsorted_members_are_rejected(self) -> None:
        """The direct constructor insists on canonical order."""
        a, b = unit_span(GF2, 3, [0]), unit_span(GF2, 3, [0, 1])
        with pytest.raises(ValidationError):
            Family(GF2, 3, (b, a))

    def test_union_and_subset(self) -> None:
        """union merges duplicates, issubset follows membership."""
        lines = layer_family(GF2, 3, 1)
        small = Family.of(GF2, 3, list(lines)[:2])
        assert small.issubset(lines)
        assert small.union(lines) == lines
        assert len(Family.empty(GF2, 3)) == 0

    def test_shadow_of_planes(self) -> None:
        """Two planes of GF(2)^3 cover five lines."""
        planes = Family.of(GF2, 3, [unit_span(GF2, 3, [0, 1]), unit_span(GF2, 3, [1, 2])])
        assert len(shadow(planes, 1)) == 5
        with pytest.raises(DimensionOrderViolation):
            shadow(planes, 3)

    def test_shade_of_a_line(self) -> None:
        """A line of GF(2)^3 lies in three planes."""
        line = Family.of(GF2, 3, [unit_span(GF2, 3, [0])])
        assert len(shade(line)) == 3
        with pytest.raises(MixedDimensions):
            shade(line.union(layer_family(GF2, 3, 2)))
        with pytest.raises(TopLayer):
            shade(Family.of(GF2, 3, [full_space(GF2, 3)]))

    def test_dual_swaps_layers(self) -> None:
        """The dual of all lines is all planes."""
        assert dual(layer_family(GF2, 3, 1)) == layer_family(GF2, 3, 2)

    def test_shade_is_dual_to_shadow(self) -> None:
        """For every set H of lines in GF(2)^3, dual(shade(H)) = shadow(dual(H))."""
        lines = list(layer_family(GF2, 3, 1))
        for mask in range(1 << len(lines)):
            # Arrange
            h = Family.of(GF2, 3, (line for i, line in enumerate(lines) if mask >> i & 1))

            # Act
            above = shade(h)

            # Assert
            assert dual(above) == shadow(dual(h), 1), f"mask {mask:07b}"
            assert len(above) == len(shadow(dual(h), 1))

    def test_dimension_range(self) -> None:
        """min_dim and max_dim over members; the empty family raises."""
        family = layer_family(GF2, 3, 1).union(Family.of(GF2, 3, [full_space(GF2, 3)]))
        assert (min_dim(family), max_dim(family)) == (1, 3)
        with pytest.raises(EmptyFamily):
            min_dim(Family.empty(GF2, 3))
