"""
Tests for the named constructions and family predicates.
"""

import pytest

from qlattice.exceptions import BadAnchor, BadParameters, ValidationError
from qlattice.families import (
    FamilySpec,
    anchors_from_family,
    build_A,
    build_B,
    build_family,
    build_J,
    build_K,
    build_swap,
    build_T,
    escapes_every_katona,
    is_antichain,
    is_cross_sperner,
    is_cross_t_intersecting,
    is_s_union,
    is_t_intersecting,
    katona_escape,
    layer,
    sizes_by_layer,
)
from qlattice.gfq import field_new
from qlattice.qbinom import antichain_bound, optimal_union_bound, suboptimal_union_bound
from qlattice.subspace import Family, contains, dual, enumerate_subspaces, layer_family, unit_span

GF2 = field_new(2)


class TestUnionConstructions:
    """Katona, Hilton-Milner type and J families."""

    def test_katona_families_meet_the_bound(self) -> None:
        """K[n,s] is s-union and has the optimal size."""
        for n, s, q in [(3, 2, 2), (4, 2, 2), (4, 3, 2), (4, 3, 3)]:
            family = build_K(n, s, q)
            assert len(family) == optimal_union_bound(n, s, q).value, f"|K[{n},{s}]_{q}|"
            assert is_s_union(family, s)
            assert katona_escape(family, s) is None

    def test_katona_sizes_by_layer(self) -> None:
        """K[4,3] holds the zero space, every line and the planes through E."""
        assert sizes_by_layer(build_K(4, 3, 2)) == {0: 1, 1: 15, 2: 7}

    def test_even_t_family(self) -> None:
        """T[4,2] is the zero space, the lines of U and U itself."""
        # Arrange
        u = unit_span(GF2, 4, [2, 3])

        # Act
        family = build_T(4, 2, 2, U=u)

        # Assert
        assert len(family) == suboptimal_union_bound(4, 2, 2).value == 5
        assert is_s_union(family, 2)
        assert katona_escape(family, 2) == u
        assert escapes_every_katona(family, 2)

    def test_odd_t_family(self) -> None:
        """T[6,3] meets the suboptimal bound and lies in no K[6,3]."""
        family = build_T(6, 3, 2)
        assert len(family) == suboptimal_union_bound(6, 3, 2).value == 71
        assert is_s_union(family, 3)
        assert escapes_every_katona(family, 3)
        assert not escapes_every_katona(build_K(6, 3, 2), 3)

    def test_t_size_does_not_depend_on_anchors(self) -> None:
        """Every admissible choice of U, and of E for odd s, gives the same size."""
        # Arrange
        e = unit_span(GF2, 5, [0])
        u = unit_span(GF2, 5, [1, 2])

        # Act
        even_sizes = {len(build_T(4, 2, 2, U=plane)) for plane in enumerate_subspaces(GF2, 4, 2)}
        odd_sizes = {
            len(build_T(5, 3, 2, E=e, U=plane))
            for plane in enumerate_subspaces(GF2, 5, 2)
            if not contains(e, plane)
        }
        odd_sizes |= {
            len(build_T(5, 3, 2, E=line, U=u))
            for line in enumerate_subspaces(GF2, 5, 1)
            if not contains(line, u)
        }

        # Assert
        assert even_sizes == {5}
        assert odd_sizes == {suboptimal_union_bound(5, 3, 2).value} == {39}

    def test_odd_t_rejects_e_inside_u(self) -> None:
        """E must lie outside U."""
        with pytest.raises(BadAnchor):
            build_T(5, 3, 2, E=unit_span(GF2, 5, [0]), U=unit_span(GF2, 5, [0, 1]))

    def test_j_family(self) -> None:
        """J[6] is 5-union and needs n >= 6."""
        family = build_J(6, 2)
        assert len(family) == 715 + 99
        assert sizes_by_layer(family)[3] == 99
        with pytest.raises(BadParameters):
            build_J(5, 2)

    def test_j_family_meets_the_odd_bound(self) -> None:
        """At n = 8 the hypotheses hold and |J[8]| is the suboptimal 5-union value."""
        family = build_J(8, 2)
        report = suboptimal_union_bound(8, 5, 2)
        assert report.hypothesis_ok
        assert len(family) == report.value == 11486
        assert sizes_by_layer(family)[3] == 435

    def test_union_range(self) -> None:
        """s must satisfy 2 <= s < n."""
        with pytest.raises(BadParameters):
            build_K(4, 4, 2)
        with pytest.raises(BadParameters):
            build_T(4, 1, 2)


class TestAntichainConstructions:
    """A, B and swapped-layer antichains."""

    def test_a_and_b_at_full_rank(self) -> None:
        """A[4,4] and B[4,4] are 4-union antichains of size 29."""
        for family in (build_A(4, 4, 2), build_B(4, 4, 2)):
            assert len(family) == 29
            assert is_antichain(family)
            assert is_s_union(family, 4)

    def test_b_for_odd_s(self) -> None:
        """B[4,3] has the twelve lines outside W and W itself."""
        family = build_B(4, 3, 2)
        assert len(family) == 13
        assert is_antichain(family)
        assert is_s_union(family, 3)

    def test_b_for_s_two_is_not_union(self) -> None:
        """With s = 2 the plane W spans 3 dimensions with any line outside it."""
        family = build_B(4, 2, 2)
        assert is_antichain(family)
        assert not is_s_union(family, 2)

    def test_swap_family_is_optimal(self) -> None:
        """The swapped layer is a 3-union antichain of size [4,1]."""
        family = build_swap(4, 3, 2)
        assert len(family) == antichain_bound(4, 3, 2).value == 15
        assert is_antichain(family)
        assert is_s_union(family, 3)
        assert sizes_by_layer(family) == {1: 8, 2: 7}
        with pytest.raises(BadParameters):
            build_swap(4, 2, 2)

    def test_anchor_dimension_is_checked(self) -> None:
        """A wrong-dimensional anchor raises BadAnchor."""
        with pytest.raises(BadAnchor):
            build_B(4, 4, 2, W=unit_span(GF2, 4, [0]))


class TestFamilySpec:
    """Dispatch and anchor handling."""

    def test_build_family_dispatch(self) -> None:
        """build_family matches the direct constructors."""
        u = unit_span(GF2, 4, [3])
        spec = FamilySpec(name="A", n=4, q=2, s=4, anchors={"U": u})
        assert build_family(spec) == build_A(4, 4, 2, U=u)
        assert build_family(FamilySpec(name="K", n=3, q=2, s=2)) == build_K(3, 2, 2)

    def test_j_requires_s_five(self) -> None:
        """J is only defined for s = 5."""
        with pytest.raises(BadParameters):
            build_family(FamilySpec(name="J", n=6, q=2, s=4))

    def test_spec_validation(self) -> None:
        """Unknown names, roles and foreign anchors are rejected."""
        with pytest.raises(ValidationError):
            FamilySpec(name="Z", n=4, q=2, s=2)  # pyright: ignore[reportArgumentType]
        with pytest.raises(BadAnchor):
            FamilySpec(name="K", n=4, q=2, s=3, anchors={"W": unit_span(GF2, 4, [0])})
        with pytest.raises(BadAnchor):
            FamilySpec(name="K", n=4, q=2, s=3, anchors={"E": unit_span(GF2, 3, [0])})

    def test_anchors_from_family(self) -> None:
        """Anchors are assigned to roles by dimension."""
        # Arrange
        e = unit_span(GF2, 5, [4])
        u = unit_span(GF2, 5, [0, 1])
        anchor_file = Family.of(GF2, 5, [e, u])

        # Act
        anchors = anchors_from_family("T", 3, anchor_file)

        # Assert
        assert anchors == {"E": e, "U": u}

    def test_anchors_from_family_rejects_extra_members(self) -> None:
        """Two anchors of one dimension, or an unknown dimension, raise."""
        lines = Family.of(GF2, 5, [unit_span(GF2, 5, [0]), unit_span(GF2, 5, [1])])
        with pytest.raises(BadAnchor):
            anchors_from_family("K", 3, lines)
        with pytest.raises(BadAnchor):
            anchors_from_family("K", 3, layer_family(GF2, 3, 2))


class TestPredicates:
    """Pairwise predicates."""

    def test_diagonal_counts_for_union_and_intersection(self) -> None:
        """A single 3-space is not 2-union, a single line is not 2-intersecting."""
        whole = Family.of(GF2, 3, [unit_span(GF2, 3, [0, 1, 2])])
        line = Family.of(GF2, 3, [unit_span(GF2, 3, [0])])
        assert not is_s_union(whole, 2)
        assert not is_t_intersecting(line, 2)
        assert is_t_intersecting(line, 1)

    def test_duality_of_union_and_intersection(self) -> None:
        """F is s-union iff its dual is (n-s)-intersecting."""
        family = build_K(4, 2, 2)
        assert is_s_union(family, 2)
        assert is_t_intersecting(dual(family), 2)

    def test_layers_are_antichains(self) -> None:
        """A full layer is an antichain; adding the zero space breaks it."""
        lines = layer_family(GF2, 3, 1)
        assert is_antichain(lines)
        assert not is_antichain(build_K(3, 2, 2))
        assert layer(build_K(3, 2, 2), 1) == lines

    def test_cross_predicates(self) -> None:
        """Cross-intersection and cross-Sperner on lines against planes."""
        e = unit_span(GF2, 3, [0])
        lines = Family.of(GF2, 3, [e])
        through = Family.of(GF2, 3, [unit_span(GF2, 3, [0, 1])])
        avoiding = Family.of(GF2, 3, [unit_span(GF2, 3, [1, 2])])
        assert is_cross_t_intersecting(lines, through, 1)
        assert not is_cross_t_intersecting(lines, avoiding, 1)
        assert is_cross_sperner(lines, avoiding)
        assert not is_cross_sperner(lines, through)
