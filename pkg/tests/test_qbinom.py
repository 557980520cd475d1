"""
Tests for Gaussian binomials, closed-form bounds and the formula evaluator.
"""

import pytest

from qlattice.exceptions import (
    BadParameters,
    DimensionOverflow,
    FormulaError,
    HypothesisViolated,
    NegativeArgument,
    SizeZero,
)
from qlattice.formula import evaluate_formula, pascal_gaussian, recheck
from qlattice.qbinom import (
    BoundReport,
    antichain_bound,
    cross_sharp_bound,
    cross_sperner_bound,
    cross_t_bound,
    disjoint_count,
    disjoint_count_inclusion_exclusion,
    disjoint_lower_bound,
    ekr_bound,
    gaussian_binomial,
    gaussian_binomial_real,
    hm_bound,
    optimal_union_bound,
    solve_gaussian_m,
    suboptimal_antichain_bound,
    suboptimal_union_bound,
)


class TestGaussianBinomial:
    """Exact and real-valued Gaussian binomials."""

    def test_known_values(self) -> None:
        """Small coefficients by hand."""
        assert gaussian_binomial(4, 2, 2) == 35
        assert gaussian_binomial(3, 1, 2) == 7
        assert gaussian_binomial(3, 1, 3) == 13
        assert gaussian_binomial(5, 0, 7) == 1
        assert gaussian_binomial(2, 3, 2) == 0

    def test_symmetry_and_pascal(self) -> None:
        """Product formula agrees with the q-Pascal recurrence and is symmetric."""
        for q in (2, 3, 4):
            for m in range(9):
                for k in range(m + 1):
                    value = gaussian_binomial(m, k, q)
                    assert value == gaussian_binomial(m, m - k, q)
                    assert value == pascal_gaussian(m, k, q), f"[{m},{k}]_{q} disagrees"

    def test_negative_arguments(self) -> None:
        """Negative m or k raises."""
        with pytest.raises(NegativeArgument):
            gaussian_binomial(-1, 0, 2)
        with pytest.raises(NegativeArgument):
            gaussian_binomial(3, -1, 2)

    def test_real_extension_matches_integers(self) -> None:
        """The real product reproduces integer values."""
        assert gaussian_binomial_real(4.0, 2, 2) == pytest.approx(35.0)
        assert gaussian_binomial_real(5.0, 0, 3) == 1.0

    def test_solve_for_m(self) -> None:
        """solve_gaussian_m inverts the real product."""
        assert solve_gaussian_m(35, 2, 2) == 4.0
        assert solve_gaussian_m(1, 3, 2) == 3.0
        # (2^m - 1)(2^(m-1) - 1) / 3 = 2 at 2^m = 5
        root = solve_gaussian_m(2, 2, 2)
        assert 2 < root < 3
        assert gaussian_binomial_real(root, 2, 2) == pytest.approx(2.0)
        with pytest.raises(SizeZero):
            solve_gaussian_m(0, 2, 2)


class TestDisjointCount:
    """Subspaces meeting a fixed subspace trivially."""

    def test_values(self) -> None:
        """q^(lm)[n-m, l] and the union-bound estimate."""
        assert disjoint_count(4, 2, 2, 2) == 16
        assert disjoint_lower_bound(4, 2, 2, 2) == 14

    def test_inclusion_exclusion_agrees(self) -> None:
        """Both counting routes give the same number."""
        for q in (2, 3):
            for n in range(1, 6):
                for m in range(n):
                    for l in range(1, n - m + 1):
                        assert disjoint_count(n, m, l, q) == disjoint_count_inclusion_exclusion(
                            n, m, l, q
                        ), f"mismatch at n={n} m={m} l={l} q={q}"

    def test_parameter_checks(self) -> None:
        """l >= 1 and m + l <= n."""
        with pytest.raises(BadParameters):
            disjoint_count(4, 1, 0, 2)
        with pytest.raises(DimensionOverflow):
            disjoint_count(4, 3, 2, 2)


class TestBounds:
    """Closed-form extremal bounds."""

    def test_union_bounds(self) -> None:
        """Optimal and suboptimal s-union sizes at n = 4."""
        assert optimal_union_bound(4, 2, 2).value == 16
        assert optimal_union_bound(4, 3, 2).value == 23
        assert suboptimal_union_bound(4, 2, 2).value == 5
        assert suboptimal_union_bound(6, 3, 2).value == 71
        with pytest.raises(BadParameters):
            optimal_union_bound(4, 4, 2)

    def test_odd_suboptimal_hypothesis_flag(self) -> None:
        """q = 2 needs n >= 2d + 4 for the odd case."""
        assert suboptimal_union_bound(6, 3, 2).hypothesis_ok
        assert not suboptimal_union_bound(5, 3, 2).hypothesis_ok
        assert suboptimal_union_bound(5, 3, 3).hypothesis_ok

    def test_antichain_bounds(self) -> None:
        """Antichain and suboptimal antichain sizes with their branches."""
        assert antichain_bound(4, 4, 2).value == 35

        full = suboptimal_antichain_bound(4, 4, 2)
        assert (full.value, full.branch, full.conjectural) == (29, "full", False)

        odd = suboptimal_antichain_bound(4, 3, 2)
        assert (odd.value, odd.branch, odd.conjectural) == (13, "odd", True)

        line = suboptimal_antichain_bound(4, 2, 2)
        assert (line.value, line.branch) == (13, "even-line")
        assert line.notes, "the line case carries a note"

    def test_intersection_bounds(self) -> None:
        """EKR and Hilton-Milner values and their ranges."""
        assert ekr_bound(5, 2, 1, 2).value == 15
        assert ekr_bound(5, 3, 2, 2).branch == "2k-t<n<2k"
        with pytest.raises(BadParameters):
            ekr_bound(3, 2, 1, 2)
        assert hm_bound(6, 2, 2).value == 7
        with pytest.raises(HypothesisViolated):
            hm_bound(5, 2, 2)

    def test_cross_bounds(self) -> None:
        """Cross-intersecting and cross-Sperner pairs."""
        assert cross_sharp_bound(4, 1, 2).value == 4
        assert not cross_sharp_bound(3, 1, 2).hypothesis_ok

        sperner = cross_sperner_bound(4, 1, 3, 2)
        assert (sperner.value, sperner.branch) == (9, "both")

        assert cross_t_bound(5, 2, 3, 1, 2).value == 92
        with pytest.raises(HypothesisViolated):
            cross_t_bound(5, 3, 3, 1, 2)

    @pytest.mark.parametrize(
        "report",
        [
            optimal_union_bound(7, 5, 3),
            suboptimal_union_bound(8, 4, 2),
            suboptimal_union_bound(9, 5, 4),
            antichain_bound(6, 5, 2),
            suboptimal_antichain_bound(6, 4, 3),
            suboptimal_antichain_bound(7, 5, 2),
            ekr_bound(8, 3, 2, 3),
            hm_bound(8, 3, 2),
            cross_t_bound(7, 3, 3, 2, 2),
            cross_sperner_bound(6, 2, 4, 3),
            cross_sharp_bound(7, 2, 2),
        ],
        ids=lambda r: r.theorem_id,
    )
    def test_formulas_reproduce_values(self, report: BoundReport) -> None:
        """Every rendered formula re-evaluates to the reported value."""
        assert recheck(report), f"{report.formula} != {report.value}"

    def test_document_renders_value_as_string(self) -> None:
        """Values travel as decimal strings."""
        document = optimal_union_bound(4, 2, 2).to_document()
        assert document["value"] == "16"
        assert document["theorem"] == "optimal-union"


class TestFormula:
    """The restricted formula evaluator."""

    def test_evaluates_gaussian_expressions(self) -> None:
        """G, integer arithmetic and powers."""
        assert evaluate_formula("G(4,2,2) - 2**2*G(2,1,2) + 1") == 24
        assert evaluate_formula("max(G(4,1,2), -3)") == 15

    @pytest.mark.parametrize(
        "text",
        ["__import__('os')", "1/2", "G(4,2)", "x + 1", "2**-1", "1.5 + 1", "True + 1", "1 +"],
    )
    def test_rejects_everything_else(self, text: str) -> None:
        """Anything outside the grammar raises FormulaError."""
        with pytest.raises(FormulaError):
            evaluate_formula(text)
