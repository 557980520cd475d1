"""
Gaussian binomial coefficients and closed-form bounds.

All bounds are exact Python integers. Each BoundReport also carries the formula
it was computed from, rendered over G(m,k,q), so that a second evaluator can
re-derive the value independently (see qlattice.formula).
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .exceptions import (
    BadParameters,
    DimensionOverflow,
    HypothesisViolated,
    NegativeArgument,
    SizeZero,
    ValidationError,
)
from .logging_config import get_logger

# Module-level logger
logger = get_logger("qbinom")

BISECTION_XTOL = 1e-12
ROUND_TRIP_TOLERANCE = 1e-9


def gaussian_binomial(m: int, k: int, q: int) -> int:
    """
    Exact Gaussian binomial [m, k]_q.

    Counts the k-dimensional subspaces of an m-dimensional space over GF(q).
    Zero when m < k.

    Raises:
        NegativeArgument: If m or k is negative
    """
    if m < 0 or k < 0:
        raise NegativeArgument(f"gaussian_binomial needs m, k >= 0, got m={m}, k={k}")
    if k > m:
        return 0
    numerator = math.prod(q ** (m - i) - 1 for i in range(k))
    denominator = math.prod(q ** (k - i) - 1 for i in range(k))
    return numerator // denominator


def gaussian_binomial_real(m: float, k: int, q: int) -> float:
    """Product formula for [m, k]_q evaluated at real m."""
    if k < 0:
        raise NegativeArgument(f"k must be >= 0, got {k}")
    if k == 0:
        return 1.0
    i = np.arange(k, dtype=np.float64)
    base = float(q)
    return float(np.prod((np.power(base, m - i) - 1.0) / (np.power(base, k - i) - 1.0)))


def solve_gaussian_m(size: int, k: int, q: int) -> float:
    """
    The unique real m >= k with [m, k]_q = size.

    Found by bisection on the strictly increasing real product. When an
    integer m solves the equation exactly it is returned as is.

    Raises:
        SizeZero: If size < 1
    """
    if size < 1:
        raise SizeZero(f"size must be >= 1, got {size}")
    if k < 0:
        raise NegativeArgument(f"k must be >= 0, got {k}")
    if size == 1:
        return float(k)
    if k == 0:
        raise BadParameters(f"[m, 0] = 1 for every m, no m reaches size {size}")

    target = float(size)
    upper = float(k + 1)
    while gaussian_binomial_real(upper, k, q) < target:
        upper = k + 2.0 * (upper - k)

    root = float(
        bisect(
            lambda m: gaussian_binomial_real(m, k, q) - target,
            float(k),
            upper,
            xtol=BISECTION_XTOL,
            maxiter=500,
        )
    )
    nearest = round(root)
    if nearest >= k and gaussian_binomial(nearest, k, q) == size:
        return float(nearest)
    return root


def _check_disjoint(n: int, m: int, l: int) -> None:
    if n < 0 or m < 0:
        raise NegativeArgument(f"n and m must be >= 0, got n={n}, m={m}")
    if l < 1:
        raise BadParameters(f"l must be >= 1, got {l}")
    if m + l > n:
        raise DimensionOverflow(f"m + l = {m + l} exceeds n = {n}")


def disjoint_count(n: int, m: int, l: int, q: int) -> int:
    """Number of l-spaces meeting a fixed m-space trivially: q^(lm) [n-m, l]."""
    _check_disjoint(n, m, l)
    return q ** (l * m) * gaussian_binomial(n - m, l, q)


def disjoint_count_inclusion_exclusion(n: int, m: int, l: int, q: int) -> int:
    """The same count as an alternating sum over the dimension t of Z cap W."""
    _check_disjoint(n, m, l)
    return sum(
        (-1) ** t
        * q ** (t * (t - 1) // 2)
        * gaussian_binomial(m, t, q)
        * gaussian_binomial(n - t, l - t, q)
        for t in range(min(m, l) + 1)
    )


def disjoint_lower_bound(n: int, m: int, l: int, q: int) -> int:
    """Union-bound estimate [n, l] - [m, 1][n-1, l-1] for disjoint_count."""
    _check_disjoint(n, m, l)
    return gaussian_binomial(n, l, q) - gaussian_binomial(m, 1, q) * gaussian_binomial(
        n - 1, l - 1, q
    )


@dataclass(frozen=True)
class BoundReport:
    """Evaluated closed-form bound."""

    theorem_id: str
    parameters: dict[str, int]
    value: int
    hypothesis_ok: bool
    formula: str
    conjectural: bool = False
    branch: str | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        """Validate bound data."""
        if not self.theorem_id:
            raise ValidationError("theorem_id cannot be empty")
        if not self.formula:
            raise ValidationError("formula cannot be empty")

    def to_document(self) -> dict[str, object]:
        """JSON-ready view; the value is a decimal string."""
        document: dict[str, object] = {
            "theorem": self.theorem_id,
            "parameters": dict(self.parameters),
            "value": str(self.value),
            "hypothesis_ok": self.hypothesis_ok,
            "conjectural": self.conjectural,
            "formula": self.formula,
        }
        if self.branch is not None:
            document["branch"] = self.branch
        if self.notes:
            document["notes"] = list(self.notes)
        return document


def _g(m: int, k: int, q: int) -> str:
    return f"G({m},{k},{q})"


def _layer_sum(n: int, d: int, q: int) -> tuple[int, str]:
    value = sum(gaussian_binomial(n, i, q) for i in range(d + 1))
    return value, " + ".join(_g(n, i, q) for i in range(d + 1))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise BadParameters(message)


def optimal_union_bound(n: int, s: int, q: int) -> BoundReport:
    """
    Largest size of an s-union family in L(V).

    Sum of [n, i] for i <= d when s = 2d, plus [n-1, d] when s = 2d+1.
    hypothesis_ok records s <= n-2, where the Katona family is the unique optimum.
    """
    _require(2 <= s < n, f"need 2 <= s < n, got s={s}, n={n}")
    d = s // 2
    value, formula = _layer_sum(n, d, q)
    if s % 2:
        value += gaussian_binomial(n - 1, d, q)
        formula += f" + {_g(n - 1, d, q)}"
    return BoundReport(
        theorem_id="optimal-union",
        parameters={"n": n, "s": s, "q": q},
        value=value,
        hypothesis_ok=s <= n - 2,
        formula=formula,
        branch="odd" if s % 2 else "even",
    )


def suboptimal_union_bound(n: int, s: int, q: int) -> BoundReport:
    """Largest s-union family not contained in any Katona family."""
    _require(2 <= s < n, f"need 2 <= s < n, got s={s}, n={n}")
    d = s // 2
    value, formula = _layer_sum(n, d, q)
    power = d * (d + 1)
    if s % 2 == 0:
        value += -(q**power) * gaussian_binomial(n - d - 1, d, q) + 1
        formula += f" - {q}**{power}*{_g(n - d - 1, d, q)} + 1"
        hypothesis_ok = True
    else:
        value += (
            gaussian_binomial(n - 1, d, q)
            - q**power * gaussian_binomial(n - d - 2, d, q)
            + q ** (d + 1)
        )
        formula += (
            f" + {_g(n - 1, d, q)} - {q}**{power}*{_g(n - d - 2, d, q)}"
            f" + {q}**{d + 1}"
        )
        hypothesis_ok = (q >= 3 and n >= 2 * d + 3) or (q == 2 and n >= 2 * d + 4)
    return BoundReport(
        theorem_id="suboptimal-union",
        parameters={"n": n, "s": s, "q": q},
        value=value,
        hypothesis_ok=hypothesis_ok,
        formula=formula,
        branch="odd" if s % 2 else "even",
    )


def antichain_bound(n: int, s: int, q: int) -> BoundReport:
    """Largest s-union antichain: [n, floor(s/2)]."""
    _require(2 <= s <= n, f"need 2 <= s <= n, got s={s}, n={n}")
    half = s // 2
    return BoundReport(
        theorem_id="antichain",
        parameters={"n": n, "s": s, "q": q},
        value=gaussian_binomial(n, half, q),
        hypothesis_ok=True,
        formula=_g(n, half, q),
        branch="full" if s == n else "partial",
    )


def suboptimal_antichain_bound(n: int, s: int, q: int) -> BoundReport:
    """
    Largest s-union antichain outside the optimal ones.

    The s = 2d+1 < n value is conjectural and flagged as such.
    """
    _require(2 <= s <= n, f"need 2 <= s <= n, got s={s}, n={n}")
    notes: list[str] = []
    conjectural = False
    if s == n:
        half = n // 2
        value = gaussian_binomial(n, half, q) - q * gaussian_binomial(half, 1, q)
        formula = f"{_g(n, half, q)} - {q}*{_g(half, 1, q)}"
        branch = "full"
    elif s == 2:
        value = gaussian_binomial(n, 1, q) - q
        formula = f"{_g(n, 1, q)} - {q}"
        branch = "even-line"
        notes.append(
            "upper bound only: a 2-space and a line outside it span dimension 3"
        )
    elif s % 2 == 0:
        d = s // 2
        value = gaussian_binomial(n, d, q) - q * gaussian_binomial(n - d, 1, q)
        formula = f"{_g(n, d, q)} - {q}*{_g(n - d, 1, q)}"
        branch = "even"
    else:
        d = s // 2
        value = gaussian_binomial(n, d, q) - q * gaussian_binomial(d, 1, q)
        formula = f"{_g(n, d, q)} - {q}*{_g(d, 1, q)}"
        branch = "odd"
        conjectural = True
    return BoundReport(
        theorem_id="suboptimal-antichain",
        parameters={"n": n, "s": s, "q": q},
        value=value,
        hypothesis_ok=True,
        formula=formula,
        conjectural=conjectural,
        branch=branch,
        notes=notes,
    )


def ekr_bound(n: int, k: int, t: int, q: int) -> BoundReport:
    """
    Largest t-intersecting family of k-spaces.

    [n-t, k-t] for n >= 2k and [2k-t, k] for 2k-t < n < 2k. n = 2k-t is
    outside the range of the statement and rejected.
    """
    _require(1 <= t <= k, f"need 1 <= t <= k, got t={t}, k={k}")
    _require(n > 2 * k - t, f"need n > 2k - t = {2 * k - t}, got n={n}")
    if n >= 2 * k:
        value, formula, branch = (
            gaussian_binomial(n - t, k - t, q),
            _g(n - t, k - t, q),
            "n>=2k",
        )
    else:
        value, formula, branch = (
            gaussian_binomial(2 * k - t, k, q),
            _g(2 * k - t, k, q),
            "2k-t<n<2k",
        )
    return BoundReport(
        theorem_id="ekr",
        parameters={"n": n, "k": k, "t": t, "q": q},
        value=value,
        hypothesis_ok=True,
        formula=formula,
        branch=branch,
    )


def hm_bound(n: int, k: int, q: int) -> BoundReport:
    """
    Largest intersecting family of k-spaces with trivial common intersection.

    Raises:
        HypothesisViolated: Unless k >= 2 and n >= 2k+1 (q >= 3) or n >= 2k+2 (q = 2)
    """
    in_range = k >= 2 and (
        (q >= 3 and n >= 2 * k + 1) or (q == 2 and n >= 2 * k + 2)
    )
    if not in_range:
        raise HypothesisViolated(
            f"hilton-milner bound needs k >= 2 and n >= 2k+1 (q >= 3) or n >= 2k+2 (q = 2), got n={n}, k={k}, q={q}"
        )
    power = k * (k - 1)
    value = (
        gaussian_binomial(n - 1, k - 1, q)
        - q**power * gaussian_binomial(n - k - 1, k - 1, q)
        + q**k
    )
    formula = f"{_g(n - 1, k - 1, q)} - {q}**{power}*{_g(n - k - 1, k - 1, q)} + {q}**{k}"
    return BoundReport(
        theorem_id="hilton-milner",
        parameters={"n": n, "k": k, "q": q},
        value=value,
        hypothesis_ok=True,
        formula=formula,
    )


def cross_t_bound(n: int, a: int, b: int, t: int, q: int) -> BoundReport:
    """Largest |A| + |B| for non-trivial cross-t-intersecting A in [V,a], B in [V,b]."""
    problems: list[str] = []
    if a < 2 or b < 2:
        problems.append("a, b >= 2")
    if not 1 <= t < min(a, b):
        problems.append("1 <= t < min(a, b)")
    if a + b >= n + t:
        problems.append("a + b < n + t")
    if a <= n and b <= n and gaussian_binomial(n, a, q) > gaussian_binomial(n, b, q):
        problems.append("[n, a] <= [n, b]")
    if a > n or b > n:
        problems.append("a, b <= n")
    if problems:
        raise HypothesisViolated(
            f"cross-t bound needs {', '.join(problems)}; got n={n}, a={a}, b={b}, t={t}"
        )

    value = gaussian_binomial(n, b, q) + 1
    terms: list[str] = []
    for i in range(t):
        power = (a - i) * (b - i)
        value -= (
            q**power
            * gaussian_binomial(a, i, q)
            * gaussian_binomial(n - a, b - i, q)
        )
        terms.append(f"{q}**{power}*{_g(a, i, q)}*{_g(n - a, b - i, q)}")
    formula = f"{_g(n, b, q)} - " + " - ".join(terms) + " + 1"
    return BoundReport(
        theorem_id="cross-t",
        parameters={"n": n, "a": a, "b": b, "t": t, "q": q},
        value=value,
        hypothesis_ok=True,
        formula=formula,
    )


def cross_sperner_bound(n: int, a: int, b: int, q: int) -> BoundReport:
    """Largest |A| + |B| for non-empty cross-Sperner A in [V,a], B in [V,b]."""
    _require(0 < a < b < n, f"need 0 < a < b < n, got a={a}, b={b}, n={n}")
    keep_b = gaussian_binomial(n, b, q) - gaussian_binomial(n - a, b - a, q) + 1
    keep_a = gaussian_binomial(n, a, q) - gaussian_binomial(b, a, q) + 1
    if keep_b == keep_a:
        branch = "both"
    else:
        branch = "b-layer" if keep_b > keep_a else "a-layer"
    formula = (
        f"max({_g(n, b, q)} - {_g(n - a, b - a, q)} + 1, "
        f"{_g(n, a, q)} - {_g(b, a, q)} + 1)"
    )
    return BoundReport(
        theorem_id="cross-sperner",
        parameters={"n": n, "a": a, "b": b, "q": q},
        value=max(keep_b, keep_a),
        hypothesis_ok=True,
        formula=formula,
        branch=branch,
    )


def cross_sharp_bound(n: int, k: int, q: int) -> BoundReport:
    """
    Largest |A| + |B| for cross-intersecting A in [V,k] and 2-intersecting
    non-empty B in [V,k+1].

    hypothesis_ok records n >= 2k+2, where the extremal pair is unique.
    """
    _require(k >= 1, f"need k >= 1, got {k}")
    _require(n >= 2 * k + 1, f"need n >= 2k+1 = {2 * k + 1}, got n={n}")
    power = k * (k + 1)
    value = (
        gaussian_binomial(n, k, q) - q**power * gaussian_binomial(n - k - 1, k, q) + 1
    )
    return BoundReport(
        theorem_id="cross-sharp",
        parameters={"n": n, "k": k, "q": q},
        value=value,
        hypothesis_ok=n >= 2 * k + 2,
        formula=f"{_g(n, k, q)} - {q}**{power}*{_g(n - k - 1, k, q)} + 1",
    )
