"""
Brute-force verifiers for the counting lemmas the extremal bounds rest on.

Each verifier either walks every family in a small layer (exhaustive mode,
guarded by EXHAUSTIVE_LAYER_BUDGET) or draws seeded random families (sample
mode) and returns a VerificationReport whose counterexample list must be
empty. Set operations run on bitmasks: a layer is indexed once, and shadows,
shades and unions become ORs of precomputed per-member masks.
"""

import random
from collections.abc import Iterator, Sequence

from ..constraints import UnionConstraint
from ..exceptions import BadParameters, BudgetExceeded, ConfigurationError, HypothesisViolated
from ..families import is_s_union, is_t_intersecting, layer
from ..gfq import Field, field_new
from ..logging_config import get_logger
from ..models import Counterexample, LatticeVertex, VerificationReport
from ..qbinom import (
    ROUND_TRIP_TOLERANCE,
    cross_sharp_bound,
    disjoint_count,
    disjoint_count_inclusion_exclusion,
    disjoint_lower_bound,
    gaussian_binomial,
    gaussian_binomial_real,
    solve_gaussian_m,
)
from ..subspace import (
    Family,
    dual,
    enumerate_subspaces,
    intersection_dim,
    span,
    unit_span,
    zero_subspace,
)
from .graph import CompatibilityGraph, point_mask
from .sampling import random_clique_family, random_subset

# Module-level logger
logger = get_logger("verifiers")

EXHAUSTIVE_LAYER_BUDGET = 20
MODES = ("exhaustive", "sample")


def _layer(field: Field, n: int, k: int) -> list[LatticeVertex]:
    return [LatticeVertex(s, point_mask(s)) for s in enumerate_subspaces(field, n, k)]


def _below_masks(members: Sequence[LatticeVertex], lower: Sequence[LatticeVertex]) -> list[int]:
    """For each member, the mask over `lower` of the vertices it contains."""
    masks: list[int] = []
    for member in members:
        mask = 0
        for j, g in enumerate(lower):
            if g.lies_in(member):
                mask |= 1 << j
        masks.append(mask)
    return masks


def _above_masks(members: Sequence[LatticeVertex], upper: Sequence[LatticeVertex]) -> list[int]:
    """For each member, the mask over `upper` of the vertices containing it."""
    masks: list[int] = []
    for member in members:
        mask = 0
        for j, g in enumerate(upper):
            if member.lies_in(g):
                mask |= 1 << j
        masks.append(mask)
    return masks


def _union_over(masks: Sequence[int], chosen: int) -> int:
    result = 0
    while chosen:
        low = chosen & -chosen
        result |= masks[low.bit_length() - 1]
        chosen ^= low
    return result


def _subset_unions(masks: Sequence[int]) -> list[int]:
    """OR of masks over every subset of indices, indexed by the subset bitmask."""
    unions = [0] * (1 << len(masks))
    for subset in range(1, len(unions)):
        low = subset & -subset
        unions[subset] = unions[subset ^ low] | masks[low.bit_length() - 1]
    return unions


def _indices(mask: int) -> list[int]:
    out: list[int] = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _family(field: Field, n: int, vertices: Sequence[LatticeVertex], mask: int) -> Family:
    return Family.of(field, n, (vertices[i].subspace for i in _indices(mask)))


def _check_mode(mode: str, size: int) -> None:
    if mode not in MODES:
        raise ConfigurationError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "exhaustive" and size > EXHAUSTIVE_LAYER_BUDGET:
        raise BudgetExceeded(
            f"exhaustive mode over a layer of {size} subspaces exceeds 2^{EXHAUSTIVE_LAYER_BUDGET} families"
        )


def _families(size: int, mode: str, trials: int, rng: random.Random) -> Iterator[int]:
    """Non-empty subsets of range(size) as bitmasks: all of them, or `trials` random ones."""
    if mode == "exhaustive":
        yield from range(1, 1 << size)
        return
    for _ in range(trials):
        mask = 0
        for i in random_subset(size, rng):
            mask |= 1 << i
        yield mask


def _min_meet(members: Sequence[LatticeVertex], chosen: list[int], k: int) -> int:
    """Largest t such that the chosen members pairwise meet in dimension >= t."""
    t = k
    for x, i in enumerate(chosen):
        for j in chosen[x + 1 :]:
            t = min(t, members[i].meet_dim(members[j]))
            if t == 0:
                return 0
    return t


def verify_shadow_theorem(
    n: int, k: int, q: int, mode: str = "exhaustive", trials: int = 1000, seed: int = 0
) -> VerificationReport:
    """
    Check the lower bound |shadow(H)| >= [m, k-1] for k-uniform H, where m is
    the real number with [m, k] = |H|, and that equality occurs exactly for the
    full layers [M, k] of an m-space M.

    Families that happen to be t-intersecting are also checked against the
    shadow ratio bound |shadow_u(H)| / |H| >= [2k-t, u] / [2k-t, k] for every
    1 <= t <= their minimum pairwise meet and k-t <= u <= k.

    Raises:
        BadParameters: Unless 2 <= k <= n
        BudgetExceeded: In exhaustive mode when [n, k] > 20
    """
    if not 2 <= k <= n:
        raise BadParameters(f"shadow verification needs 2 <= k <= n, got k={k}, n={n}")
    field = field_new(q)
    size = gaussian_binomial(n, k, q)
    _check_mode(mode, size)
    rng = random.Random(seed)

    members = _layer(field, n, k)
    lower = _layer(field, n, k - 1)
    below = _below_masks(members, lower)
    unions = _subset_unions(below) if mode == "exhaustive" else None
    deep_below: dict[int, list[int]] = {}

    report = VerificationReport(
        check="shadow",
        parameters={"n": n, "k": k, "q": q},
        mode=mode,
        tested=0,
        seed=None if mode == "exhaustive" else seed,
    )
    ratio_checks = 0
    for chosen in _families(size, mode, trials, rng):
        report.tested += 1
        count = chosen.bit_count()
        shadow_size = (unions[chosen] if unions is not None else _union_over(below, chosen)).bit_count()

        m = solve_gaussian_m(count, k, q)
        if m.is_integer():
            exact = gaussian_binomial(int(m), k - 1, q)
            violated = shadow_size < exact
            equal = shadow_size == exact
        else:
            real = gaussian_binomial_real(m, k - 1, q)
            violated = shadow_size < real * (1 - ROUND_TRIP_TOLERANCE)
            equal = False

        if violated:
            report.counterexamples.append(
                Counterexample(
                    "shadow-below-bound",
                    f"|H|={count}, m={m:.9f}, |shadow|={shadow_size}",
                    [_family(field, n, members, chosen)],
                )
            )
        elif equal:
            report.equality_cases += 1
            indices = _indices(chosen)
            hull = members[indices[0]].subspace
            for i in indices[1:]:
                hull = span(hull, members[i].subspace)
            if hull.k != int(m):
                report.counterexamples.append(
                    Counterexample(
                        "equality-not-full-layer",
                        f"|H|={count} attains the bound but spans dimension {hull.k}, not {int(m)}",
                        [_family(field, n, members, chosen)],
                    )
                )

        t_max = _min_meet(members, _indices(chosen), k)
        for t in range(1, t_max + 1):
            top = gaussian_binomial(2 * k - t, k, q)
            for u in range(max(k - t, 0), k + 1):
                if u == k:
                    shadow_u = count
                elif u == k - 1:
                    shadow_u = shadow_size
                else:
                    if u not in deep_below:
                        deep_below[u] = _below_masks(members, _layer(field, n, u))
                    shadow_u = _union_over(deep_below[u], chosen).bit_count()
                ratio_checks += 1
                if shadow_u * top < count * gaussian_binomial(2 * k - t, u, q):
                    report.counterexamples.append(
                        Counterexample(
                            "intersecting-ratio",
                            f"t={t}, u={u}: |shadow_u|={shadow_u}, |H|={count}",
                            [_family(field, n, members, chosen)],
                        )
                    )

    report.notes["ratio_checks"] = ratio_checks
    if mode == "exhaustive":
        expected = sum(gaussian_binomial(n, m, q) for m in range(k, n + 1))
        report.notes["expected_equality_cases"] = expected
        if report.equality_cases != expected:
            report.counterexamples.append(
                Counterexample(
                    "equality-count",
                    f"{report.equality_cases} equality cases, one per subspace of dimension >= k expected ({expected})",
                )
            )
    logger.info(
        f"Shadow check n={n}, k={k}, q={q} ({mode}): {report.tested} families, {report.equality_cases} equality cases, {len(report.counterexamples)} counterexamples"
    )
    return report


def verify_shade_lemma(
    n: int, k: int, q: int, mode: str = "exhaustive", trials: int = 1000, seed: int = 0
) -> VerificationReport:
    """
    Check the gap between a k-uniform family and its shadow or shade.

    For k >= ceil(n/2)+1: |shadow(H)| - |H| >= q[k-1, 1].
    For k <= floor(n/2)-1: |shade(H)| - |H| >= q[n-k-1, 1].
    In both cases equality must hold exactly for singletons.

    Raises:
        HypothesisViolated: If k is in neither range or n < 3
        BudgetExceeded: In exhaustive mode when [n, k] > 20
    """
    if n < 3:
        raise HypothesisViolated(f"shade lemma needs n >= 3, got {n}")
    if k >= (n + 1) // 2 + 1:
        case, gap_bound, neighbour_dim = "shadow", q * gaussian_binomial(k - 1, 1, q), k - 1
    elif 1 <= k <= n // 2 - 1:
        case, gap_bound, neighbour_dim = "shade", q * gaussian_binomial(n - k - 1, 1, q), k + 1
    else:
        raise HypothesisViolated(
            f"k={k} is neither >= ceil(n/2)+1 nor <= floor(n/2)-1 for n={n}"
        )
    field = field_new(q)
    size = gaussian_binomial(n, k, q)
    _check_mode(mode, size)
    rng = random.Random(seed)

    members = _layer(field, n, k)
    neighbours = _layer(field, n, neighbour_dim)
    masks = _below_masks(members, neighbours) if case == "shadow" else _above_masks(members, neighbours)
    unions = _subset_unions(masks) if mode == "exhaustive" else None

    report = VerificationReport(
        check="shade",
        parameters={"n": n, "k": k, "q": q},
        mode=mode,
        tested=0,
        seed=None if mode == "exhaustive" else seed,
        notes={"case": case, "gap_bound": gap_bound},
    )
    for chosen in _families(size, mode, trials, rng):
        report.tested += 1
        count = chosen.bit_count()
        reached = (unions[chosen] if unions is not None else _union_over(masks, chosen)).bit_count()
        gap = reached - count
        if gap < gap_bound:
            report.counterexamples.append(
                Counterexample(
                    "gap-below-bound",
                    f"|H|={count}, |{case}|={reached}, gap {gap} < {gap_bound}",
                    [_family(field, n, members, chosen)],
                )
            )
        elif gap == gap_bound:
            report.equality_cases += 1
            if count != 1:
                report.counterexamples.append(
                    Counterexample(
                        "equality-not-singleton",
                        f"|H|={count} attains the gap {gap_bound}",
                        [_family(field, n, members, chosen)],
                    )
                )

    if mode == "exhaustive" and report.equality_cases != size:
        report.counterexamples.append(
            Counterexample(
                "equality-count",
                f"{report.equality_cases} equality cases, expected the {size} singletons",
            )
        )
    logger.info(
        f"Shade check n={n}, k={k}, q={q} ({case}, {mode}): {report.tested} families, {report.equality_cases} equality cases, {len(report.counterexamples)} counterexamples"
    )
    return report


def verify_cross_lemma(
    n: int, k: int, q: int, mode: str = "sample", trials: int = 1000, seed: int = 0
) -> VerificationReport:
    """
    Check |A| + |B| <= [n,k] - q^(k(k+1)) [n-k-1, k] + 1 for cross-intersecting
    A in [V,k] and non-empty 2-intersecting B in [V,k+1].

    For each B only the largest compatible A (every k-space meeting all of B)
    is tested, which dominates every other A. The extremal pair (a single B0
    with all k-spaces meeting it) is always checked; for n >= 2k+2 it must
    attain the bound, and in exhaustive mode no larger B may attain it.

    Raises:
        HypothesisViolated: Unless k >= 1 and n >= 2k+1
        BudgetExceeded: In exhaustive mode when [n, k+1] > 20
    """
    if k < 1 or n < 2 * k + 1:
        raise HypothesisViolated(f"cross lemma needs k >= 1 and n >= 2k+1, got n={n}, k={k}")
    sharp = n >= 2 * k + 2
    bound = cross_sharp_bound(n, k, q).value
    field = field_new(q)
    _check_mode(mode, gaussian_binomial(n, k + 1, q))
    rng = random.Random(seed)

    a_layer = _layer(field, n, k)
    b_layer = _layer(field, n, k + 1)
    meeting: dict[int, int] = {}

    def meets(b: int) -> int:
        if b not in meeting:
            mask = 0
            for i, a in enumerate(a_layer):
                if a.meet_dim(b_layer[b]) >= 1:
                    mask |= 1 << i
            meeting[b] = mask
        return meeting[b]

    def largest_a(chosen: list[int]) -> int:
        mask = (1 << len(a_layer)) - 1
        for b in chosen:
            mask &= meets(b)
        return mask

    report = VerificationReport(
        check="cross-lemma",
        parameters={"n": n, "k": k, "q": q},
        mode=mode,
        tested=0,
        seed=None if mode == "exhaustive" else seed,
        notes={"bound": str(bound)},
    )

    def record(chosen: list[int], a_mask: int) -> None:
        total = a_mask.bit_count() + len(chosen)
        witness = [_family(field, n, a_layer, a_mask), Family.of(field, n, (b_layer[b].subspace for b in chosen))]
        if total > bound:
            report.counterexamples.append(
                Counterexample("pair-above-bound", f"|A|+|B| = {total} > {bound}", witness)
            )
        elif total == bound:
            report.equality_cases += 1
            if sharp and len(chosen) != 1:
                report.counterexamples.append(
                    Counterexample("equality-with-several-B", f"|B|={len(chosen)} attains {bound}", witness)
                )

    extremal = largest_a([0]).bit_count() + 1
    report.notes["extremal_pair"] = str(extremal)
    if extremal > bound or (sharp and extremal != bound):
        report.counterexamples.append(
            Counterexample("extremal-pair", f"single-B pair has |A|+|B| = {extremal}, bound {bound}")
        )

    if mode == "exhaustive":
        compatible = [
            sum(1 << j for j, c in enumerate(b_layer) if j != i and b.meet_dim(c) >= 2)
            for i, b in enumerate(b_layer)
        ]
        covered = 0
        for subset in range(1, 1 << len(b_layer)):
            chosen = _indices(subset)
            if any(subset & ~compatible[i] & ~(1 << i) for i in chosen):
                continue
            a_mask = largest_a(chosen)
            covered += 1 << a_mask.bit_count()
            report.tested += 1
            record(chosen, a_mask)
        report.notes["pairs_covered"] = covered
    else:
        for _ in range(trials):
            first = rng.randrange(len(b_layer))
            pool = [j for j, c in enumerate(b_layer) if j != first and c.meet_dim(b_layer[first]) >= 2]
            rng.shuffle(pool)
            target = rng.randint(0, min(3, len(pool)))
            chosen = [first]
            for j in pool:
                if len(chosen) > target:
                    break
                if all(b_layer[j].meet_dim(b_layer[i]) >= 2 for i in chosen):
                    chosen.append(j)
            report.tested += 1
            record(sorted(chosen), largest_a(chosen))

    logger.info(
        f"Cross lemma n={n}, k={k}, q={q} ({mode}): {report.tested} B families, bound {bound}, {len(report.counterexamples)} counterexamples"
    )
    return report


def verify_disjoint_count(n: int, q: int) -> VerificationReport:
    """
    For every m >= 0, l >= 1 with m + l <= n, count the l-spaces meeting a
    fixed m-space trivially by enumeration and compare with the closed form,
    the inclusion-exclusion form and the union-bound estimate (which must be
    exact when min(m, l) = 1).
    """
    if n < 1:
        raise BadParameters(f"need n >= 1, got {n}")
    field = field_new(q)
    report = VerificationReport(
        check="disjoint-count", parameters={"n": n, "q": q}, mode="exhaustive", tested=0
    )
    for m in range(n):
        z = unit_span(field, n, range(m)) if m else zero_subspace(field, n)
        for l in range(1, n - m + 1):
            report.tested += 1
            closed = disjoint_count(n, m, l, q)
            alternating = disjoint_count_inclusion_exclusion(n, m, l, q)
            counted = sum(
                1 for w in enumerate_subspaces(field, n, l) if intersection_dim(z, w) == 0
            )
            estimate = disjoint_lower_bound(n, m, l, q)
            label = f"n={n}, m={m}, l={l}, q={q}"
            if not closed == alternating == counted:
                report.counterexamples.append(
                    Counterexample(
                        "count-mismatch",
                        f"{label}: closed {closed}, inclusion-exclusion {alternating}, enumerated {counted}",
                    )
                )
            if estimate > counted or (min(m, l) == 1 and estimate != counted):
                report.counterexamples.append(
                    Counterexample("estimate", f"{label}: estimate {estimate}, count {counted}")
                )
            logger.debug(f"{label}: {counted} disjoint {l}-spaces")
    logger.info(
        f"Disjoint count n={n}, q={q}: {report.tested} cases, {len(report.counterexamples)} counterexamples"
    )
    return report


def verify_layer_inequality(
    n: int, q: int, s: int, trials: int = 200, seed: int = 0
) -> VerificationReport:
    """
    On seeded random s-union families F check that the dual family is
    (n-s)-intersecting, that dualising twice gives F back, and that
    |F_i| + |F_{s+1-i}| <= [n, i] for 0 <= i <= s/2, with equality only when
    F_{s+1-i} is empty if s <= n-2.

    Raises:
        BadParameters: Unless 2 <= s < n
    """
    if not 2 <= s < n:
        raise BadParameters(f"need 2 <= s < n, got s={s}, n={n}")
    field = field_new(q)
    graph = CompatibilityGraph.build(field, n, [UnionConstraint(s)])
    rng = random.Random(seed)
    report = VerificationReport(
        check="layer",
        parameters={"n": n, "q": q, "s": s},
        mode="sample",
        tested=0,
        seed=seed,
    )
    for _ in range(trials):
        f = random_clique_family(graph, rng)
        report.tested += 1
        if not is_s_union(f, s):
            report.counterexamples.append(Counterexample("sample-not-s-union", "sampler produced a non-s-union family", [f]))
            continue
        d = dual(f)
        if not is_t_intersecting(d, n - s):
            report.counterexamples.append(
                Counterexample("dual-not-intersecting", f"dual is not {n - s}-intersecting", [f, d])
            )
        if dual(d) != f:
            report.counterexamples.append(Counterexample("double-dual", "dual(dual(F)) != F", [f]))
        for i in range(s // 2 + 1):
            low, high = len(layer(f, i)), len(layer(f, s + 1 - i))
            total = gaussian_binomial(n, i, q)
            if low + high > total:
                report.counterexamples.append(
                    Counterexample("layer-sum", f"i={i}: {low} + {high} > {total}", [f])
                )
            elif low + high == total:
                report.equality_cases += 1
                if s <= n - 2 and high:
                    report.counterexamples.append(
                        Counterexample("layer-equality", f"i={i}: equality with {high} members of dimension {s + 1 - i}", [f])
                    )
    logger.info(
        f"Layer check n={n}, q={q}, s={s}: {report.tested} families, {len(report.counterexamples)} counterexamples"
    )
    return report
