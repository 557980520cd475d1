"""
Extremal searches over the subspace lattice.

Each search builds a compatibility graph for its constraint set, encodes the
"not contained in an optimal family" clauses as exclusion masks, hands the
graph to a clique solver, and re-checks every witness with the literal family
predicates before issuing a SearchCertificate.
"""

import dataclasses
import functools
from collections.abc import Callable, Sequence

from ..constraints import AntichainConstraint, IntersectingConstraint, UnionConstraint
from ..exceptions import CertificateFormatError, ParametersOutOfRange, SoundnessError
from ..families import build_B, escapes_every_katona
from ..gfq import field_new
from ..interfaces import CliqueSolver, Constraint
from ..logging_config import get_logger
from ..models import SearchCertificate
from ..qbinom import suboptimal_antichain_bound
from ..subspace import Family, enumerate_subspaces
from .graph import CompatibilityGraph
from .solvers import BranchAndBoundSolver, SearchConfig

# Module-level logger
logger = get_logger("extremal")

EscapeCheck = Callable[[Family], bool]


def _configure(config: SearchConfig | None, enumerate_all: bool) -> SearchConfig:
    base = config or SearchConfig()
    return dataclasses.replace(base, enumerate_all=enumerate_all)


def _canonical_order(families: list[Family]) -> list[Family]:
    return sorted(families, key=lambda f: tuple(m.key for m in f))


def _run(
    problem: str,
    parameters: dict[str, int],
    graph: CompatibilityGraph,
    config: SearchConfig,
    exclusions: tuple[int, ...] = (),
    exclusion: str | None = None,
    escapes: EscapeCheck | None = None,
    solver: CliqueSolver | None = None,
) -> SearchCertificate:
    solver = solver or BranchAndBoundSolver(config)
    closure = graph.closure_masks() if config.use_closure else None
    logger.info(
        f"Searching {problem} {parameters} over {graph.size} vertices"
        + (f", excluding {exclusion} ({len(exclusions)} masks)" if exclusion else "")
    )
    outcome = solver.solve(graph, exclusions, closure)
    witnesses = _canonical_order([graph.family_of(mask) for mask in outcome.cliques])
    _recheck(witnesses, graph.constraints, escapes)

    logger.info(
        f"{problem} {parameters}: maximum {outcome.maximum}, {len(witnesses)} witness(es), {outcome.nodes_explored} nodes, complete={outcome.complete}"
    )
    return SearchCertificate(
        problem=problem,
        parameters=parameters,
        constraints=[c.name for c in graph.constraints],
        exclusion=exclusion,
        maximum=outcome.maximum,
        witnesses=witnesses,
        nodes_explored=outcome.nodes_explored,
        complete=outcome.complete,
        solver=type(solver).__name__,
    )


def _recheck(
    witnesses: Sequence[Family],
    constraints: Sequence[Constraint],
    escapes: EscapeCheck | None,
) -> None:
    for witness in witnesses:
        for constraint in constraints:
            if not constraint.holds(witness):
                raise SoundnessError(f"witness fails {constraint.name}:\n{witness.to_text()}")
        if escapes is not None and not escapes(witness):
            raise SoundnessError(f"witness lies inside an excluded family:\n{witness.to_text()}")


def _katona_exclusions(graph: CompatibilityGraph, s: int) -> tuple[int, ...]:
    d = s // 2
    low = graph.mask_where(lambda v: v.dim <= d)
    if s % 2 == 0:
        return (low,)
    masks: list[int] = []
    for line in (v for v in graph.vertices if v.dim == 1):
        masks.append(low | graph.mask_where(lambda v: v.dim == d + 1 and line.lies_in(v)))
    return tuple(masks)


def max_s_union(
    n: int,
    q: int,
    s: int,
    exclude_optimal: bool = False,
    enumerate_all: bool = False,
    config: SearchConfig | None = None,
    solver: CliqueSolver | None = None,
) -> SearchCertificate:
    """
    Largest s-union family in L(F_q^n).

    With exclude_optimal the family must not lie inside any Katona family
    K[n,s] (for odd s, inside K[n,s](E) for any line E).

    Raises:
        ParametersOutOfRange: Unless 2 <= s < n
        BudgetExceeded: If the graph has more than the vertex budget
    """
    if not 2 <= s < n:
        raise ParametersOutOfRange(f"max-union needs 2 <= s < n, got s={s}, n={n}")
    config = _configure(config, enumerate_all)
    graph = CompatibilityGraph.build(field_new(q), n, [UnionConstraint(s)], config.vertex_budget)
    parameters = {"n": n, "q": q, "s": s}
    if not exclude_optimal:
        return _run("max-union", parameters, graph, config, solver=solver)
    return _run(
        "max-union",
        parameters,
        graph,
        config,
        exclusions=_katona_exclusions(graph, s),
        exclusion="katona",
        escapes=lambda w: escapes_every_katona(w, s),
        solver=solver,
    )


def max_t_intersecting(
    n: int,
    q: int,
    t: int,
    enumerate_all: bool = False,
    config: SearchConfig | None = None,
) -> SearchCertificate:
    """Largest t-intersecting family in L(F_q^n), the dual problem of max_s_union."""
    if not 0 <= t < n:
        raise ParametersOutOfRange(f"max-intersecting needs 0 <= t < n, got t={t}, n={n}")
    config = _configure(config, enumerate_all)
    graph = CompatibilityGraph.build(
        field_new(q), n, [IntersectingConstraint(t)], config.vertex_budget
    )
    return _run("max-intersecting", {"n": n, "q": q, "t": t}, graph, config)


@functools.lru_cache(maxsize=32)
def optimal_antichains(n: int, q: int, s: int) -> tuple[Family, ...]:
    """Every maximum s-union antichain, found by exhaustive enumeration."""
    certificate = max_s_union_antichain(n, q, s, exclude_layers=False, enumerate_all=True)
    logger.debug(f"{len(certificate.witnesses)} optimal {s}-union antichains at n={n}, q={q}")
    return tuple(certificate.witnesses)


def _not_inside_layers(layers: Sequence[int]) -> EscapeCheck:
    return lambda w: all(any(m.k != i for m in w) for i in layers)


def max_s_union_antichain(
    n: int,
    q: int,
    s: int,
    exclude_layers: bool = False,
    enumerate_all: bool = False,
    config: SearchConfig | None = None,
    solver: CliqueSolver | None = None,
) -> SearchCertificate:
    """
    Largest s-union antichain in L(F_q^n).

    With exclude_layers the family must escape the optimal ones: for s = n
    neither middle layer, for even s = 2d < n not inside [V,d], and for odd
    s < n not inside any optimal s-union antichain (enumerated first).

    Raises:
        ParametersOutOfRange: Unless 2 <= s <= n
        BudgetExceeded: If the graph has more than the vertex budget
    """
    if not 2 <= s <= n:
        raise ParametersOutOfRange(f"max-antichain needs 2 <= s <= n, got s={s}, n={n}")
    config = _configure(config, enumerate_all)
    graph = CompatibilityGraph.build(
        field_new(q), n, [UnionConstraint(s), AntichainConstraint()], config.vertex_budget
    )
    parameters = {"n": n, "q": q, "s": s}
    if not exclude_layers:
        return _run("max-antichain", parameters, graph, config, solver=solver)

    if s == n or s % 2 == 0:
        layers = sorted({n // 2, (n + 1) // 2}) if s == n else [s // 2]
        return _run(
            "max-antichain",
            parameters,
            graph,
            config,
            exclusions=tuple(graph.layer_mask(i) for i in layers),
            exclusion="layers " + ",".join(str(i) for i in layers),
            escapes=_not_inside_layers(layers),
            solver=solver,
        )

    optimal = optimal_antichains(n, q, s)
    return _run(
        "max-antichain",
        parameters,
        graph,
        config,
        exclusions=tuple(graph.mask_of(f) for f in optimal),
        exclusion=f"optimal-antichains ({len(optimal)})",
        escapes=lambda w: not any(w.issubset(f) for f in optimal),
        solver=solver,
    )


def conjecture_scan(n: int, q: int, d: int, config: SearchConfig | None = None) -> SearchCertificate:
    """
    Adjudicate the conjectured suboptimal (2d+1)-union antichain bound.

    Enumerates every maximum (2d+1)-union antichain that escapes all optimal
    ones and reports whether the maximum equals [n,d] - q[d,1] and whether
    every witness is a B[n,2d+1] for some anchor.

    Raises:
        ParametersOutOfRange: Unless d >= 1 and 2d+1 < n
    """
    s = 2 * d + 1
    if d < 1 or s >= n:
        raise ParametersOutOfRange(f"conjecture scan needs d >= 1 and 2d+1 < n, got d={d}, n={n}")
    certificate = max_s_union_antichain(n, q, s, exclude_layers=True, enumerate_all=True, config=config)
    conjectured = suboptimal_antichain_bound(n, s, q).value

    b_orbit = {build_B(n, s, q, W) for W in enumerate_subspaces(field_new(q), n, d + 1)}
    matching = sum(1 for w in certificate.witnesses if w in b_orbit)
    total = len(certificate.witnesses)
    verdicts: dict[str, bool | int | str] = {
        "conjectured_maximum": str(conjectured),
        "maximum_matches": certificate.maximum == conjectured,
        "witness_count": total,
        "b_orbit_witnesses": matching,
        "all_match_B": total > 0 and matching == total,
        "counterexamples": total - matching,
    }
    confirmed = bool(verdicts["maximum_matches"]) and bool(verdicts["all_match_B"])
    verdicts["status"] = "confirmed" if confirmed else "refuted"
    logger.info(f"Conjecture scan n={n}, q={q}, d={d}: {verdicts}")
    return dataclasses.replace(
        certificate,
        problem="conjecture",
        parameters={"n": n, "q": q, "d": d, "s": s},
        verdicts=verdicts,
    )


def constraint_from_name(name: str) -> Constraint:
    """
    Rebuild a constraint from the label it records in certificates.

    Raises:
        CertificateFormatError: If the label names no known constraint
    """
    if name == "antichain":
        return AntichainConstraint()
    value, _, kind = name.partition("-")
    if value.isdigit() and kind == "union":
        return UnionConstraint(int(value))
    if value.isdigit() and kind == "intersecting":
        return IntersectingConstraint(int(value))
    raise CertificateFormatError(f"unknown constraint label {name!r}")


def _exclusion_check(certificate: SearchCertificate) -> EscapeCheck | None:
    exclusion = certificate.exclusion
    if exclusion == "katona":
        s = certificate.parameters["s"]
        return lambda w: escapes_every_katona(w, s)
    if exclusion is not None and exclusion.startswith("layers "):
        return _not_inside_layers([int(i) for i in exclusion.removeprefix("layers ").split(",")])
    return None


def audit_certificate(certificate: SearchCertificate) -> list[str]:
    """
    Re-check every witness of a stored certificate with the literal predicates.

    Katona and layer exclusions are re-checked too; exclusions against
    enumerated optimal families are not. Returns one message per failure.
    """
    constraints = [constraint_from_name(name) for name in certificate.constraints]
    escapes = _exclusion_check(certificate)
    failures: list[str] = []
    for index, witness in enumerate(certificate.witnesses):
        failures += [
            f"witness {index} fails {c.name}" for c in constraints if not c.holds(witness)
        ]
        if escapes is not None and not escapes(witness):
            failures.append(f"witness {index} lies inside an excluded family ({certificate.exclusion})")
    if failures:
        logger.warning(f"Audit of {certificate.problem} certificate: {len(failures)} failure(s)")
    return failures
