"""
Maximum-clique solvers.

BranchAndBoundSolver is the production path: greedy colouring bounds over
bitset candidate sets, vertices pre-ordered by descending degree, optional
forcing of closure sets, and a worker pool over the top-level branches that
shares a monotone incumbent. PowersetSolver walks every subset of a small graph
and serves as an independent cross-check.
"""

import threading
from concurrent.futures import Future, ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field

from typing_extensions import override

from ..exceptions import BudgetExceeded, ConfigurationError
from ..interfaces import CliqueSolver
from ..logging_config import get_logger
from ..models import CliqueOutcome
from .graph import VERTEX_BUDGET, CompatibilityGraph

# Module-level logger
logger = get_logger("solvers")

POWERSET_EXPONENT = 20


@dataclass
class SearchConfig:
    """Configuration for an extremal search."""

    max_workers: int = 1  # threads over top-level branches
    enumerate_all: bool = False  # report every maximum clique, not just one
    use_closure: bool = True  # force closure sets in when constraints allow it
    vertex_budget: int = VERTEX_BUDGET
    node_budget: int | None = None  # stop early, marking the result incomplete

    def __post_init__(self) -> None:
        """Validate configuration."""
        if self.max_workers <= 0:
            raise ConfigurationError(
                f"max_workers must be positive, got {self.max_workers}"
            )
        if self.vertex_budget <= 0:
            raise ConfigurationError(
                f"vertex_budget must be positive, got {self.vertex_budget}"
            )
        if self.node_budget is not None and self.node_budget <= 0:
            raise ConfigurationError(
                f"node_budget must be positive, got {self.node_budget}"
            )


class _Incumbent:
    """Best feasible clique size seen by any worker; only ever increases."""

    def __init__(self) -> None:
        self._lock: threading.Lock = threading.Lock()
        self.best: int = 0
        self.nodes: int = 0

    def offer(self, size: int) -> None:
        with self._lock:
            if size > self.best:
                self.best = size

    def count_node(self) -> int:
        with self._lock:
            self.nodes += 1
            return self.nodes


@dataclass
class _Branch:
    """One top-level branch and the state its worker accumulates."""

    index: int
    vertex: int
    bound: int
    candidates: int
    local_best: int = -1
    cliques: list[int] = field(default_factory=list)
    nodes: int = 0
    aborted: bool = False


def color_sort(adjacency: list[int], candidates: int) -> tuple[list[int], list[int]]:
    """
    Greedy sequential colouring of the candidate set.

    Vertices are taken lowest index first (highest degree first, given the
    graph ordering). Returns vertices in colour order and, for each, the
    number of the colour class it landed in.
    """
    order: list[int] = []
    colors: list[int] = []
    uncolored = candidates
    color = 0
    while uncolored:
        color += 1
        available = uncolored
        while available:
            low = available & -available
            v = low.bit_length() - 1
            available &= ~adjacency[v] & ~low
            uncolored &= ~low
            order.append(v)
            colors.append(color)
    return order, colors


def _is_excluded(mask: int, exclusions: tuple[int, ...]) -> bool:
    return any(mask & ~excluded == 0 for excluded in exclusions)


class BranchAndBoundSolver(CliqueSolver):
    """Colouring-bound branch and bound over bitsets."""

    def __init__(self, config: SearchConfig | None = None):
        self.config: SearchConfig = config or SearchConfig()

    @override
    def solve(
        self,
        graph: CompatibilityGraph,
        exclusions: tuple[int, ...] = (),
        closure: tuple[int, ...] | None = None,
    ) -> CliqueOutcome:
        root = graph.all_mask
        if root == 0 or _is_excluded(root, exclusions):
            cliques = [] if exclusions else [0]
            return CliqueOutcome(0, cliques, 1, True)

        branches = self._root_branches(graph, root)
        incumbent = _Incumbent()
        logger.debug(
            f"Branch and bound: {graph.size} vertices, {len(branches)} root branches, {len(exclusions)} exclusions"
        )

        if self.config.max_workers == 1:
            for branch in branches:
                self._run_branch(graph, branch, incumbent, exclusions, closure)
        else:
            with ThreadPoolExecutor(max_workers=self.config.max_workers) as executor:
                futures = dict[Future[None], int]()
                for branch in branches:
                    future = executor.submit(
                        self._run_branch, graph, branch, incumbent, exclusions, closure
                    )
                    futures[future] = branch.index
                for future in as_completed(futures):
                    future.result()

        return self._collect(branches, bool(exclusions))

    def _root_branches(self, graph: CompatibilityGraph, root: int) -> list[_Branch]:
        order, colors = color_sort(graph.adjacency, root)
        branches: list[_Branch] = []
        remaining = root
        for i in range(len(order) - 1, -1, -1):
            v = order[i]
            branches.append(
                _Branch(
                    index=len(branches),
                    vertex=v,
                    bound=colors[i],
                    candidates=remaining & graph.adjacency[v],
                )
            )
            remaining &= ~(1 << v)
        return branches

    def _prune(self, branch: _Branch, incumbent: _Incumbent, bound: int) -> bool:
        if bound < incumbent.best:
            return True
        return not self.config.enumerate_all and bound <= branch.local_best

    def _run_branch(
        self,
        graph: CompatibilityGraph,
        branch: _Branch,
        incumbent: _Incumbent,
        exclusions: tuple[int, ...],
        closure: tuple[int, ...] | None,
    ) -> None:
        if self._prune(branch, incumbent, branch.bound):
            return
        clique, size, candidates = self._take(
            1 << branch.vertex, 1, branch.candidates, branch.vertex, closure
        )
        self._expand(graph, branch, incumbent, exclusions, closure, clique, size, candidates)

    @staticmethod
    def _take(
        clique: int, size: int, candidates: int, v: int, closure: tuple[int, ...] | None
    ) -> tuple[int, int, int]:
        if closure is not None:
            forced = closure[v] & candidates
            if forced:
                clique |= forced
                size += forced.bit_count()
                candidates &= ~forced
        return clique, size, candidates

    def _expand(
        self,
        graph: CompatibilityGraph,
        branch: _Branch,
        incumbent: _Incumbent,
        exclusions: tuple[int, ...],
        closure: tuple[int, ...] | None,
        clique: int,
        size: int,
        candidates: int,
    ) -> None:
        branch.nodes += 1
        budget = self.config.node_budget
        if budget is not None and incumbent.count_node() > budget:
            branch.aborted = True
            return

        if candidates == 0:
            self._record(branch, incumbent, exclusions, clique, size)
            return
        if exclusions and _is_excluded(clique | candidates, exclusions):
            return

        adjacency = graph.adjacency
        order, colors = color_sort(adjacency, candidates)
        for i in range(len(order) - 1, -1, -1):
            if branch.aborted or self._prune(branch, incumbent, size + colors[i]):
                return
            v = order[i]
            bit = 1 << v
            child = self._take(clique | bit, size + 1, candidates & adjacency[v], v, closure)
            self._expand(graph, branch, incumbent, exclusions, closure, *child)
            candidates &= ~bit

    def _record(
        self,
        branch: _Branch,
        incumbent: _Incumbent,
        exclusions: tuple[int, ...],
        clique: int,
        size: int,
    ) -> None:
        if exclusions and _is_excluded(clique, exclusions):
            return
        if size > branch.local_best:
            branch.local_best = size
            branch.cliques = [clique]
            incumbent.offer(size)
        elif size == branch.local_best and self.config.enumerate_all:
            branch.cliques.append(clique)

    def _collect(self, branches: list[_Branch], excluded: bool) -> CliqueOutcome:
        nodes = 1 + sum(b.nodes for b in branches)
        complete = not any(b.aborted for b in branches)
        if not complete:
            logger.warning(f"Node budget {self.config.node_budget} exhausted; result is incomplete")

        maximum = max(b.local_best for b in branches)
        if maximum < 0:
            # No feasible non-empty clique; the empty family is feasible only
            # without exclusions.
            return CliqueOutcome(0, [] if excluded else [0], nodes, complete)

        winners = [b for b in branches if b.local_best == maximum]
        if self.config.enumerate_all:
            cliques = sorted({c for b in winners for c in b.cliques})
        else:
            cliques = [winners[0].cliques[0]]
        return CliqueOutcome(maximum, cliques, nodes, complete)


class PowersetSolver(CliqueSolver):
    """Checks every subset of the vertex set; for graphs of at most 20 vertices."""

    def __init__(self, enumerate_all: bool = False, exponent_budget: int = POWERSET_EXPONENT):
        self.enumerate_all: bool = enumerate_all
        self.exponent_budget: int = exponent_budget

    @override
    def solve(
        self,
        graph: CompatibilityGraph,
        exclusions: tuple[int, ...] = (),
        closure: tuple[int, ...] | None = None,
    ) -> CliqueOutcome:
        size = graph.size
        if size > self.exponent_budget:
            raise BudgetExceeded(
                f"powerset of {size} vertices exceeds 2^{self.exponent_budget}"
            )
        adjacency = graph.adjacency
        is_clique = bytearray(1 << size)
        is_clique[0] = 1
        best = -1 if exclusions else 0
        cliques: list[int] = [] if exclusions else [0]
        for mask in range(1, 1 << size):
            low = mask & -mask
            rest = mask ^ low
            if not is_clique[rest] or rest & ~adjacency[low.bit_length() - 1]:
                continue
            is_clique[mask] = 1
            if exclusions and _is_excluded(mask, exclusions):
                continue
            count = mask.bit_count()
            if count > best:
                best, cliques = count, [mask]
            elif count == best and self.enumerate_all:
                cliques.append(mask)
        logger.debug(f"Powerset search over {size} vertices: maximum {max(best, 0)}")
        return CliqueOutcome(max(best, 0), sorted(cliques), 1 << size, True)
