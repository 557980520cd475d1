"""
CLI entry point for qlattice.

Parses arguments, configures logging, and dispatches to the command handlers.
Command results go to stdout as compact JSON (default) or as tables; logs go
to stderr. Exit codes: 0 success, 1 failed check or refuted statement,
2 usage or input error.
"""

import argparse
import json
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Protocol, cast

from prettytable import PrettyTable

from .exceptions import BadParameters, ConfigurationError, QLatticeError
from .families import (
    FamilySpec,
    anchors_from_family,
    build_family,
    is_antichain,
    is_cross_sperner,
    is_cross_t_intersecting,
    is_s_union,
    is_t_intersecting,
    sizes_by_layer,
)
from .formula import recheck
from .gfq import field_new
from .logging_config import get_logger, setup_logging
from .models import SearchCertificate, VerificationReport
from .qbinom import (
    BoundReport,
    antichain_bound,
    cross_sharp_bound,
    cross_sperner_bound,
    cross_t_bound,
    ekr_bound,
    gaussian_binomial,
    gaussian_binomial_real,
    hm_bound,
    optimal_union_bound,
    suboptimal_antichain_bound,
    suboptimal_union_bound,
)
from .repro import run_repro
from .search import (
    PowersetSolver,
    SearchConfig,
    audit_certificate,
    conjecture_scan,
    max_s_union,
    max_s_union_antichain,
    max_t_intersecting,
    verify_cross_lemma,
    verify_disjoint_count,
    verify_layer_inequality,
    verify_shade_lemma,
    verify_shadow_theorem,
)
from .storage import CertificateStorage, certificate_to_document
from .subspace import Family, Subspace, enumerate_subspaces

Document = dict[str, object]


def _antichain(n: int, s: int, q: int) -> list[BoundReport]:
    if s >= n:
        raise BadParameters(f"--theorem 1.4 needs s < n, got s={s}, n={n}; use 1.5 for s = n")
    return [antichain_bound(n, s, q)]


def _full_antichain(n: int, q: int) -> list[BoundReport]:
    return [antichain_bound(n, n, q), suboptimal_antichain_bound(n, n, q)]


def _suboptimal_antichain(parity: int) -> Callable[[int, int, int], list[BoundReport]]:
    def evaluate(n: int, s: int, q: int) -> list[BoundReport]:
        if s >= n or s % 2 != parity:
            kind = "even" if parity == 0 else "odd"
            raise BadParameters(f"need an {kind} s < n, got s={s}, n={n}")
        return [suboptimal_antichain_bound(n, s, q)]

    return evaluate


def _single(evaluate: Callable[..., BoundReport]) -> Callable[..., list[BoundReport]]:
    return lambda *values: [evaluate(*values)]


# --theorem id -> (flags in call order, evaluator)
THEOREMS: dict[str, tuple[tuple[str, ...], Callable[..., list[BoundReport]]]] = {
    "1.2": (("n", "s", "q"), _single(optimal_union_bound)),
    "1.3": (("n", "s", "q"), _single(suboptimal_union_bound)),
    "1.4": (("n", "s", "q"), _antichain),
    "1.5": (("n", "q"), _full_antichain),
    "1.6": (("n", "s", "q"), _suboptimal_antichain(0)),
    "2.1": (("n", "k", "t", "q"), _single(ekr_bound)),
    "2.2": (("n", "k", "q"), _single(hm_bound)),
    "2.5": (("n", "a", "b", "q"), _single(cross_sperner_bound)),
    "2.6": (("n", "a", "b", "t", "q"), _single(cross_t_bound)),
    "2.7": (("n", "k", "q"), _single(cross_sharp_bound)),
    "conj5.1": (("n", "s", "q"), _suboptimal_antichain(1)),
}

# Descriptive names accepted next to the ids
THEOREM_ALIASES: dict[str, str] = {
    "optimal-union": "1.2",
    "suboptimal-union": "1.3",
    "antichain": "1.4",
    "full-antichain": "1.5",
    "suboptimal-antichain": "1.6",
    "ekr": "2.1",
    "hilton-milner": "2.2",
    "cross-sperner": "2.5",
    "cross-t": "2.6",
    "cross-sharp": "2.7",
    "odd-antichain": "conj5.1",
}


class CliArgs(Protocol):
    """Protocol for CLI arguments with type safety."""

    command: str
    format: str
    log_level: str
    debug: bool
    log_file: str | None
    workers: int
    seed: int

    m: int
    n: int
    k: int | None
    q: int
    s: int | None
    t: int | None
    a: int | None
    b: int | None
    d: int
    real: bool
    count_only: bool
    out: str | None
    name: str
    anchor: str | None
    pred: str
    file: str
    file2: str | None
    history: str | None
    theorem: str
    problem: str
    exclude_optimal: bool
    enumerate_all: bool
    powerset: bool
    node_budget: int | None
    check: str
    mode: str
    trials: int
    quick: bool


def parse_args(argv: Sequence[str] | None = None) -> CliArgs:
    """Parse command line arguments."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=["json", "table"],
        default="json",
        help="Output format (default: json)",
    )
    common.add_argument("--debug", action="store_true", help="Enable debug logging")
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default="WARNING",
        help="Set logging level (default: WARNING)",
    )
    common.add_argument("--log-file", help="Also log to this file (rotated)")
    common.add_argument(
        "--workers",
        type=int,
        default=1,
        help="Worker threads for branch and bound (default: 1)",
    )
    common.add_argument(
        "--seed", type=int, default=0, help="Seed for sampled checks (default: 0)"
    )

    parser = argparse.ArgumentParser(
        prog="qlattice",
        description="Extremal families in the subspace lattice of GF(q)^n",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    qbinom = commands.add_parser("qbinom", parents=[common], help="Gaussian binomial [m,k]_q")
    qbinom.add_argument("--m", type=int, required=True)
    qbinom.add_argument("--k", type=int, required=True)
    qbinom.add_argument("--q", type=int, required=True)
    qbinom.add_argument("--real", action="store_true", help="Floating-point value")

    enum = commands.add_parser("enum", parents=[common], help="Enumerate k-subspaces")
    enum.add_argument("--n", type=int, required=True)
    enum.add_argument("--k", type=int, required=True)
    enum.add_argument("--q", type=int, required=True)
    enum.add_argument("--count-only", action="store_true")
    enum.add_argument("--out", help="Write the layer in the Family text format")

    family = commands.add_parser("family", parents=[common], help="Build a named family")
    family.add_argument("--name", choices=["K", "T", "J", "A", "B", "S"], required=True)
    family.add_argument("--n", type=int, required=True)
    family.add_argument("--s", type=int, required=True)
    family.add_argument("--q", type=int, required=True)
    family.add_argument("--anchor", help="Family file whose members are the anchors")
    family.add_argument("--out", help="Write the family in the Family text format")

    check = commands.add_parser("check", parents=[common], help="Check a family predicate")
    check.add_argument(
        "--pred",
        choices=["s-union", "t-intersecting", "antichain", "cross-t", "cross-sperner"],
        required=True,
    )
    check.add_argument("--s", type=int)
    check.add_argument("--t", type=int)
    check.add_argument("--file", required=True)
    check.add_argument("--file2")

    bounds = commands.add_parser("bounds", parents=[common], help="Evaluate a closed-form bound")
    bounds.add_argument("--theorem", choices=[*THEOREMS, *THEOREM_ALIASES], required=True)
    bounds.add_argument("--n", type=int, required=True)
    bounds.add_argument("--q", type=int, required=True)
    for flag in ("--s", "--k", "--t", "--a", "--b"):
        bounds.add_argument(flag, type=int)

    search = commands.add_parser("search", parents=[common], help="Exact extremal search")
    search.add_argument("problem", choices=["max-union", "max-antichain", "max-intersecting"])
    search.add_argument("--n", type=int, required=True)
    search.add_argument("--q", type=int, required=True)
    search.add_argument("--s", type=int)
    search.add_argument("--t", type=int)
    search.add_argument("--exclude-optimal", action="store_true")
    search.add_argument("--enumerate-all", action="store_true")
    search.add_argument("--powerset", action="store_true", help="Exhaustive subset solver (<= 20 vertices)")
    search.add_argument("--node-budget", type=int, help="Stop after this many nodes")
    search.add_argument("--out", help="Write the certificate here (history goes to runs.jsonl beside it)")

    verify = commands.add_parser("verify", parents=[common], help="Brute-force lemma check")
    verify.add_argument("check", choices=["shadow", "shade", "cross-lemma", "disjoint-count", "lemma22", "layer"])
    verify.add_argument("--n", type=int, required=True)
    verify.add_argument("--k", type=int)
    verify.add_argument("--s", type=int)
    verify.add_argument("--q", type=int, required=True)
    verify.add_argument("--mode", choices=["exhaustive", "sample"], default="exhaustive")
    verify.add_argument("--trials", type=int, default=1000)

    conjecture = commands.add_parser(
        "conjecture", parents=[common], help="Scan the odd-s suboptimal antichain conjecture"
    )
    conjecture.add_argument("--n", type=int, required=True)
    conjecture.add_argument("--q", type=int, required=True)
    conjecture.add_argument("--d", type=int, required=True)
    conjecture.add_argument("--out", help="Write the certificate here")

    audit = commands.add_parser("audit", parents=[common], help="Re-check a stored certificate")
    audit.add_argument("--file", required=True, help="Certificate JSON written by --out")
    audit.add_argument("--history", help="Run history (default: runs.jsonl beside the certificate)")

    repro = commands.add_parser("repro", parents=[common], help="Run the acceptance suite")
    repro.add_argument("--quick", action="store_true", help="Skip the heavy searches")

    return cast(CliArgs, cast(object, parser.parse_args(argv)))


def _require(value: int | None, flag: str, context: str) -> int:
    if value is None:
        raise ConfigurationError(f"{flag} is required for {context}")
    return value


def _emit(args: CliArgs, document: Document, table: PrettyTable | None = None) -> None:
    if args.format == "json":
        print(json.dumps(document, separators=(",", ":"), ensure_ascii=False))
        return
    if table is None:
        table = _field_table(document)
    print(table)


def _field_table(document: Document) -> PrettyTable:
    table = PrettyTable()
    table.field_names = ["Field", "Value"]
    table.align["Field"] = "l"
    table.align["Value"] = "l"
    for key, value in document.items():
        if key == "witnesses" and isinstance(value, list):
            value = f"{len(cast(list[object], value))} (use --format json for the families)"
        elif isinstance(value, (dict, list)):
            value = json.dumps(value, separators=(",", ":"))
        table.add_row([key, value])
    return table


def _read_family(path: str) -> Family:
    with open(path, "r", encoding="utf-8") as f:
        return Family.from_text(f.read())


def _write_family(family: Family, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(family.to_text())


def _search_config(args: CliArgs) -> SearchConfig:
    return SearchConfig(
        max_workers=args.workers,
        enumerate_all=getattr(args, "enumerate_all", False),
        node_budget=getattr(args, "node_budget", None),
    )


def cmd_qbinom(args: CliArgs) -> int:
    if args.real:
        value = str(gaussian_binomial_real(float(args.m), args.k, args.q))
    else:
        value = str(gaussian_binomial(args.m, args.k, args.q))
    _emit(args, {"value": value})
    return 0


def cmd_enum(args: CliArgs) -> int:
    field = field_new(args.q)
    members = list(enumerate_subspaces(field, args.n, args.k))
    document: Document = {"n": args.n, "k": args.k, "q": args.q, "count": str(len(members))}
    if args.out:
        _write_family(Family.of(field, args.n, members), args.out)
        document["out"] = args.out
    if args.count_only or args.out:
        _emit(args, document)
        return 0

    document["subspaces"] = [str(member) for member in members]
    table = PrettyTable()
    table.field_names = ["#", "Basis"]
    table.align["#"] = "r"
    table.align["Basis"] = "l"
    for i, member in enumerate(members):
        table.add_row([i, str(member)])
    _emit(args, document, table)
    return 0


def cmd_family(args: CliArgs) -> int:
    anchors: dict[str, Subspace] = {}
    if args.anchor:
        anchors = anchors_from_family(args.name, args.s, _read_family(args.anchor))
    spec = FamilySpec(name=args.name, n=args.n, q=args.q, s=args.s, anchors=anchors)
    family = build_family(spec)
    document: Document = {"name": args.name, "n": args.n, "s": args.s, "q": args.q, "size": str(len(family))}
    document["layers"] = {str(k): count for k, count in sorted(sizes_by_layer(family).items())}
    if args.out:
        _write_family(family, args.out)
        document["out"] = args.out
    else:
        document["family"] = family.to_text()
    _emit(args, document)
    return 0


def cmd_check(args: CliArgs) -> int:
    family = _read_family(args.file)
    context = f"--pred {args.pred}"
    match args.pred:
        case "s-union":
            holds = is_s_union(family, _require(args.s, "--s", context))
        case "t-intersecting":
            holds = is_t_intersecting(family, _require(args.t, "--t", context))
        case "antichain":
            holds = is_antichain(family)
        case "cross-t":
            if args.file2 is None:
                raise ConfigurationError(f"--file2 is required for {context}")
            t = _require(args.t, "--t", context)
            holds = is_cross_t_intersecting(family, _read_family(args.file2), t)
        case _:
            if args.file2 is None:
                raise ConfigurationError(f"--file2 is required for {context}")
            holds = is_cross_sperner(family, _read_family(args.file2))
    _emit(args, {"pred": args.pred, "size": str(len(family)), "holds": holds})
    return 0 if holds else 1


def cmd_bounds(args: CliArgs) -> int:
    theorem = THEOREM_ALIASES.get(args.theorem, args.theorem)
    names, evaluate = THEOREMS[theorem]
    values = {"n": args.n, "q": args.q, "s": args.s, "k": args.k, "t": args.t, "a": args.a, "b": args.b}
    context = f"--theorem {args.theorem}"
    if theorem == "1.5" and args.s not in (None, args.n):
        raise BadParameters(f"{context} is the s = n case, got s={args.s}, n={args.n}")
    reports = evaluate(*(_require(values[name], f"--{name}", context) for name in names))

    parts: list[Document] = []
    for report in reports:
        part = report.to_document()
        part["formula_ok"] = recheck(report)
        parts.append(part)
    document = {"id": theorem, **parts[0]}
    if len(parts) > 1:
        document["parts"] = parts
    _emit(args, document)
    return 0 if all(part["formula_ok"] for part in parts) else 1


def _certificate_output(certificate: SearchCertificate, out: str | None) -> Document:
    if out:
        CertificateStorage(Path(out)).save(certificate)
    return cast(Document, cast(object, certificate_to_document(certificate)))


def cmd_search(args: CliArgs) -> int:
    config = _search_config(args)
    solver = PowersetSolver(enumerate_all=args.enumerate_all) if args.powerset else None
    context = f"search {args.problem}"
    match args.problem:
        case "max-union":
            certificate = max_s_union(
                args.n,
                args.q,
                _require(args.s, "--s", context),
                exclude_optimal=args.exclude_optimal,
                enumerate_all=args.enumerate_all,
                config=config,
                solver=solver,
            )
        case "max-antichain":
            certificate = max_s_union_antichain(
                args.n,
                args.q,
                _require(args.s, "--s", context),
                exclude_layers=args.exclude_optimal,
                enumerate_all=args.enumerate_all,
                config=config,
                solver=solver,
            )
        case _:
            if args.exclude_optimal or solver is not None:
                raise ConfigurationError(f"{context} takes neither --exclude-optimal nor --powerset")
            certificate = max_t_intersecting(
                args.n, args.q, _require(args.t, "--t", context), args.enumerate_all, config
            )
    _emit(args, _certificate_output(certificate, args.out))
    return 0


def _report_output(args: CliArgs, report: VerificationReport) -> int:
    document = report.to_document()
    table = None
    if args.format == "table":
        table = _field_table({k: v for k, v in document.items() if k != "counterexamples"})
        table.add_row(["counterexamples", len(report.counterexamples)])
    _emit(args, document, table)
    return 0 if report.passed else 1


def cmd_verify(args: CliArgs) -> int:
    context = f"verify {args.check}"
    match args.check:
        case "shadow":
            report = verify_shadow_theorem(
                args.n, _require(args.k, "--k", context), args.q, args.mode, args.trials, args.seed
            )
        case "shade":
            report = verify_shade_lemma(
                args.n, _require(args.k, "--k", context), args.q, args.mode, args.trials, args.seed
            )
        case "cross-lemma":
            report = verify_cross_lemma(
                args.n, _require(args.k, "--k", context), args.q, args.mode, args.trials, args.seed
            )
        case "disjoint-count" | "lemma22":
            report = verify_disjoint_count(args.n, args.q)
        case _:
            report = verify_layer_inequality(
                args.n, args.q, _require(args.s, "--s", context), args.trials, args.seed
            )
    return _report_output(args, report)


def cmd_conjecture(args: CliArgs) -> int:
    certificate = conjecture_scan(args.n, args.q, args.d, config=_search_config(args))
    _emit(args, _certificate_output(certificate, args.out))
    return 0 if certificate.verdicts.get("status") == "confirmed" else 1


def cmd_audit(args: CliArgs) -> int:
    storage = CertificateStorage(Path(args.file), Path(args.history) if args.history else None)
    certificate = storage.load()
    if certificate is None:
        raise ConfigurationError(f"no readable certificate at {args.file}")
    failures = audit_certificate(certificate)
    history = list(storage.load_history())
    document: Document = {
        "problem": certificate.problem,
        "parameters": dict(certificate.parameters),
        "maximum": certificate.maximum,
        "witnesses": len(certificate.witnesses),
        "holds": not failures,
        "failures": failures,
        "history": {"runs": storage.get_history_count(), "valid": len(history)},
    }
    table = PrettyTable()
    table.field_names = ["Problem", "Maximum", "Witnesses", "Holds", "Runs"]
    table.add_row(
        [certificate.problem, certificate.maximum, len(certificate.witnesses), not failures, len(history)]
    )
    _emit(args, document, table)
    return 1 if failures else 0


def cmd_repro(args: CliArgs) -> int:
    results = run_repro(quick=args.quick, config=_search_config(args))
    document: Document = {
        "quick": args.quick,
        "results": [
            {"case": r.name, "status": r.status, "detail": r.detail, "seconds": round(r.seconds, 3)}
            for r in results
        ],
    }
    table = PrettyTable()
    table.field_names = ["Case", "Status", "Time (s)", "Detail"]
    table.align["Case"] = "l"
    table.align["Time (s)"] = "r"
    table.align["Detail"] = "l"
    for r in results:
        table.add_row([r.name, r.status, f"{r.seconds:.1f}", r.detail])
    _emit(args, document, table)
    return 1 if any(r.status == "fail" for r in results) else 0


HANDLERS: dict[str, Callable[[CliArgs], int]] = {
    "qbinom": cmd_qbinom,
    "enum": cmd_enum,
    "family": cmd_family,
    "check": cmd_check,
    "bounds": cmd_bounds,
    "search": cmd_search,
    "verify": cmd_verify,
    "conjecture": cmd_conjecture,
    "audit": cmd_audit,
    "repro": cmd_repro,
}


def run(argv: Sequence[str] | None = None) -> int:
    """Parse argv, run one command and return its exit code."""
    args = parse_args(argv)
    setup_logging(
        level=args.log_level,
        debug=args.debug,
        log_file=Path(args.log_file) if args.log_file else None,
    )
    logger = get_logger("main")
    logger.debug(f"Running {args.command}")

    try:
        return HANDLERS[args.command](args)
    except QLatticeError as e:
        logger.error(f"{args.command} failed: {type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        logger.warning("Interrupted by user")
        print("\nInterrupted by user", file=sys.stderr)
        return 1


def main() -> None:
    """Main CLI entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
