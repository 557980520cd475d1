"""
Second evaluation path for bound formulas.

A BoundReport renders its formula over G(m,k,q), integer constants, + - * **
and max(...). This module parses that text with a restricted AST walker and
evaluates G by the q-Pascal recurrence rather than the product formula, so a
transcription slip in either path shows up as a mismatch.
"""

import ast
import functools
import operator
from collections.abc import Callable

from .exceptions import FormulaError
from .logging_config import get_logger
from .qbinom import BoundReport

# Module-level logger
logger = get_logger("formula")

MAX_EXPONENT = 10_000

_BINARY: dict[type[ast.operator], Callable[[int, int], int]] = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Pow: operator.pow,
}


@functools.lru_cache(maxsize=4096)
def pascal_gaussian(m: int, k: int, q: int) -> int:
    """[m, k]_q from [a, k] = [a-1, k-1] + q^k [a-1, k]."""
    if m < 0 or k < 0:
        raise FormulaError(f"G({m},{k},{q}) has a negative argument")
    if k > m:
        return 0
    row = [1] + [0] * k
    for a in range(1, m + 1):
        for j in range(min(a, k), 0, -1):
            row[j] = row[j - 1] + q**j * row[j]
    return row[k]


def _evaluate(node: ast.expr) -> int:
    match node:
        case ast.Constant(value=value) if type(value) is int:
            return value
        case ast.UnaryOp(op=ast.USub(), operand=operand):
            return -_evaluate(operand)
        case ast.BinOp(left=left, op=op, right=right) if type(op) in _BINARY:
            lhs, rhs = _evaluate(left), _evaluate(right)
            if isinstance(op, ast.Pow) and not 0 <= rhs <= MAX_EXPONENT:
                raise FormulaError(f"exponent {rhs} out of range")
            return _BINARY[type(op)](lhs, rhs)
        case ast.Call(func=ast.Name(id="G"), args=args, keywords=[]) if len(args) == 3:
            m, k, q = (_evaluate(arg) for arg in args)
            return pascal_gaussian(m, k, q)
        case ast.Call(func=ast.Name(id="max"), args=args, keywords=[]) if args:
            return max(_evaluate(arg) for arg in args)
        case _:
            raise FormulaError(f"unsupported expression: {ast.dump(node)}")


def evaluate_formula(text: str) -> int:
    """Evaluate a rendered bound formula exactly."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as e:
        raise FormulaError(f"cannot parse formula {text!r}: {e}") from e
    return _evaluate(tree.body)


def recheck(report: BoundReport) -> bool:
    """True iff the rendered formula reproduces the reported value."""
    value = evaluate_formula(report.formula)
    if value != report.value:
        logger.warning(
            f"{report.theorem_id} {report.parameters}: formula gives {value}, report says {report.value}"
        )
    return value == report.value
