"""
Exact arithmetic in GF(q) and row reduction over it.

Elements are integer codes 0..q-1. For q = p^e with e > 1 a code packs the
polynomial coefficients of the element little-endian in base p, reduced modulo
the Conway polynomial for (p, e). Every operation is a table lookup.
"""

import functools
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import numpy.typing as npt

from .exceptions import EntryOutOfRange, FieldError, NotPrimePower, ValidationError
from .logging_config import get_logger

# Module-level logger
logger = get_logger("gfq")

MAX_ORDER = 256

# Conway polynomials, monic, coefficients from the constant term upward.
CONWAY_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}

Table = npt.NDArray[np.int64]


@dataclass(frozen=True, eq=False)
class Field:
    """
    The finite field GF(q) with total operation tables.

    Two fields compare equal iff they have the same order; the tables are a
    function of q alone.
    """

    q: int
    p: int
    e: int
    modulus: tuple[int, ...] | None
    add_table: Table = field(repr=False)
    mul_table: Table = field(repr=False)
    neg_table: Table = field(repr=False)
    inv_table: Table = field(repr=False)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("GF", self.q))

    def __str__(self) -> str:
        return f"GF({self.q})"

    # Nested tuples for the pure-Python hot loops in row reduction.
    @cached_property
    def add_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(row) for row in self.add_table.tolist())

    @cached_property
    def mul_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(row) for row in self.mul_table.tolist())

    @cached_property
    def neg_row(self) -> tuple[int, ...]:
        return tuple(self.neg_table.tolist())

    @cached_property
    def inv_row(self) -> tuple[int, ...]:
        return tuple(self.inv_table.tolist())

    def add(self, a: int, b: int) -> int:
        return self.add_rows[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_rows[a][self.neg_row[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_rows[a][b]

    def neg(self, a: int) -> int:
        return self.neg_row[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        return self.inv_row[a]

    def check_entries(self, entries: Sequence[int]) -> None:
        """Raise EntryOutOfRange unless every entry is an element code."""
        for entry in entries:
            if not 0 <= entry < self.q:
                raise EntryOutOfRange(f"entry {entry} is not an element of {self}")


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise NotPrimePower."""
    if q < 2 or q > MAX_ORDER:
        raise NotPrimePower(f"q must be a prime power in [2, {MAX_ORDER}], got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    rest = q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise NotPrimePower(f"{q} has at least two distinct prime divisors")
    return p, e


def _generator_powers(p: int, e: int, modulus: tuple[int, ...]) -> list[int]:
    """Codes of x^0, x^1, ..., x^(q-2) reduced modulo the given polynomial."""
    coeffs = [1] + [0] * (e - 1)
    powers: list[int] = []
    for _ in range(p**e - 1):
        powers.append(sum(c * p**i for i, c in enumerate(coeffs)))
        top = coeffs[-1]
        coeffs = [0] + coeffs[:-1]
        if top:
            coeffs = [(c - top * m) % p for c, m in zip(coeffs, modulus[:-1])]
    return powers


@functools.lru_cache(maxsize=None)
def field_new(q: int) -> Field:
    """
    Build GF(q).

    Args:
        q: Field order, a prime power with 2 <= q <= 256

    Returns:
        Field with add/mul/neg/inv tables over codes 0..q-1

    Raises:
        NotPrimePower: If q is not a prime power in range
    """
    p, e = factor_prime_power(q)
    codes = np.arange(q, dtype=np.int64)
    weights = p ** np.arange(e, dtype=np.int64)
    digits = (codes[:, None] // weights[None, :]) % p
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights

    modulus: tuple[int, ...] | None = None
    if e == 1:
        mul = (codes[:, None] * codes[None, :]) % p
    else:
        modulus = CONWAY_POLYNOMIALS[(p, e)]
        powers = _generator_powers(p, e, modulus)
        if len(set(powers)) != q - 1:
            raise FieldError(f"polynomial {modulus} is not primitive over GF({p})")
        exp = np.array(powers, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        mul[1:, 1:] = exp[(log[1:, None] + log[None, 1:]) % (q - 1)]

    neg = np.argmax(add == 0, axis=1).astype(np.int64)
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = np.argmax(mul[1:] == 1, axis=1)
    if not np.all(mul[codes[1:], inv[1:]] == 1):
        raise FieldError(f"multiplication table for q={q} has non-invertible elements")

    for table in (add, mul, neg, inv):
        table.setflags(write=False)

    logger.debug(f"Built GF({q}) as GF({p})^{e}")
    return Field(
        q=q,
        p=p,
        e=e,
        modulus=modulus,
        add_table=add,
        mul_table=mul,
        neg_table=neg,
        inv_table=inv,
    )


@dataclass(frozen=True)
class Matrix:
    """Row-major matrix of element codes."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        """Validate shape."""
        if self.rows < 0 or self.cols < 0:
            raise ValidationError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValidationError(
                f"{len(self.entries)} entries do not fill a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "Matrix":
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        for row in rows:
            if len(row) != width:
                raise ValidationError(f"row {list(row)} does not have {width} columns")
        return cls(len(rows), width, tuple(x for row in rows for x in row))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_array(self) -> npt.NDArray[np.int64]:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)


def reduce_rows(
    f: Field, rows: list[list[int]], cols: int
) -> tuple[list[list[int]], list[int]]:
    """
    Gauss-Jordan elimination in place.

    Returns the nonzero rows of the reduced row echelon form and their pivot
    columns.
    """
    add, mul, neg, inv = f.add_rows, f.mul_rows, f.neg_row, f.inv_row
    pivots: list[int] = []
    rank = 0
    for col in range(cols):
        if rank == len(rows):
            break
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        if lead != 1:
            scale = mul[inv[lead]]
            rows[rank] = [scale[x] for x in rows[rank]]
        pivot_row = rows[rank]
        for r in range(len(rows)):
            factor = rows[r][col]
            if r != rank and factor:
                times = mul[neg[factor]]
                rows[r] = [add[x][times[y]] for x, y in zip(rows[r], pivot_row)]
        pivots.append(col)
        rank += 1
    return rows[:rank], pivots


def rref(f: Field, m: Matrix) -> tuple[Matrix, int]:
    """
    Reduced row echelon form of m over f.

    Pivots are 1, pivot columns are zero elsewhere and zero rows are dropped.

    Raises:
        EntryOutOfRange: If m holds a code outside 0..q-1
    """
    f.check_entries(m.entries)
    reduced, pivots = reduce_rows(f, m.to_rows(), m.cols)
    return Matrix.from_rows(reduced, m.cols), len(pivots)
