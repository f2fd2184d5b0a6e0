from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from .errors import ExactArithmeticError

# Exact scalars are plain `fractions.Fraction` values: always reduced, positive denominator, 0 == 0/1.
Rational = Fraction
RationalLike = Union[Fraction, int, str, float]


def rational(value: RationalLike, denominator: int = 1) -> Fraction:
    """
    Build a reduced Fraction from an int, a Fraction, a decimal literal, a "p/q" string
    or a finite float (taken by its shortest decimal repr, so 0.1 -> 1/10).
    """
    if denominator == 0:
        raise ExactArithmeticError("zero denominator")
    try:
        if isinstance(value, Fraction):
            base = value
        elif isinstance(value, bool):
            raise TypeError("bool is not a rational value")
        elif isinstance(value, numbers.Integral):
            base = Fraction(int(value))
        elif isinstance(value, float):
            if not math.isfinite(value):
                raise ValueError(f"non-finite value {value!r}")
            base = Fraction(repr(value))
        elif isinstance(value, str):
            base = Fraction(value.strip())
        else:
            raise TypeError(f"unsupported rational value {value!r}")
    except ZeroDivisionError as e:
        raise ExactArithmeticError(f"zero denominator in {value!r}") from e
    return base / denominator if denominator != 1 else base


# ===== scalar operations =====

def add(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def mul(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def neg(a: Fraction) -> Fraction:
    return -a


def invert(a: Fraction) -> Fraction:
    if a == 0:
        raise ExactArithmeticError("cannot invert zero")
    return 1 / a


def compare(a: Fraction, b: Fraction) -> int:
    """Three-way comparison: -1, 0 or 1."""
    return (a > b) - (a < b)


def is_dyadic(a: Fraction) -> bool:
    d = a.denominator
    return d & (d - 1) == 0


# ===== matrices =====

@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"matrix shape must be positive, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalLike]]) -> "RationalMatrix":
        if not rows:
            raise ValueError("matrix needs at least one row")
        n_cols = len(rows[0])
        if any(len(r) != n_cols for r in rows):
            raise ValueError("ragged rows")
        entries = tuple(rational(x) for r in rows for x in r)
        return cls(len(rows), n_cols, entries)

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols,
            self.rows,
            tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def without_column(self, col: int) -> "RationalMatrix":
        if self.cols < 2:
            raise ValueError("cannot drop the only column")
        kept = [
            self.at(i, j)
            for i in range(self.rows)
            for j in range(self.cols)
            if j != col
        ]
        return RationalMatrix(self.rows, self.cols - 1, tuple(kept))

    def with_rows(self, extra: Iterable[Sequence[RationalLike]]) -> "RationalMatrix":
        return RationalMatrix.from_rows(self.to_rows() + [list(r) for r in extra])

    def to_float_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.entries], dtype=np.float64).reshape(self.rows, self.cols)


def _integer_rows(m: RationalMatrix) -> List[List[int]]:
    # scaling a row by a nonzero constant leaves the rank unchanged
    out: List[List[int]] = []
    for i in range(m.rows):
        row = m.row(i)
        scale = math.lcm(*(x.denominator for x in row))
        out.append([x.numerator * (scale // x.denominator) for x in row])
    return out


def exact_rank(m: RationalMatrix) -> int:
    """
    Rank over the rationals by fraction-free (Bareiss) elimination.
    Rows are first cleared of denominators; every later division by the previous
    pivot is exact, so all intermediates stay integers.
    """
    a = _integer_rows(m)
    n_rows, n_cols = m.rows, m.cols
    rank = 0
    prev_pivot = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot_row = max(range(rank, n_rows), key=lambda r: abs(a[r][col]))
        if a[pivot_row][col] == 0:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        pivot = a[rank][col]
        top = a[rank]
        for r in range(rank + 1, n_rows):
            cur = a[r]
            factor = cur[col]
            for c in range(col + 1, n_cols):
                cur[c] = (pivot * cur[c] - factor * top[c]) // prev_pivot
            cur[col] = 0
        prev_pivot = pivot
        rank += 1
    return rank


def float_rank(m: RationalMatrix, threshold: float = 1e-8) -> int:
    """Singular-value rank; singular values below threshold * s_max count as zero."""
    s = np.linalg.svd(m.to_float_array(), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > threshold * s[0]))
