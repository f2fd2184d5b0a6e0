from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidTensorError, UnsupportedDegreeError
from .exact_rational import RationalMatrix, exact_rank, float_rank
from .invariants import BASIS_DEGREES, BASIS_NAMES, TenInvariants, hall_invariants
from .models import MinimalityReport, PointSource, RankReport
from .tensor_core import HallTensor, hall_from_components
from .workers import derive_seed, parallel_map

logger = logging.getLogger("hallbasis.irreducibility")

SUPPORTED_DEGREES: Tuple[int, ...] = (2, 4, 6)
EXPECTED_COUNTS: Dict[int, int] = {2: 3, 4: 9, 6: 23}

_DEGREE_2 = ("I2", "J2", "K2")
_DEGREE_4 = ("I4", "J4", "K4")
_DEGREE_6 = ("I6", "J6", "K6", "L6")


@dataclass(frozen=True)
class Monomial:
    """Product of basis invariants; exponents kept in basis order."""
    exponents: Tuple[Tuple[str, int], ...]

    @classmethod
    def of(cls, *names: str) -> "Monomial":
        counts: Dict[str, int] = {}
        for n in names:
            if n not in BASIS_DEGREES:
                raise ValueError(f"unknown basis invariant {n!r}")
            counts[n] = counts.get(n, 0) + 1
        return cls(tuple((n, counts[n]) for n in BASIS_NAMES if n in counts))

    @property
    def degree(self) -> int:
        return sum(BASIS_DEGREES[n] * e for n, e in self.exponents)

    @property
    def label(self) -> str:
        return "*".join(n if e == 1 else f"{n}^{e}" for n, e in self.exponents)

    def evaluate(self, values: TenInvariants):
        v = values._asdict()
        out = 1
        for n, e in self.exponents:
            out = out * v[n] ** e
        return out


@dataclass(frozen=True)
class SamplePoint:
    """A point of R^9 read as the nine Hall components in canonical order."""
    coords: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != 9:
            raise InvalidTensorError(f"sample point needs 9 coordinates, got {len(self.coords)}")
        for i, x in enumerate(self.coords):
            if isinstance(x, bool) or int(x) != x:
                raise InvalidTensorError(f"sample point coordinate {i} is not an integer: {x!r}", index=i)
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))

    def tensor(self) -> HallTensor:
        return hall_from_components(self.coords, exact=True)


# Sample points of the degree-2, degree-4 and degree-6 irreducibility systems.
SAMPLE_POINTS: Dict[int, Tuple[Tuple[int, ...], ...]] = {
    2: (
        (-2, 3, 5, 0, -5, -4, -5, 2, -2),
        (-3, 0, 1, 1, 2, -4, 3, 0, 3),
        (-2, 0, -1, 2, 1, -3, 5, 2, 3),
    ),
    4: (
        (4, 1, -3, 1, -4, -2, -1, 0, -5),
        (1, 5, 4, 0, -1, -5, -3, 5, -2),
        (-4, 4, -4, 1, -5, -2, 2, 3, 4),
        (-4, -5, 5, 5, -2, 3, 5, -1, 2),
        (0, 4, 3, 3, 1, -2, 3, 5, -4),
        (5, -3, 3, 3, -4, -2, 3, 5, -5),
        (-3, -2, 2, 4, -4, 1, 4, 2, 0),
        (-5, -3, 4, -1, 1, -2, -2, -3, 0),
        (0, -2, -2, 1, 5, 3, 4, 0, 0),
    ),
    6: (
        (3, -5, 1, 4, 2, 3, 3, 1, -3),
        (-5, -1, 2, -5, -2, 3, 3, 4, -1),
        (-4, 2, 1, -3, -2, -2, 1, 4, -1),
        (-2, 0, 3, 2, -2, -2, -5, 5, 2),
        (-2, -5, -5, -4, 3, -5, -3, 2, -3),
        (5, -4, 1, 3, -4, 1, -1, 4, 0),
        (-3, 3, 5, -3, -3, 1, 2, -2, -3),
        (2, 2, -5, 4, 4, -1, -5, 4, -5),
        (-2, -1, 2, 3, -2, -1, -2, -2, 5),
        (-4, -3, -4, -2, -5, -5, 5, -2, -3),
        (3, 2, -2, -5, 5, -3, 0, -2, -5),
        (4, -4, -1, 4, -4, 0, 1, 3, -1),
        (3, 0, -5, 0, 2, -5, -5, 4, 1),
        (-4, 5, -5, 2, -1, -4, -5, -2, -5),
        (2, -5, -5, 5, 0, 2, 2, 3, 4),
        (1, 4, 4, -1, -5, -3, 4, -5, 1),
        (-2, 5, -5, 1, -2, 1, 0, -5, 4),
        (0, -4, -5, 0, -5, -2, -2, -2, 2),
        (1, 2, 1, -1, 3, -4, -5, 4, 5),
        (3, -3, 1, -3, -5, 3, 5, 1, 1),
        (0, -1, 3, 0, -3, 5, 3, 0, 3),
        (1, -5, -4, -1, 0, -1, -5, -5, 2),
        (-4, -2, 3, 4, 5, -3, 4, 3, 3),
    ),
}


def _check_degree(degree: int) -> None:
    if degree not in SUPPORTED_DEGREES:
        raise UnsupportedDegreeError(f"degree must be one of {SUPPORTED_DEGREES}, got {degree}")


def monomial_basis(degree: int) -> List[Monomial]:
    """
    Candidate monomials of the given total degree, in a fixed column order:
    products of degree-2 invariants first, then degree-2 x degree-4 products,
    then the invariants of that degree themselves.
    """
    _check_degree(degree)
    if degree == 2:
        out = [Monomial.of(n) for n in _DEGREE_2]
    elif degree == 4:
        squares = [Monomial.of(n, n) for n in _DEGREE_2]
        cross = [Monomial.of(a, b) for a, b in itertools.combinations(_DEGREE_2, 2)]
        out = squares + cross + [Monomial.of(n) for n in _DEGREE_4]
    else:
        triples = [Monomial.of(*c) for c in itertools.combinations_with_replacement(_DEGREE_2, 3)]
        mixed = [Monomial.of(a, b) for a, b in itertools.product(_DEGREE_2, _DEGREE_4)]
        out = triples + mixed + [Monomial.of(n) for n in _DEGREE_6]
    assert len(out) == EXPECTED_COUNTS[degree], f"degree {degree}: {len(out)} monomials"
    return out


def paper_points(degree: int) -> List[SamplePoint]:
    _check_degree(degree)
    return [SamplePoint(p) for p in SAMPLE_POINTS[degree]]


def random_points(degree: int, count: int, seed: int, bound: int = 5) -> List[SamplePoint]:
    """Uniform integer points in [-bound, bound]^9, one RNG stream per degree."""
    _check_degree(degree)
    rng = np.random.default_rng(derive_seed(seed, degree))
    draws = rng.integers(-bound, bound + 1, size=(count, 9))
    return [SamplePoint(tuple(int(x) for x in row)) for row in draws]


def evaluate_monomial(m: Monomial, y: SamplePoint) -> Fraction:
    return m.evaluate(hall_invariants(y.tensor()))


def _row(monomials: Sequence[Monomial], y: SamplePoint) -> List[Fraction]:
    values = hall_invariants(y.tensor())
    return [m.evaluate(values) for m in monomials]


def build_matrix(degree: int, points: Sequence[SamplePoint], max_workers: Optional[int] = None) -> RationalMatrix:
    """Row i, column j: j-th monomial of monomial_basis(degree) at point i."""
    monomials = monomial_basis(degree)
    if not points:
        raise ValueError("at least one sample point is required")
    rows = parallel_map(lambda y: _row(monomials, y), points, max_workers)
    return RationalMatrix(len(rows), len(monomials), tuple(x for r in rows for x in r))


def rank_report(degree: int, points: Sequence[SamplePoint], max_workers: Optional[int] = None,
                float_threshold: float = 1e-8) -> RankReport:
    m = build_matrix(degree, points, max_workers)
    rank = exact_rank(m)
    frank = float_rank(m, float_threshold)
    if frank != rank:
        logger.warning("degree %d: floating rank %d disagrees with exact rank %d", degree, frank, rank)
    passed = rank == m.cols
    if not passed:
        logger.warning("degree %d: RANK DEFICIT, rank %d < %d monomials", degree, rank, m.cols)
    return RankReport(
        degree=degree,
        monomial_count=m.cols,
        point_count=m.rows,
        rank=rank,
        float_rank=frank,
        passed=passed,
        points=[list(p.coords) for p in points],
    )


def column_deletion_ranks(degree: int, points: Sequence[SamplePoint], max_workers: Optional[int] = None) -> List[int]:
    """Exact rank after deleting each column in turn."""
    m = build_matrix(degree, points, max_workers)
    return [exact_rank(m.without_column(j)) for j in range(m.cols)]


def verify_minimality(
    source: PointSource = PointSource.PAPER,
    seed: int = 0,
    rows_multiplier: int = 2,
    bound: int = 5,
    max_workers: Optional[int] = None,
    float_threshold: float = 1e-8,
) -> MinimalityReport:
    """
    Exact ranks of the degree-2, 4 and 6 coefficient matrices; passes iff every
    matrix has full column rank (3, 9, 23).
    """
    source = PointSource(source)
    reports = []
    for degree in SUPPORTED_DEGREES:
        if source is PointSource.PAPER:
            points = paper_points(degree)
        else:
            points = random_points(degree, rows_multiplier * EXPECTED_COUNTS[degree], seed, bound)
        report = rank_report(degree, points, max_workers, float_threshold)
        logger.info("degree %d: rank %d of %d (%s points)", degree, report.rank, report.monomial_count, source.value)
        reports.append(report)
    random_source = source is PointSource.RANDOM
    return MinimalityReport(
        source=source,
        seed=seed if random_source else None,
        rows_multiplier=rows_multiplier if random_source else None,
        ranks=[r.rank for r in reports],
        passed=all(r.passed for r in reports),
        reports=reports,
    )
