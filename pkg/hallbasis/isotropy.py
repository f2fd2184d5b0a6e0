from __future__ import annotations

import logging
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from .invariants import (
    BASE_DEGREES,
    BASIS_DEGREES,
    BASIS_NAMES,
    hall_invariants,
    hemitropic_invariants,
    relative_deviation,
)
from .models import FuzzReport
from .tensor_core import (
    HallTensor,
    hall_from_components,
    hall_tensor_norm,
    random_orthogonal,
    rotate_hall,
    transform_identity_check,
)
from .workers import derive_seed, parallel_map

logger = logging.getLogger("hallbasis.isotropy")

_POOL_STREAM = 0
_ROTATION_STREAM = 1
_HEMITROPIC = ("I1", "I3", "J3")


class TrialResult(NamedTuple):
    deviations: Tuple[float, ...]  # one per basis invariant, BASIS_NAMES order
    hemitropy: float
    identity: float


def random_hall_tensor(rng: np.random.Generator, bound: int = 5) -> HallTensor:
    """Integer components uniform in [-bound, bound]."""
    return hall_from_components([float(x) for x in rng.integers(-bound, bound + 1, size=9)])


def tensor_pool(seed: int, count: int, bound: int = 5) -> List[HallTensor]:
    rng = np.random.default_rng(derive_seed(seed, _POOL_STREAM))
    return [random_hall_tensor(rng, bound) for _ in range(count)]


def trial_det_sign(trial: int) -> int:
    return 1 if trial % 2 == 0 else -1


def run_trial(seed: int, trial: int, k: HallTensor) -> TrialResult:
    """
    One random orthogonal Q applied to K. Deviations are scaled by
    max(1, |f(K)|, |K|^deg) so that near-zero values of high degree do not
    blow up the relative error.
    """
    det = trial_det_sign(trial)
    q = random_orthogonal(derive_seed(seed, _ROTATION_STREAM, trial), det)
    rotated = rotate_hall(q, k)
    norm = hall_tensor_norm(k)

    before = hall_invariants(k)
    after = hall_invariants(rotated)
    deviations = tuple(
        relative_deviation(float(a), float(b), norm ** BASIS_DEGREES[n])
        for n, a, b in zip(BASIS_NAMES, after, before)
    )

    hemitropy = 0.0
    for name, a, b in zip(_HEMITROPIC, hemitropic_invariants(rotated), hemitropic_invariants(k)):
        deg = BASE_DEGREES[name]
        expected = det ** deg * float(b)
        hemitropy = max(hemitropy, relative_deviation(float(a), expected, norm ** deg))

    identity = transform_identity_check(q, k)
    return TrialResult(deviations, hemitropy, identity)


def run_isotropy_fuzz(
    seed: int = 0,
    trials: int = 1000,
    tensor_count: int = 100,
    tol: float = 1e-8,
    identity_tol: float = 1e-10,
    bound: int = 5,
    max_workers: Optional[int] = None,
) -> FuzzReport:
    """
    Apply `trials` random orthogonal tensors, alternating det +1 / -1, to a pool of
    random integer Hall tensors. Checks the ten basis invariants for isotropy,
    (I1, I3, J3) for hemitropy and A(<Q>K) = det(Q) <Q>A(K).
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if tensor_count < 1:
        raise ValueError(f"tensor_count must be >= 1, got {tensor_count}")
    pool = tensor_pool(seed, tensor_count, bound)
    results = parallel_map(lambda i: run_trial(seed, i, pool[i % tensor_count]), range(trials), max_workers)

    per_invariant: Dict[str, float] = {n: 0.0 for n in BASIS_NAMES}
    max_hemitropy = 0.0
    max_identity = 0.0
    for r in results:
        for n, d in zip(BASIS_NAMES, r.deviations):
            per_invariant[n] = max(per_invariant[n], d)
        max_hemitropy = max(max_hemitropy, r.hemitropy)
        max_identity = max(max_identity, r.identity)

    max_dev = max(per_invariant.values())
    passed = max_dev <= tol and max_hemitropy <= tol and max_identity <= identity_tol
    log = logger.info if passed else logger.warning
    log(
        "isotropy fuzz: %d trials, max deviation %.3e, hemitropy %.3e, identity residual %.3e -> %s",
        trials, max_dev, max_hemitropy, max_identity, "PASS" if passed else "FAIL",
    )
    return FuzzReport(
        seed=seed,
        trials=trials,
        tensor_count=tensor_count,
        tolerance=tol,
        max_relative_deviation=max_dev,
        per_invariant=per_invariant,
        max_hemitropy_deviation=max_hemitropy,
        max_identity_residual=max_identity,
        passed=passed,
    )
