from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence, Tuple, Union

import numpy as np

from .errors import InvalidTensorError, NotOrthogonalError
from .exact_rational import rational

logger = logging.getLogger("hallbasis.tensor_core")

Scalar = Union[float, Fraction]

ORTHOGONALITY_TOL = 1e-12
SKEW_TOL = 1e-12

# Canonical order of the nine independent components (1-based index labels).
COMPONENT_LABELS: Tuple[str, ...] = (
    "k121", "k122", "k123",
    "k131", "k132", "k133",
    "k231", "k232", "k233",
)
_PAIR_SLOT = {(1, 2): 0, (1, 3): 1, (2, 3): 2}
_PAIRS = ((0, 1), (0, 2), (1, 2))


def levi_civita() -> np.ndarray:
    """Right-handed permutation symbol, eps[0, 1, 2] = +1."""
    eps = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[i, j, k] = 1.0
        eps[j, i, k] = -1.0
    return eps


def _is_exact(values: Sequence[Any]) -> bool:
    return any(isinstance(v, Fraction) for v in values)


def _matrix(values: Any, exact: bool) -> np.ndarray:
    if exact:
        flat = [rational(v) for v in np.asarray(values, dtype=object).ravel()]
        arr = np.empty(len(flat), dtype=object)
        arr[:] = flat
        arr = arr.reshape(np.shape(values))
    else:
        arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


# ===== value types =====

@dataclass(frozen=True)
class HallTensor:
    """
    Third-order 3D tensor with k_ijk = -k_jik, stored as its nine independent
    components in COMPONENT_LABELS order. Entries are floats, or Fractions for exact work.
    """
    components: Tuple[Scalar, ...]

    @property
    def exact(self) -> bool:
        return _is_exact(self.components)

    def full_component(self, i: int, j: int, k: int) -> Scalar:
        """k_ijk with 1-based indices."""
        if any(isinstance(n, bool) or n not in (1, 2, 3) for n in (i, j, k)):
            raise InvalidTensorError(f"component indices must be in 1..3, got ({i!r}, {j!r}, {k!r})")
        zero = 0 * self.components[0]
        if i == j:
            return zero
        if (i, j) in _PAIR_SLOT:
            return self.components[3 * _PAIR_SLOT[(i, j)] + k - 1]
        return -self.components[3 * _PAIR_SLOT[(j, i)] + k - 1]

    def full_tensor(self) -> np.ndarray:
        """All 27 components as a (3, 3, 3) array (object dtype when exact)."""
        exact = self.exact
        out = np.zeros((3, 3, 3), dtype=object if exact else np.float64)
        if exact:
            out[...] = Fraction(0)
        for slot, (a, b) in enumerate(_PAIRS):
            for k in range(3):
                v = self.components[3 * slot + k]
                out[a, b, k] = v
                out[b, a, k] = -v
        return out

    def scaled(self, factor: Scalar) -> "HallTensor":
        return HallTensor(tuple(factor * c for c in self.components))

    def to_float(self) -> "HallTensor":
        return HallTensor(tuple(float(c) for c in self.components))


@dataclass(frozen=True, eq=False)
class SecondOrderTensor:
    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries)
        if arr.shape != (3, 3):
            raise InvalidTensorError(f"second order tensor must be 3x3, got shape {arr.shape}")
        exact = arr.dtype == object and _is_exact(arr.ravel().tolist())
        if not exact:
            arr = np.asarray(arr, dtype=np.float64)
            bad = np.flatnonzero(~np.isfinite(arr))
            if bad.size:
                raise InvalidTensorError(f"non-finite entry at flat index {int(bad[0])}", index=int(bad[0]))
        object.__setattr__(self, "entries", _matrix(arr, exact))

    @property
    def exact(self) -> bool:
        return self.entries.dtype == object

    @property
    def T(self) -> "SecondOrderTensor":
        return SecondOrderTensor(self.entries.T)

    def trace(self) -> Scalar:
        t = self.entries.trace()
        return t if self.exact else float(t)

    def __add__(self, other: "SecondOrderTensor") -> "SecondOrderTensor":
        return SecondOrderTensor(self.entries + other.entries)

    def __sub__(self, other: "SecondOrderTensor") -> "SecondOrderTensor":
        return SecondOrderTensor(self.entries - other.entries)

    def __matmul__(self, other: "SecondOrderTensor") -> "SecondOrderTensor":
        return SecondOrderTensor(self.entries @ other.entries)

    def __repr__(self) -> str:
        return f"SecondOrderTensor({self.entries.tolist()!r})"


@dataclass(frozen=True)
class OrthogonalTensor:
    q: SecondOrderTensor
    det_sign: int = 1

    def __post_init__(self) -> None:
        if self.det_sign not in (1, -1):
            raise ValueError(f"det_sign must be +1 or -1, got {self.det_sign}")
        q = np.asarray(self.q.entries, dtype=np.float64)
        deviation = float(np.max(np.abs(q.T @ q - np.eye(3))))
        if deviation > ORTHOGONALITY_TOL:
            raise NotOrthogonalError(f"Q^T Q deviates from I by {deviation:.3e}", deviation)
        det_dev = abs(float(np.linalg.det(q)) - self.det_sign)
        if det_dev > ORTHOGONALITY_TOL:
            raise NotOrthogonalError(
                f"det(Q) deviates from {self.det_sign:+d} by {det_dev:.3e}", det_dev
            )

    @property
    def matrix(self) -> np.ndarray:
        return np.asarray(self.q.entries, dtype=np.float64)


def as_vector3(values: Sequence[float]) -> np.ndarray:
    """Current density J, magnetic field H or electric field E."""
    v = np.array(values, dtype=np.float64)
    if v.shape != (3,):
        raise InvalidTensorError(f"vector must have 3 entries, got shape {v.shape}")
    bad = np.flatnonzero(~np.isfinite(v))
    if bad.size:
        raise InvalidTensorError(f"non-finite vector entry at index {int(bad[0])}", index=int(bad[0]))
    return v


# ===== constructors =====

def hall_from_components(c: Sequence[Any], exact: bool = False) -> HallTensor:
    if len(c) != 9:
        raise InvalidTensorError(f"a Hall tensor has 9 independent components, got {len(c)}")
    if exact or _is_exact(c):
        try:
            return HallTensor(tuple(rational(x) for x in c))
        except (TypeError, ValueError, ZeroDivisionError) as e:
            bad = next((i for i, x in enumerate(c) if not _rational_ok(x)), 0)
            raise InvalidTensorError(f"invalid entry {COMPONENT_LABELS[bad]}={c[bad]!r}: {e}", index=bad) from e
    values = []
    for i, x in enumerate(c):
        try:
            f = float(x)
        except (TypeError, ValueError) as e:
            raise InvalidTensorError(f"invalid entry {COMPONENT_LABELS[i]}={x!r}", index=i) from e
        if not math.isfinite(f):
            raise InvalidTensorError(f"non-finite entry {COMPONENT_LABELS[i]}={x!r}", index=i)
        values.append(f)
    return HallTensor(tuple(values))


def _rational_ok(x: Any) -> bool:
    try:
        rational(x)
        return True
    except (TypeError, ValueError, ZeroDivisionError):
        return False


def hall_from_full(full: np.ndarray, tol: float = SKEW_TOL) -> HallTensor:
    """Compress a (3, 3, 3) array skew in its first two indices back to nine components."""
    full = np.asarray(full)
    if full.shape != (3, 3, 3):
        raise InvalidTensorError(f"expected a (3, 3, 3) array, got shape {full.shape}")
    residual = skew_residual(full)
    if residual > tol:
        raise InvalidTensorError(f"array is not skew in its first two indices (residual {residual:.3e})")
    return hall_from_components([full[a, b, k] for a, b in _PAIRS for k in range(3)])


def skew_residual(full: np.ndarray) -> float:
    full = np.asarray(full, dtype=np.float64)
    return float(np.max(np.abs(full + full.transpose(1, 0, 2))))


def orthogonal_from_matrix(m: Any) -> OrthogonalTensor:
    arr = np.array(m, dtype=np.float64)
    sign = 1 if np.linalg.det(arr) > 0 else -1
    return OrthogonalTensor(SecondOrderTensor(arr), sign)


def random_orthogonal(seed: int, det_sign: int = 1) -> OrthogonalTensor:
    """
    Orthonormalize a Gaussian 3x3 draw (QR with the R-diagonal sign fix, which makes Q Haar
    distributed), then negate the first row if the determinant has the wrong sign.
    """
    if det_sign not in (1, -1):
        raise ValueError(f"det_sign must be +1 or -1, got {det_sign}")
    attempt = 0
    while True:
        rng = np.random.default_rng([seed & 0xFFFF_FFFF_FFFF_FFFF, attempt])
        z = rng.standard_normal((3, 3))
        q, r = np.linalg.qr(z)
        d = np.diag(r)
        if np.min(np.abs(d)) > 1e-8:
            break
        logger.debug("degenerate Gaussian draw for seed %d, retrying", seed)
        attempt += 1
    q = q * np.sign(d)
    if np.sign(np.linalg.det(q)) != det_sign:
        q[0, :] = -q[0, :]
    return OrthogonalTensor(SecondOrderTensor(q), det_sign)


# ===== Levi-Civita correspondence =====

def associated_tensor(k: HallTensor) -> SecondOrderTensor:
    """
    A = 1/2 eps K, a_ij = 1/2 eps_kli k_klj. Row-wise:
    (k231, k232, k233), (-k131, -k132, -k133), (k121, k122, k123).
    """
    c = k.components
    rows = [
        [c[6], c[7], c[8]],
        [-c[3], -c[4], -c[5]],
        [c[0], c[1], c[2]],
    ]
    return SecondOrderTensor(_matrix(rows, k.exact))


def hall_from_tensor(a: SecondOrderTensor) -> HallTensor:
    """K = eps A, k_ijk = eps_ijl a_lk; exact inverse of associated_tensor."""
    e = a.entries
    comps = (
        e[2, 0], e[2, 1], e[2, 2],
        -e[1, 0], -e[1, 1], -e[1, 2],
        e[0, 0], e[0, 1], e[0, 2],
    )
    if a.exact:
        return HallTensor(tuple(comps))
    return HallTensor(tuple(float(x) for x in comps))


def sym_skew_split(a: SecondOrderTensor) -> Tuple[SecondOrderTensor, SecondOrderTensor]:
    e = a.entries
    return SecondOrderTensor((e + e.T) / 2), SecondOrderTensor((e - e.T) / 2)


# ===== orthogonal transformations =====

def transform_third_order(q: OrthogonalTensor, full: np.ndarray) -> np.ndarray:
    """(<Q>X)_ijk = q_ia q_jb q_kc x_abc over all 27 components."""
    m = q.matrix
    return np.einsum("ia,jb,kc,abc->ijk", m, m, m, np.asarray(full, dtype=np.float64))


def rotate_hall(q: OrthogonalTensor, k: HallTensor) -> HallTensor:
    out = transform_third_order(q, k.to_float().full_tensor())
    return hall_from_full(out, tol=max(SKEW_TOL, SKEW_TOL * float(np.max(np.abs(out)))))


def rotate_tensor2(q: OrthogonalTensor, a: SecondOrderTensor) -> SecondOrderTensor:
    m = q.matrix
    return SecondOrderTensor(m @ np.asarray(a.entries, dtype=np.float64) @ m.T)


def transform_identity_check(q: OrthogonalTensor, k: HallTensor) -> float:
    """Max-abs residual of A(<Q>K) - det(Q) <Q>A(K); zero in exact arithmetic."""
    lhs = np.asarray(associated_tensor(rotate_hall(q, k)).entries, dtype=np.float64)
    rhs = q.det_sign * rotate_tensor2(q, associated_tensor(k.to_float())).entries
    return float(np.max(np.abs(lhs - rhs)))


# ===== constitutive law =====

def hall_field(k: HallTensor, current: Sequence[float], magnetic: Sequence[float]) -> np.ndarray:
    """Hall law E_i = k_ijk J_j H_k."""
    j = as_vector3(current)
    h = as_vector3(magnetic)
    return np.einsum("ijk,j,k->i", k.to_float().full_tensor(), j, h)


def hall_tensor_norm(k: HallTensor) -> float:
    """Frobenius norm of the full 27-component tensor."""
    return float(np.linalg.norm(k.to_float().full_tensor()))


def identity_orthogonal(det_sign: int = 1) -> OrthogonalTensor:
    return OrthogonalTensor(SecondOrderTensor(det_sign * np.eye(3)), det_sign)


def epsilon_hall() -> HallTensor:
    """The Hall tensor k_ijk = eps_ijk, i.e. A = I."""
    return hall_from_full(levi_civita())


def zero_hall(exact: bool = False) -> HallTensor:
    return hall_from_components([0] * 9, exact=exact)
