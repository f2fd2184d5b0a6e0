from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, NamedTuple, Tuple

import numpy as np

from .tensor_core import HallTensor, Scalar, SecondOrderTensor, associated_tensor, sym_skew_split


class SevenInvariants(NamedTuple):
    """Integrity basis of the associated second order tensor A = T + W."""
    I1: Scalar  # tr T
    I2: Scalar  # tr T^2
    J2: Scalar  # tr W^2
    I3: Scalar  # tr T^3
    J3: Scalar  # tr T W^2
    I4: Scalar  # tr T^2 W^2
    I6: Scalar  # tr T^2 W^2 T W


class TenInvariants(NamedTuple):
    """Isotropic minimal integrity basis of the Hall tensor."""
    I2: Scalar
    J2: Scalar
    K2: Scalar  # I1^2
    I4: Scalar
    J4: Scalar  # I1 I3
    K4: Scalar  # I1 J3
    I6: Scalar
    J6: Scalar  # I3^2
    K6: Scalar  # J3^2
    L6: Scalar  # I3 J3


BASE_NAMES: Tuple[str, ...] = SevenInvariants._fields
BASIS_NAMES: Tuple[str, ...] = TenInvariants._fields

BASE_DEGREES: Dict[str, int] = {"I1": 1, "I2": 2, "J2": 2, "I3": 3, "J3": 3, "I4": 4, "I6": 6}
BASIS_DEGREES: Dict[str, int] = {
    "I2": 2, "J2": 2, "K2": 2,
    "I4": 4, "J4": 4, "K4": 4,
    "I6": 6, "J6": 6, "K6": 6, "L6": 6,
}


@dataclass(frozen=True)
class DegreeTable:
    basis: Dict[str, int]
    base: Dict[str, int]

    def degree(self, name: str) -> int:
        if name in self.basis:
            return self.basis[name]
        return self.base[name]

    def is_hemitropic_only(self, name: str) -> bool:
        """
        Base invariants of odd degree in A are only hemitropic invariants of K:
        an improper Q flips their sign.
        """
        return name in self.base and self.base[name] % 2 == 1


def invariant_degrees() -> DegreeTable:
    return DegreeTable(basis=dict(BASIS_DEGREES), base=dict(BASE_DEGREES))


def _tr(m: np.ndarray, exact: bool) -> Scalar:
    t = m.trace()
    return t if exact else float(t)


def _trace_polynomials(t: np.ndarray, w: np.ndarray, exact: bool) -> SevenInvariants:
    # one definition for both float64 and Fraction (object) arrays
    t2 = t @ t
    w2 = w @ w
    t2w2 = t2 @ w2
    return SevenInvariants(
        I1=_tr(t, exact),
        I2=_tr(t2, exact),
        J2=_tr(w2, exact),
        I3=_tr(t2 @ t, exact),
        J3=_tr(t @ w2, exact),
        I4=_tr(t2w2, exact),
        I6=_tr(t2w2 @ t @ w, exact),
    )


def base_invariants(a: SecondOrderTensor) -> SevenInvariants:
    t, w = sym_skew_split(a)
    return _trace_polynomials(t.entries, w.entries, a.exact)


def basis_from_base(b: SevenInvariants) -> TenInvariants:
    return TenInvariants(
        I2=b.I2,
        J2=b.J2,
        K2=b.I1 * b.I1,
        I4=b.I4,
        J4=b.I1 * b.I3,
        K4=b.I1 * b.J3,
        I6=b.I6,
        J6=b.I3 * b.I3,
        K6=b.J3 * b.J3,
        L6=b.I3 * b.J3,
    )


def hall_invariants(k: HallTensor) -> TenInvariants:
    return basis_from_base(base_invariants(associated_tensor(k)))


def hemitropic_invariants(k: HallTensor) -> Tuple[Scalar, Scalar, Scalar]:
    """(I1, I3, J3) of A(K); invariant under rotations, sign-flipped by reflections."""
    b = base_invariants(associated_tensor(k))
    return b.I1, b.I3, b.J3


def relative_deviation(value: float, reference: float, scale: float = 1.0) -> float:
    """|value - reference| / max(1, |reference|, scale)."""
    return abs(value - reference) / max(1.0, abs(reference), scale)
