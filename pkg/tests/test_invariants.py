from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import int_components, integer_hall
from hallbasis.invariants import (
    BASIS_DEGREES,
    BASIS_NAMES,
    base_invariants,
    basis_from_base,
    hall_invariants,
    hemitropic_invariants,
    invariant_degrees,
    relative_deviation,
)
from hallbasis.tensor_core import (
    SecondOrderTensor,
    associated_tensor,
    epsilon_hall,
    hall_from_components,
    zero_hall,
)


def test_names_and_degrees():
    assert BASIS_NAMES == ("I2", "J2", "K2", "I4", "J4", "K4", "I6", "J6", "K6", "L6")
    table = invariant_degrees()
    assert [table.degree(n) for n in BASIS_NAMES] == [2, 2, 2, 4, 4, 4, 6, 6, 6, 6]
    assert table.degree("I1") == 1 and table.degree("J3") == 3
    assert [n for n in ("I1", "I2", "J2", "I3", "J3", "I4", "I6") if table.is_hemitropic_only(n)] == ["I1", "I3", "J3"]
    assert not table.is_hemitropic_only("K2")


def test_zero_tensor():
    assert all(v == 0 for v in hall_invariants(zero_hall()))
    assert all(v == 0 for v in hall_invariants(zero_hall(exact=True)))


def test_epsilon_tensor():
    # A = I: T = I, W = 0
    assert tuple(hall_invariants(epsilon_hall())) == (3, 0, 9, 0, 9, 0, 0, 9, 0, 0)


def test_symmetric_pair_has_only_i2():
    v = hall_invariants(hall_from_components([0, 0, 0, -1, 0, 0, 0, 1, 0]))
    assert v.I2 == 2
    assert all(getattr(v, n) == 0 for n in BASIS_NAMES if n != "I2")


def test_first_degree_two_sample_point():
    v = hall_invariants(integer_hall([-2, 3, 5, 0, -5, -4, -5, 2, -2], exact=True))
    assert v.I2 == Fraction(219, 2)
    assert isinstance(v.I6, Fraction)


def test_base_invariants_by_hand():
    # T = diag(1, 2, 3), W with w12 = 1
    a = SecondOrderTensor(np.array([[1.0, 1.0, 0.0], [-1.0, 2.0, 0.0], [0.0, 0.0, 3.0]]))
    b = base_invariants(a)
    assert b.I1 == 6
    assert b.I2 == 14
    assert b.J2 == -2
    assert b.I3 == 36
    assert b.J3 == -3  # W^2 = diag(-1, -1, 0)
    assert b.I4 == -5
    assert b.I6 == 0
    ten = basis_from_base(b)
    assert ten.K2 == 36 and ten.J4 == 216 and ten.K4 == -18
    assert ten.J6 == 36 * 36 and ten.K6 == 9 and ten.L6 == -108


@settings(max_examples=100, deadline=None)
@given(int_components)
def test_float_and_exact_paths_agree(c):
    exact = hall_invariants(integer_hall(c, exact=True))
    approx = hall_invariants(integer_hall(c))
    size = max(1.0, float(sum(x * x for x in c)))
    for name, e, f in zip(BASIS_NAMES, exact, approx):
        assert float(e) == pytest.approx(f, rel=1e-12, abs=1e-13 * size ** (BASIS_DEGREES[name] / 2))


@settings(max_examples=50, deadline=None)
@given(int_components, st.sampled_from([-1, 2, 3]))
def test_homogeneity_exact(c, lam):
    k = integer_hall(c, exact=True)
    scaled = hall_invariants(k.scaled(Fraction(lam)))
    for name, before, after in zip(BASIS_NAMES, hall_invariants(k), scaled):
        assert after == Fraction(lam) ** BASIS_DEGREES[name] * before


def test_hemitropic_invariants_flip_under_inversion():
    c = [1, -2, 3, 0, 4, -1, 2, 2, -5]
    k = integer_hall(c, exact=True)
    neg = integer_hall([-x for x in c], exact=True)
    assert hemitropic_invariants(neg) == tuple(-x for x in hemitropic_invariants(k))
    assert hall_invariants(neg) == hall_invariants(k)


def test_traces_consistent_with_associated_tensor():
    k = hall_from_components([2, 0, -1, 3, 1, 1, -4, 2, 5])
    a = associated_tensor(k).entries
    b = base_invariants(associated_tensor(k))
    assert b.I1 == pytest.approx(np.trace(a))
    # tr A^2 = I2 + J2
    assert b.I2 + b.J2 == pytest.approx(np.trace(a @ a))


def test_relative_deviation():
    assert relative_deviation(1e-12, 0.0) == 1e-12
    assert relative_deviation(101.0, 100.0) == pytest.approx(0.01)
    assert relative_deviation(101.0, 100.0, scale=1000.0) == pytest.approx(0.001)
