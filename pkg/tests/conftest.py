from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from hallbasis.tensor_core import HallTensor, hall_from_components

small_ints = st.integers(min_value=-5, max_value=5)
int_components = st.lists(small_ints, min_size=9, max_size=9)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


def integer_hall(values, exact: bool = False) -> HallTensor:
    return hall_from_components(list(values), exact=exact)
