from fractions import Fraction

import pytest

from casimir_boost.core import CavityConfig


@pytest.fixture
def unit_cavity():
    return CavityConfig(1)


@pytest.fixture
def float_cavity():
    return CavityConfig(1.0)


PYTHAGOREAN_Z = [Fraction(s * n, d) for n, d in ((3, 5), (4, 5), (5, 13), (12, 13)) for s in (1, -1)]
