import math

import numpy as np
import pytest

from timeobs import QuantumState, build_spectrum


@pytest.fixture
def two_level():
    return build_spectrum("harmonic", 2, omega=1.0, hbar=1.0)


@pytest.fixture
def plus_state():
    return QuantumState(np.array([1.0, 1.0]) / math.sqrt(2.0))


@pytest.fixture
def minus_state():
    return QuantumState(np.array([1.0, -1.0]) / math.sqrt(2.0))
