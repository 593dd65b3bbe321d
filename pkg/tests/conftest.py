"""
Shared fixtures: a seeded generator and factories for random algebra elements and states.
"""
import math

import numpy as np
import pytest

from engine import ga3
from engine.spinor1 import Spinor1


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def random_multivector(rng):
    def make() -> ga3.Multivector3:
        return ga3.Multivector3(rng.normal(size=8))
    return make


@pytest.fixture
def random_bivector(rng):
    def make(scale: float = math.pi) -> ga3.Multivector3:
        b1, b2, b3 = rng.uniform(-scale, scale, size=3)
        return ga3.Multivector3.bivector(b1, b2, b3)
    return make


@pytest.fixture
def random_spinor(rng):
    def make() -> Spinor1:
        return Spinor1.from_coefficients(rng.normal(size=4))
    return make


@pytest.fixture
def random_rotor(rng):
    """Unit spinor, i.e. a rotor R with R R~ = 1."""
    def make() -> Spinor1:
        values = rng.normal(size=4)
        return Spinor1.from_coefficients(values / np.linalg.norm(values))
    return make


@pytest.fixture
def random_qubit(rng):
    def make() -> np.ndarray:
        vector = rng.normal(size=2) + 1j * rng.normal(size=2)
        return vector / np.linalg.norm(vector)
    return make


@pytest.fixture
def random_state(rng):
    """Normalized two-qubit amplitudes (c00, c01, c10, c11)."""
    def make() -> np.ndarray:
        vector = rng.normal(size=4) + 1j * rng.normal(size=4)
        return vector / np.linalg.norm(vector)
    return make


@pytest.fixture
def random_angles(rng):
    """(theta, phi) with theta in [0, pi], phi in (-pi, pi]."""
    def make():
        return float(rng.uniform(0.0, math.pi)), float(rng.uniform(-math.pi, math.pi))
    return make
