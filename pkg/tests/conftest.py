"""Shared fixtures for the test suite."""

import numpy as np
import pytest

from qutrit_teleport.teleportation import InputState


@pytest.fixture
def rng():
    # fixed seed keeps every run byte-identical
    return np.random.default_rng(20260815)


@pytest.fixture
def random_hermitian(rng):
    def make(n: int) -> np.ndarray:
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        return (a + a.conj().T) / 2.0

    return make


@pytest.fixture
def random_density(rng):
    def make(n: int) -> np.ndarray:
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        rho = a @ a.conj().T
        return rho / np.trace(rho).real

    return make


@pytest.fixture
def random_input_state(rng):
    def make() -> InputState:
        amp = np.abs(rng.normal(size=3)) + 1e-3
        amp = amp / np.linalg.norm(amp)
        ph = rng.uniform(0.0, 2.0 * np.pi, size=2)
        return InputState(amp[0], amp[1], amp[2], ph[0], ph[1])

    return make
