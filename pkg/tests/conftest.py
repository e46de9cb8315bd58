import numpy as np
import pytest

from superkron.elliptic import EllipticContext, lattice_distance


@pytest.fixture
def ctx():
    """Default evaluation context at a generic modulus."""
    return EllipticContext(0.13 + 1.1j)


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)


def draw_tau(rng) -> complex:
    return complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 2.0))


def draw_point(rng, tau: complex, margin: float = 5e-2) -> complex:
    """Uniform point in the fundamental cell, away from the lattice."""
    while True:
        z = complex(rng.uniform(0, 1) + rng.uniform(0, 1) * tau)
        if lattice_distance(z, tau) > margin:
            return z


def draw_points(rng, tau: complex, count: int, margin: float = 5e-2) -> list[complex]:
    return [draw_point(rng, tau, margin) for _ in range(count)]
