from __future__ import annotations

import numpy as np
import pytest


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Proper rotation matrix from the QR factorization of a Gaussian draw."""
    a = rng.standard_normal((3, 3))
    q, r = np.linalg.qr(a)
    q = q * np.sign(np.diagonal(r))
    if np.linalg.det(q) < 0.0:
        q[:, 0] = -q[:, 0]
    return q


def z_rotation(angle: float) -> np.ndarray:
    c = np.cos(angle)
    s = np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


@pytest.fixture
def make_rotation():
    return random_rotation


@pytest.fixture
def make_z_rotation():
    return z_rotation
