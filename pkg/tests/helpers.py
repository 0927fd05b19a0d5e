"""Shared builders for randomized tests."""

import numpy as np

from tenfold1d import SymplecticForm, unitary_to_plane
from tenfold1d.symmetry import random_unitary


def random_form(n: int, rng) -> SymplecticForm:
    """Random boundary form on C^{2n} with balanced signature.

    J = V blkdiag(i diag(a), -i diag(b)) V* with a, b drawn from
    [0.5, 2], so the canonical split is well conditioned but not
    trivial.
    """
    V = random_unitary(2 * n, rng)
    a = rng.uniform(0.5, 2.0, size=n)
    b = rng.uniform(0.5, 2.0, size=n)
    D = np.diag(np.concatenate([1j * a, -1j * b]))
    return SymplecticForm(V @ D @ V.conj().T)


def random_plane(split, rng):
    """Random Lagrangian plane of a split, with the unitary that made it."""
    U = random_unitary(split.n, rng)
    return unitary_to_plane(U, split), U


def random_antisymmetric(n: int, rng) -> np.ndarray:
    """Random real antisymmetric matrix with O(1) entries."""
    X = rng.standard_normal((n, n))
    return X - X.T


def quaternionic(half: int, rng) -> np.ndarray:
    """Random matrix with the quaternionic block structure."""
    X1 = rng.standard_normal((half, half)) + 1j * rng.standard_normal((half, half))
    X2 = rng.standard_normal((half, half)) + 1j * rng.standard_normal((half, half))
    return np.block([[X1, X2], [-X2.conj(), X1.conj()]])
