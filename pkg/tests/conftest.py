"""Shared helpers: seeded random matrices and independent oracles."""

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_complex(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def random_hermitian(rng, n):
    z = random_complex(rng, n)
    return (z + z.conj().T) / 2.0


def random_unitary(rng, n):
    q, r = np.linalg.qr(random_complex(rng, n))
    return q @ np.diag(np.diag(r) / np.abs(np.diag(r)))


def random_phases(rng, n, fix_first=True):
    ph = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=n))
    if fix_first:
        ph[0] = 1.0
    return ph


def cofactor_det(a):
    """Recursive cofactor expansion; independent determinant oracle for
    small matrices."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    if n == 1:
        return complex(a[0, 0])
    total = 0j
    for j in range(n):
        if a[0, j] == 0:
            continue
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        total += (-1) ** j * a[0, j] * cofactor_det(minor)
    return total
