"""Shared random-object generators for the test suite."""

import numpy as np


def ginibre(rng, rows, cols=None):
    cols = rows if cols is None else cols
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_hermitian(rng, dim):
    a = ginibre(rng, dim)
    return 0.5 * (a + a.conj().T)


def random_unitary(rng, dim):
    q, r = np.linalg.qr(ginibre(rng, dim))
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def random_density(rng, dim):
    """Full-rank random mixed state."""
    g = ginibre(rng, dim)
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def random_pure_density(rng, dim):
    v = ginibre(rng, dim, 1).ravel()
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def random_projective_povm(rng, dim):
    """Two orthogonal projectors from a random split of a random basis."""
    u = random_unitary(rng, dim)
    k = int(rng.integers(1, dim))
    p0 = u[:, :k] @ u[:, :k].conj().T
    p0 = 0.5 * (p0 + p0.conj().T)
    return [p0, np.eye(dim) - p0]


def random_two_outcome_povm(rng, dim):
    """A random effect with spectrum inside (0, 1) and its complement."""
    g = ginibre(rng, dim)
    b = g @ g.conj().T
    b = 0.5 * (b + b.conj().T)
    scale = float(np.linalg.eigvalsh(b)[-1]) * float(rng.uniform(1.05, 2.0))
    e = b / scale
    return [e, np.eye(dim) - e]
