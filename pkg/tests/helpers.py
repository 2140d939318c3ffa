"""Shared random generators for the test suite."""

import numpy as np

from qbackflow import KrausChannel, QubitState


def random_bloch(rng, pure=False, max_norm=1.0):
    """Uniform direction; radius 1 for pure, else uniform in the ball."""
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    if pure:
        return v
    return v * max_norm * rng.uniform() ** (1.0 / 3.0)


def random_state(rng, pure=False):
    return QubitState.from_bloch(random_bloch(rng, pure=pure))


def random_unitary(rng):
    """Haar-ish 2x2 unitary from the QR decomposition of a Ginibre matrix."""
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_kraus_channel(rng, n_ops=None):
    """Random CPTP channel from the columns of a random isometry."""
    if n_ops is None:
        n_ops = int(rng.integers(2, 5))
    g = rng.normal(size=(2 * n_ops, 2)) + 1j * rng.normal(size=(2 * n_ops, 2))
    q, _ = np.linalg.qr(g)  # q: (2*n_ops, 2) with q^dag q = I
    ops = [q[2 * k : 2 * k + 2, :] for k in range(n_ops)]
    return KrausChannel(ops)


def random_pauli_mixture(rng):
    """Random convex mixture of I, sigma_x, sigma_y, sigma_z conjugations."""
    from qbackflow.states import IDENTITY, PAULIS

    weights = rng.dirichlet(np.ones(4))
    ops = [np.sqrt(weights[0]) * IDENTITY] + [
        np.sqrt(w) * p for w, p in zip(weights[1:], PAULIS)
    ]
    return KrausChannel(ops)
