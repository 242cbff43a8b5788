"""Seeded random instances: weights, operators, subspace pairs.

Every generator takes an explicit ``numpy.random.Generator`` so suites can
derive one stream per trial (seed XOR trial index) and stay reproducible
run over run.
"""

import numpy as np
import scipy.linalg as la

from .space import make_space
from .subspaces import is_proper_companion, span

__all__ = [
    "trial_rng",
    "haar_unitary",
    "random_pd_weight",
    "random_space",
    "random_operator",
    "random_subspace",
    "random_companion_pair",
    "random_biorthogonal_system",
]

WEIGHT_FLOOR = 1e-4


def trial_rng(seed, trial):
    """Generator for one trial, derived as seed XOR trial index."""
    return np.random.default_rng(int(seed) ^ int(trial))


def _complex_gauss(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) \
        / np.sqrt(2.0)


def haar_unitary(rng, n):
    """Haar-distributed unitary via phase-fixed QR."""
    q, r = la.qr(_complex_gauss(rng, n, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_pd_weight(rng, n):
    """Random Hermitian positive definite weight with spectral norm one.

    Built as ``U D U*`` with log-uniform eigenvalues in ``[1e-4, 1]``
    rescaled so the largest is exactly one.
    """
    u = haar_unitary(rng, n)
    d = np.exp(rng.uniform(np.log(WEIGHT_FLOOR), 0.0, size=n))
    d = d / d.max()
    a = (u * d) @ u.conj().T
    return (a + a.conj().T) / 2.0


def random_space(rng, n, enorm="euclid"):
    if enorm == "trace":
        return make_space(n, np.eye(n), "trace")
    return make_space(n, random_pd_weight(rng, n), "euclid")


def random_operator(rng, ws, scale=1.0):
    """Complex Gaussian matrix on the space."""
    return scale * _complex_gauss(rng, ws.dim, ws.dim)


def random_subspace(rng, ws, r):
    """Span of ``r`` independent complex Gaussian vectors."""
    return span(ws, _complex_gauss(rng, ws.dim, r))


def random_companion_pair(rng, ws, r, min_gap=1e-6, attempts=100):
    """A pair of subspaces of dimensions ``r`` and ``n - r`` splitting the
    space with a comfortable gap, together with its complement pair."""
    for _ in range(attempts):
        s = random_subspace(rng, ws, r)
        t = random_subspace(rng, ws, ws.dim - r)
        rep = is_proper_companion(ws, s, t, tol_gap=min_gap)
        if rep.ok:
            return s, t
    raise RuntimeError("failed to draw a splitting pair; space too small?")


def random_biorthogonal_system(rng, ws, m):
    """Two m-vector families with weighted cross-Gram exactly the identity.

    The second family is solved from a generic ansatz, so the families are
    biorthogonal to rounding while neither is orthogonal on its own.
    """
    f = _complex_gauss(rng, ws.dim, m)
    k = _complex_gauss(rng, ws.dim, m)
    cross = k.conj().T @ ws.weight @ f
    h = k @ la.inv(cross).conj().T
    return f, h
