"""Shared draw helpers for the test suite."""

import numpy as np

import twonorm as tn
from twonorm import rand


def modest_space(rng, n, floor=1e-2):
    """Random weighted space with eigenvalues no smaller than ``floor``.

    The weight is a Haar-rotated diagonal with entries log-uniform in
    [floor, 1], rescaled so the largest equals one.  Keeping the spread
    bounded keeps round-off in weighted solves well below the flat
    tolerances the randomized suites assert.
    """
    u = rand.haar_unitary(rng, n)
    d = np.exp(rng.uniform(np.log(floor), 0.0, size=n))
    d = d / d.max()
    return tn.make_space(n, (u * d) @ u.conj().T)


def rotated_normal(rng, k):
    """Normal matrix with complex Gaussian eigenvalues."""
    u = rand.haar_unitary(rng, k)
    return (u * rand._complex_gauss(rng, k)) @ u.conj().T
