"""Pure-numpy matrix exponential backend: scaling and squaring plus Taylor.

Kept in lockstep with the compiled twin ``_expm_cy.pyx`` (same scaling
threshold, same stopping rule) so the two backends agree to roundoff.
Input validation lives in :mod:`logatlas.numkernel`; this module assumes a
finite square float64 array and 0 < tol <= 1e-6.
"""

import numpy as np

SCALE_THRESHOLD = 0.5
MAX_TERMS = 60


def one_norm(a):
    return float(np.max(np.abs(a).sum(axis=0)))


def expm(a, tol):
    """Exponential of a square array by scaled Taylor summation.

    The series is truncated once the last term is below ``0.5 * tol``
    relative to the running sum; with the scaled norm at most 0.5 the
    neglected tail is then below ``tol`` relative.
    """
    n = a.shape[0]
    nrm = one_norm(a)
    s = 0
    if nrm > SCALE_THRESHOLD:
        s = int(np.ceil(np.log2(nrm / SCALE_THRESHOLD)))
    b = a / (2.0**s)
    acc = np.eye(n) + b
    term = b.copy()
    k = 2
    while k <= MAX_TERMS:
        term = term @ b / k
        acc = acc + term
        if one_norm(term) <= 0.5 * tol * one_norm(acc):
            break
        k += 1
    for _ in range(s):
        acc = acc @ acc
    return acc
