"""Dense numeric kernels.

Rotation blocks, the matrix exponential, decomplexification of complex
matrices into 2x2-block real ones, a numeric commutation-kernel dimension,
and the local logarithm series that serves as an independent oracle for
principal logarithms near the identity.

The exponential has two interchangeable backends: a compiled extension
(built from ``_expm_cy.pyx``) and a pure-numpy implementation. The compiled
one is preferred at import time; set ``LOGATLAS_EXPM=python`` to force the
fallback. ``benchmarks/bench_expm.py`` compares the two.

All operations are pure functions of their inputs and safe to call from
any number of threads.
"""

from __future__ import annotations

import math
import os

import numpy as np

from . import _expm_py
from .errors import (
    IllConditionedError,
    InvalidInputError,
    MathDomainError,
    NumericRangeError,
)

if os.environ.get("LOGATLAS_EXPM", "").lower() in ("py", "python"):
    _expm_impl = _expm_py.expm
    EXPM_BACKEND = "python"
else:
    try:
        from . import _expm_cy

        _expm_impl = _expm_cy.expm
        EXPM_BACKEND = "cython"
    except ImportError:  # extension not built; numpy path is equivalent
        _expm_impl = _expm_py.expm
        EXPM_BACKEND = "python"

DEFAULT_EXP_TOL = 1e-13
DEFAULT_KERNEL_TOL = 1e-8
GAP_RATIO = 10.0
# past this norm the number of squarings alone destroys all accuracy
_EXP_NORM_CAP = 1e12
_KERNEL_MAX_ORDER = 12


def as_square_array(a, name: str = "matrix", dtype=float) -> np.ndarray:
    """Validate and return ``a`` as a finite square 2-d array."""
    arr = np.asarray(a, dtype=dtype)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InvalidInputError(f"{name} must be a non-empty square matrix")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return arr


def rotation_block(theta: float) -> np.ndarray:
    """2x2 counter-clockwise rotation by ``theta`` radians."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise InvalidInputError("rotation angle must be finite")
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def spin_block(alpha: float, phi: float) -> np.ndarray:
    """2x2 block [[alpha, -phi], [phi, alpha]]; its exponential is
    ``exp(alpha) * rotation_block(phi)``."""
    return np.array([[alpha, -phi], [phi, alpha]])


def direct_sum(blocks) -> np.ndarray:
    """Block-diagonal sum. Entries that are None or of order zero are
    skipped, so absent blocks need no special casing upstream."""
    mats = []
    for b in blocks:
        if b is None:
            continue
        arr = np.asarray(b, dtype=float)
        if arr.size == 0:
            continue
        mats.append(as_square_array(arr, name="direct-sum block"))
    if not mats:
        raise InvalidInputError("direct sum has no non-empty blocks")
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n))
    pos = 0
    for m in mats:
        k = m.shape[0]
        out[pos : pos + k, pos : pos + k] = m
        pos += k
    return out


def mat_exp(a, tol: float = DEFAULT_EXP_TOL) -> np.ndarray:
    """Matrix exponential with relative accuracy ``tol``.

    Scaling and squaring with a truncated Taylor series, self-contained
    (no library exponential). Raises NumericRangeError when the result
    overflows double range (or the norm is beyond scaling capacity) and
    InvalidInputError for tol outside (0, 1e-6]. Accuracy degrades with
    the squaring count for strongly non-normal input; downstream residual
    checks are expected to catch that.
    """
    arr = as_square_array(a)
    if not (0.0 < tol <= 1e-6):
        raise InvalidInputError("mat_exp tolerance must be in (0, 1e-6]")
    if _expm_py.one_norm(arr) > _EXP_NORM_CAP:
        raise NumericRangeError("matrix norm beyond exponential scaling capacity")
    out = _expm_impl(np.ascontiguousarray(arr), float(tol))
    if not np.all(np.isfinite(out)):
        raise NumericRangeError("exponential overflowed double precision")
    return out


def decomplexify(z) -> np.ndarray:
    """Embed an h x h complex matrix into a 2h x 2h real one, replacing
    each entry by [[re, -im], [im, re]].

    The embedding is an algebra homomorphism; conjugate transpose maps to
    transpose, trace to twice the real trace and determinant to the
    squared modulus of the complex determinant.
    """
    zz = as_square_array(z, name="complex matrix", dtype=complex)
    h = zz.shape[0]
    out = np.empty((2 * h, 2 * h))
    out[0::2, 0::2] = zz.real
    out[0::2, 1::2] = -zz.imag
    out[1::2, 0::2] = zz.imag
    out[1::2, 1::2] = zz.real
    return out


def commutant_kernel_dim(a, tol: float = DEFAULT_KERNEL_TOL) -> int:
    """Dimension of the kernel of X -> AX - XA on real n x n matrices.

    The commutation operator is vectorized by column stacking, so it reads
    kron(I, A) - kron(A.T, I); the kernel dimension is the number of
    singular values at or below ``tol`` relative to the largest one. When
    the singular values straddling the cut are within a factor of 10 the
    rank is ambiguous and IllConditionedError is raised.
    """
    arr = as_square_array(a)
    n = arr.shape[0]
    if n > _KERNEL_MAX_ORDER:
        raise InvalidInputError(
            f"order {n} too large: the vectorized operator has n^2 = {n * n} rows"
        )
    if not (0.0 < tol < 1.0):
        raise InvalidInputError("singular value threshold must be in (0, 1)")
    eye = np.eye(n)
    op = np.kron(eye, arr) - np.kron(arr.T, eye)
    sv = np.linalg.svd(op, compute_uv=False)
    top = float(sv[0])
    if top == 0.0:
        return n * n
    small = int(np.sum(sv <= tol * top))
    if 0 < small < n * n:
        kept = float(sv[n * n - small - 1])
        dropped = float(sv[n * n - small])
        if dropped > 0.0 and kept / dropped < GAP_RATIO:
            raise IllConditionedError(
                "numerical kernel dimension is ambiguous: singular value gap "
                f"ratio {kept / dropped:.2f} < {GAP_RATIO}"
            )
    return small


def series_log(m, tol: float = DEFAULT_EXP_TOL) -> np.ndarray:
    """Principal logarithm by the alternating series in (M - I).

    Valid when the spectral radius of M - I is below one; this is the
    independent oracle for the unique principal logarithm near the
    identity and is deliberately not reused by any other code path.
    """
    arr = as_square_array(m)
    if not (0.0 < tol <= 1e-6):
        raise InvalidInputError("series_log tolerance must be in (0, 1e-6]")
    n = arr.shape[0]
    x = arr - np.eye(n)
    radius = float(np.max(np.abs(np.linalg.eigvals(x)))) if n else 0.0
    if radius >= 1.0:
        raise MathDomainError(
            f"logarithm series diverges: spectral radius of M - I is {radius:.6g} >= 1"
        )
    term = x.copy()
    acc = x.copy()
    hits = 0
    for k in range(2, 20001):
        term = term @ x
        acc = acc + ((-1.0) ** (k + 1) / k) * term
        if np.linalg.norm(term) / k <= 0.1 * tol * max(1.0, np.linalg.norm(acc)):
            hits += 1
            if hits >= 2:
                return acc
        else:
            hits = 0
    raise IllConditionedError("logarithm series failed to converge")


def matrix_to_json(a) -> dict:
    """Encode a real matrix as {"n": order, "data": row-major rows}."""
    arr = as_square_array(a)
    return {"n": int(arr.shape[0]), "data": [[float(v) for v in row] for row in arr]}


def matrix_from_json(doc) -> np.ndarray:
    """Decode the matrix JSON produced by :func:`matrix_to_json`."""
    if not isinstance(doc, dict) or "n" not in doc or "data" not in doc:
        raise InvalidInputError('matrix JSON must carry "n" and "data"')
    n = doc["n"]
    data = doc["data"]
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError('matrix JSON field "n" must be a positive integer')
    if not isinstance(data, list) or len(data) != n or any(
        not isinstance(row, list) or len(row) != n for row in data
    ):
        raise InvalidInputError(f'matrix JSON field "data" must be {n} rows of {n} numbers')
    return as_square_array(np.array(data, dtype=float), name="matrix JSON data")
