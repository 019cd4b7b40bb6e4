"""Eigenvalue clustering and canonical forms.

``classify_spectrum`` turns a semi-simple real matrix into its clustered
spectral data (positive, non-real and negative eigenvalue groups);
``real_jordan`` builds the block-diagonal real canonical form together
with a transition matrix, and ``ortho_canonical`` does the orthogonal
analogue for special orthogonal input.

Clustering is a union-find over eigenvalues within relative distance
``eps``; whenever a decision would hinge on less than a factor-of-10 gap
(cluster separation, numerical rank) the functions refuse with
IllConditionedError rather than guess, because a misclassification here
silently changes the whole branch atlas downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    IllConditionedError,
    InvalidInputError,
    NoRealLogarithmError,
    NotSemisimpleError,
    NotSpecialOrthogonalError,
    SingularMatrixError,
)
from .numkernel import GAP_RATIO, as_square_array, direct_sum, rotation_block

DEFAULT_EPS = 1e-8
COND_CAP = 1e8
JORDAN_RESIDUAL = 1e-9
ORTHO_INPUT_TOL = 1e-10
ORTHO_Q_TOL = 1e-12
ORTHO_RESIDUAL = 1e-10


@dataclass(frozen=True)
class SpectralData:
    """Clustered spectrum of a semi-simple matrix with a real logarithm.

    positive: (lambda, h) pairs, lambda ascending;
    nonreal:  per angle theta in (0, pi), ascending, a tuple of
              (rho, m) pairs with rho ascending (one conjugate pair
              rho*exp(+-i*theta) of multiplicity m each);
    negative: (w, k) pairs for eigenvalue -w of multiplicity 2k, w
              ascending.
    """

    n: int
    positive: tuple[tuple[float, int], ...] = ()
    nonreal: tuple[tuple[float, tuple[tuple[float, int], ...]], ...] = ()
    negative: tuple[tuple[float, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("order must be positive")
        total = 0
        last = 0.0
        for lam, h in self.positive:
            if lam <= last or h < 1:
                raise InvalidInputError("positive eigenvalues must be ascending with multiplicity >= 1")
            last = lam
            total += h
        last_theta = 0.0
        for theta, members in self.nonreal:
            if not (last_theta < theta < math.pi) or not members:
                raise InvalidInputError("angles must be ascending in (0, pi) with members")
            last_theta = theta
            last_rho = 0.0
            for rho, m in members:
                if rho <= last_rho or m < 1:
                    raise InvalidInputError("moduli must be ascending and positive with multiplicity >= 1")
                last_rho = rho
                total += 2 * m
        last = 0.0
        for w, k in self.negative:
            if w <= last or k < 1:
                raise InvalidInputError("negative eigenvalues must have ascending w and k >= 1")
            last = w
            total += 2 * k
        if total != self.n:
            raise InvalidInputError(f"multiplicities sum to {total}, expected n = {self.n}")

    @property
    def pairs(self) -> tuple[tuple[float, float, int], ...]:
        """Non-real conjugate pairs flattened to (theta, rho, m), in order."""
        return tuple(
            (theta, rho, m) for theta, members in self.nonreal for rho, m in members
        )

    @property
    def a_total(self) -> int:
        """Half the number of distinct non-real eigenvalues."""
        return sum(len(members) for _, members in self.nonreal)


@dataclass(frozen=True)
class OrthoSpectralData:
    """Spectrum of a special orthogonal matrix: eigenvalue 1 with
    multiplicity h, rotation angles with multiplicities, eigenvalue -1
    with multiplicity 2k."""

    n: int
    h: int = 0
    rotations: tuple[tuple[float, int], ...] = ()
    k: int = 0

    def __post_init__(self):
        if self.n < 1 or self.h < 0 or self.k < 0:
            raise InvalidInputError("invalid orders")
        last = 0.0
        total = self.h + 2 * self.k
        for theta, m in self.rotations:
            if not (last < theta < math.pi) or m < 1:
                raise InvalidInputError("angles must be ascending in (0, pi) with multiplicity >= 1")
            last = theta
            total += 2 * m
        if total != self.n:
            raise InvalidInputError(f"multiplicities sum to {total}, expected n = {self.n}")
        if self.n % 2 == 1 and self.h % 2 == 0:
            raise InvalidInputError("odd order forces odd multiplicity of eigenvalue 1")


def _validate_eps(eps):
    if not (0.0 < eps <= 1e-3):
        raise InvalidInputError("clustering tolerance must be in (0, 1e-3]")


def _cluster_eigenvalues(vals: np.ndarray, eps: float):
    """Union-find clustering at relative distance eps; returns a list of
    (center, count) with centers snapped to the real axis when within eps.

    Distinct cluster centers closer than 10*eps (relative) are refused.
    """
    n = len(vals)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            scale = max(abs(vals[i]), abs(vals[j]))
            if abs(vals[i] - vals[j]) <= eps * scale:
                parent[find(i)] = find(j)

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)

    clusters = []
    for idx in groups.values():
        center = complex(np.mean(vals[idx]))
        if abs(center.imag) <= eps * abs(center):
            center = complex(center.real, 0.0)
        clusters.append((center, len(idx)))

    for i in range(len(clusters)):
        for j in range(i + 1, len(clusters)):
            ci, cj = clusters[i][0], clusters[j][0]
            scale = max(abs(ci), abs(cj))
            if scale > 0 and abs(ci - cj) < GAP_RATIO * eps * scale:
                raise IllConditionedError(
                    f"eigenvalue clusters {ci:.6g} and {cj:.6g} are ambiguously separated"
                )
    return clusters


def _rank_deficiency(m: np.ndarray, center: complex, eps: float) -> int:
    """Numerical nullity of (m - center*I) with a gap-ratio guard.

    The cut is relative to the scale of m itself: when the whole shifted
    matrix is roundoff noise (m a multiple of the identity) every singular
    value counts as zero.
    """
    n = m.shape[0]
    shifted = m.astype(complex) - center * np.eye(n)
    sv = np.linalg.svd(shifted, compute_uv=False)
    scale = max(float(sv[0]), float(np.linalg.norm(m)))
    if scale == 0.0:
        return n
    small = int(np.sum(sv <= eps * scale))
    if 0 < small < n:
        kept = float(sv[n - small - 1])
        dropped = float(sv[n - small])
        if dropped > 0.0 and kept / dropped < GAP_RATIO:
            raise IllConditionedError(
                f"numerical rank near eigenvalue {center:.6g} is ambiguous"
            )
    return small


def check_semisimple(m, eps: float = DEFAULT_EPS) -> bool:
    """True when every eigenvalue cluster has geometric multiplicity equal
    to its algebraic one (rank of M - lambda*I equals n minus the cluster
    size)."""
    arr = as_square_array(m)
    _validate_eps(eps)
    clusters = _cluster_eigenvalues(np.linalg.eigvals(arr), eps)
    return all(_rank_deficiency(arr, c, eps) == cnt for c, cnt in clusters)


def _conjugate_paired(clusters, eps):
    """Split clusters into reals and upper-half-plane pairs, checking the
    spectrum is symmetric under conjugation."""
    reals, upper, lower = [], [], []
    for center, cnt in clusters:
        if center.imag == 0.0:
            reals.append((center.real, cnt))
        elif center.imag > 0.0:
            upper.append((center, cnt))
        else:
            lower.append((center, cnt))
    if len(upper) != len(lower):
        raise IllConditionedError("conjugate pairing of eigenvalue clusters failed")
    used = [False] * len(lower)
    for center, cnt in upper:
        hit = None
        for i, (cl, cntl) in enumerate(lower):
            if not used[i] and abs(cl - center.conjugate()) <= eps * abs(center):
                hit = (i, cntl)
                break
        if hit is None or hit[1] != cnt:
            raise IllConditionedError("conjugate pairing of eigenvalue clusters failed")
        used[hit[0]] = True
    return reals, upper


def classify_spectrum(m, eps: float = DEFAULT_EPS) -> SpectralData:
    """Cluster the spectrum of a non-singular semi-simple matrix and sort
    it into the SpectralData layout.

    Raises SingularMatrixError, NotSemisimpleError, NoRealLogarithmError
    (negative eigenvalue of odd multiplicity) or IllConditionedError.
    """
    arr = as_square_array(m)
    _validate_eps(eps)
    n = arr.shape[0]
    if abs(np.linalg.det(arr)) <= eps**n:
        raise SingularMatrixError("matrix is numerically singular")
    clusters = _cluster_eigenvalues(np.linalg.eigvals(arr), eps)
    for center, cnt in clusters:
        if _rank_deficiency(arr, center, eps) != cnt:
            raise NotSemisimpleError(
                f"eigenvalue {center:.6g} has geometric multiplicity below {cnt}"
            )
    reals, upper = _conjugate_paired(clusters, eps)

    positive, negative = [], []
    for val, cnt in reals:
        if val > 0:
            positive.append((float(val), cnt))
        else:
            if cnt % 2:
                raise NoRealLogarithmError(
                    f"negative eigenvalue {val:.6g} has odd multiplicity {cnt}"
                )
            negative.append((float(-val), cnt // 2))
    positive.sort()
    negative.sort()

    polar = sorted(
        (math.atan2(center.imag, center.real), abs(center), cnt) for center, cnt in upper
    )
    groups: list[list[tuple[float, float, int]]] = []
    for theta, rho, cnt in polar:
        if groups and theta - groups[-1][-1][0] <= eps:
            groups[-1].append((theta, rho, cnt))
        elif groups and theta - groups[-1][-1][0] < GAP_RATIO * eps:
            raise IllConditionedError(
                f"rotation angles near {theta:.6g} are ambiguously separated"
            )
        else:
            groups.append([(theta, rho, cnt)])
    nonreal = tuple(
        (
            float(np.mean([t for t, _, _ in grp])),
            tuple(sorted((float(rho), cnt) for _, rho, cnt in grp)),
        )
        for grp in groups
    )
    return SpectralData(n, tuple(positive), nonreal, tuple(negative))


def jordan_matrix(spec: SpectralData) -> np.ndarray:
    """The block-diagonal real canonical form determined by spectral data:
    positive scalar blocks, then scaled rotation blocks, then negative
    scalar blocks, in SpectralData order."""
    blocks = [lam * np.eye(h) for lam, h in spec.positive]
    blocks += [np.kron(np.eye(m), rho * rotation_block(theta)) for theta, rho, m in spec.pairs]
    blocks += [-w * np.eye(2 * k) for w, k in spec.negative]
    return direct_sum(blocks)


def ortho_jordan_matrix(spec: OrthoSpectralData) -> np.ndarray:
    """Canonical form of a special orthogonal matrix: identity block,
    rotation blocks by ascending angle, then -identity."""
    blocks = [np.eye(spec.h)] if spec.h else []
    blocks += [np.kron(np.eye(m), rotation_block(theta)) for theta, m in spec.rotations]
    if spec.k:
        blocks.append(-np.eye(2 * spec.k))
    return direct_sum(blocks)


def _real_nullspace(a: np.ndarray, dim: int) -> np.ndarray:
    """Orthonormal basis (columns) of the ``dim``-dimensional kernel of a
    real matrix, from the trailing right singular vectors."""
    _, _, vh = np.linalg.svd(a)
    return vh[-dim:].T.copy()


def _complex_nullspace(a: np.ndarray, dim: int) -> np.ndarray:
    _, _, vh = np.linalg.svd(a)
    return vh[-dim:].conj().T.copy()


def _pair_columns(vecs: np.ndarray, scale: float = 1.0) -> list[np.ndarray]:
    """Real column pairs (Im v, Re v) for complex eigenvectors v; with this
    ordering a rho*exp(i*theta) eigenvector yields the block
    rho*rotation_block(theta)."""
    cols = []
    for idx in range(vecs.shape[1]):
        v = vecs[:, idx]
        cols.append(scale * v.imag)
        cols.append(scale * v.real)
    return cols


def real_jordan(m, eps: float = DEFAULT_EPS) -> tuple[np.ndarray, np.ndarray]:
    """Real canonical form J and transition C with M = C J C^-1.

    C is built column-wise from kernel bases of M - lambda*I (real
    eigenvalues) and from (Im v, Re v) pairs of complex eigenvectors,
    ordered to match the block layout of :func:`jordan_matrix`.
    """
    arr = as_square_array(m)
    spec = classify_spectrum(arr, eps)
    n = arr.shape[0]
    jmat = jordan_matrix(spec)
    eye = np.eye(n)

    cols: list[np.ndarray] = []
    for lam, h in spec.positive:
        basis = _real_nullspace(arr - lam * eye, h)
        cols.extend(basis[:, idx] for idx in range(h))
    for theta, rho, mult in spec.pairs:
        z = rho * complex(math.cos(theta), math.sin(theta))
        vecs = _complex_nullspace(arr.astype(complex) - z * eye, mult)
        cols.extend(_pair_columns(vecs))
    for w, k in spec.negative:
        basis = _real_nullspace(arr + w * eye, 2 * k)
        cols.extend(basis[:, idx] for idx in range(2 * k))

    c = np.column_stack(cols)
    if np.linalg.cond(c) > COND_CAP:
        raise IllConditionedError("eigenvector matrix condition number exceeds 1e8")
    residual = np.linalg.norm(arr - c @ jmat @ np.linalg.inv(c))
    if residual > JORDAN_RESIDUAL * np.linalg.norm(arr):
        raise IllConditionedError(
            f"canonical form residual {residual:.3e} exceeds tolerance"
        )
    return jmat, c


def classify_orthogonal_spectrum(m, eps: float = DEFAULT_EPS) -> OrthoSpectralData:
    """Cluster the spectrum of a special orthogonal matrix into
    OrthoSpectralData. Input must be orthogonal with determinant +1."""
    arr = as_square_array(m)
    _validate_eps(eps)
    n = arr.shape[0]
    if np.linalg.norm(arr.T @ arr - np.eye(n)) > ORTHO_INPUT_TOL:
        raise NotSpecialOrthogonalError("matrix is not orthogonal")
    if np.linalg.det(arr) < 0:
        raise NotSpecialOrthogonalError("matrix has determinant -1")
    clusters = _cluster_eigenvalues(np.linalg.eigvals(arr), eps)
    reals, upper = _conjugate_paired(clusters, eps)
    h = 0
    k = 0
    for val, cnt in reals:
        target = 1.0 if val > 0 else -1.0
        if abs(val - target) > GAP_RATIO * eps:
            raise IllConditionedError(
                f"real eigenvalue {val:.6g} of an orthogonal matrix is off the unit circle"
            )
        if val > 0:
            h = cnt
        else:
            if cnt % 2:
                raise IllConditionedError("eigenvalue -1 with odd multiplicity despite det +1")
            k = cnt // 2
    rotations = tuple(
        sorted((math.atan2(c.imag, c.real), cnt) for c, cnt in upper)
    )
    return OrthoSpectralData(n, h, rotations, k)


def ortho_canonical(m, eps: float = DEFAULT_EPS) -> tuple[np.ndarray, np.ndarray]:
    """Orthogonal canonical form J and orthogonal Q with M = Q J Q^T.

    Eigenvector bases are orthonormal within each eigenspace (SVD kernels)
    and complex pairs are scaled by sqrt(2); one symmetric
    re-orthonormalization then removes cross-eigenspace roundoff.
    det(Q) is not forced to +1.
    """
    arr = as_square_array(m)
    spec = classify_orthogonal_spectrum(arr, eps)
    n = arr.shape[0]
    jmat = ortho_jordan_matrix(spec)
    eye = np.eye(n)

    cols: list[np.ndarray] = []
    if spec.h:
        basis = _real_nullspace(arr - eye, spec.h)
        cols.extend(basis[:, idx] for idx in range(spec.h))
    for theta, mult in spec.rotations:
        z = complex(math.cos(theta), math.sin(theta))
        vecs = _complex_nullspace(arr.astype(complex) - z * eye, mult)
        cols.extend(_pair_columns(vecs, scale=math.sqrt(2.0)))
    if spec.k:
        basis = _real_nullspace(arr + eye, 2 * spec.k)
        cols.extend(basis[:, idx] for idx in range(2 * spec.k))

    q = np.column_stack(cols)
    # symmetric polish: Q (Q^T Q)^(-1/2), minimally invasive per block
    gram = q.T @ q
    evals, evecs = np.linalg.eigh(gram)
    if np.min(evals) <= 0:
        raise IllConditionedError("eigenvector basis degenerated")
    q = q @ (evecs / np.sqrt(evals)) @ evecs.T

    if np.linalg.norm(q.T @ q - eye) > ORTHO_Q_TOL:
        raise IllConditionedError("transition matrix failed the orthogonality residual")
    if np.linalg.norm(arr - q @ jmat @ q.T) > ORTHO_RESIDUAL:
        raise IllConditionedError("orthogonal canonical form residual exceeds tolerance")
    return jmat, q


def spectral_to_json(spec: SpectralData) -> dict:
    return {
        "n": spec.n,
        "positive": [{"lambda": lam, "h": h} for lam, h in spec.positive],
        "nonreal": [
            {"theta": theta, "members": [{"rho": rho, "m": m} for rho, m in members]}
            for theta, members in spec.nonreal
        ],
        "negative": [{"w": w, "k": k} for w, k in spec.negative],
        "A": spec.a_total,
    }


def ortho_spectral_to_json(spec: OrthoSpectralData) -> dict:
    return {
        "n": spec.n,
        "h": spec.h,
        "rotations": [{"theta": theta, "m": m} for theta, m in spec.rotations],
        "k": spec.k,
    }
