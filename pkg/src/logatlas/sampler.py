"""Random logarithms on a chosen branch.

Every logarithm on a branch is a conjugate of the canonical one by an
element of the centralizer of the canonical form, so sampling means
drawing block-random centralizer elements (Gaussian general blocks with a
determinant floor, QR-based orthogonal/unitary blocks) and pushing the
canonical log through the orbit map. The component of the branch a sample
lands in is read off the determinant signs of the real general blocks
that survive the quotient; that is the component signature.

RNG state is passed explicitly (an int seed or a numpy Generator); there
is no module-level randomness, so parallel sampling with per-task streams
is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .branches import (
    MultiIndexSet,
    SkewMultiIndexSet,
    canonical_log,
    canonical_skew_log,
    check_admissible,
    check_skew_admissible,
    log_eigenvalues,
)
from .errors import (
    DegenerateSampleError,
    IllConditionedError,
    InvalidBranchError,
    InvalidInputError,
)
from .numkernel import as_square_array, decomplexify, direct_sum, mat_exp
from .spectra import OrthoSpectralData, SpectralData

DET_FLOOR = 1e-3
COND_CAP = 1e8
MAX_TRIES = 100
EXP_RESIDUAL = 1e-8
SKEW_EXP_RESIDUAL = 1e-9
EIG_MATCH_TOL = 1e-6
SIGNATURE_DET_FLOOR = 1e-10


@dataclass(frozen=True)
class CommutantBlock:
    """One block of a centralizer element; ``entries`` is the raw real or
    complex block, ``order`` its order inside the assembled real matrix."""

    kind: str  # real_general | complex_general | real_orthogonal | complex_unitary
    order: int
    entries: np.ndarray


@dataclass(frozen=True)
class CommutantElement:
    blocks: tuple[CommutantBlock, ...]
    assembled: np.ndarray


def _as_rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _det_scale(order: int, complex_entries: bool) -> float:
    # E|det|^2 of a standard Gaussian block is order! (doubled per entry
    # degree of freedom for complex draws); the floor is relative to that.
    scale = math.sqrt(math.factorial(order))
    return scale * math.sqrt(2.0**order) if complex_entries else scale


def _draw_general(rng, order: int, complex_entries: bool) -> np.ndarray:
    floor = DET_FLOOR * _det_scale(order, complex_entries)
    for _ in range(MAX_TRIES):
        if complex_entries:
            block = rng.standard_normal((order, order)) + 1j * rng.standard_normal(
                (order, order)
            )
        else:
            block = rng.standard_normal((order, order))
        if abs(np.linalg.det(block)) >= floor:
            return block
    raise DegenerateSampleError("exhausted resampling of a general block")


def _haar_orthogonal(rng, order: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((order, order)))
    d = np.sign(np.diag(r))
    d[d == 0] = 1.0
    return q * d


def _haar_unitary(rng, order: int) -> np.ndarray:
    z = (rng.standard_normal((order, order)) + 1j * rng.standard_normal((order, order))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r).copy()
    zero = np.abs(d) == 0
    d[zero] = 1.0
    return q * (d / np.abs(d)).conj()


def _assemble(blocks: list[CommutantBlock]) -> CommutantElement:
    parts = [
        decomplexify(b.entries) if np.iscomplexobj(b.entries) else b.entries
        for b in blocks
    ]
    return CommutantElement(tuple(blocks), direct_sum(parts))


def sample_commutant(spec: SpectralData, seed) -> CommutantElement:
    """Random invertible element commuting with the canonical form of the
    spectrum: one real general block per real eigenvalue, one
    decomplexified complex general block per conjugate pair."""
    rng = _as_rng(seed)
    blocks = []
    for _, h in spec.positive:
        blocks.append(CommutantBlock("real_general", h, _draw_general(rng, h, False)))
    for _, _, m in spec.pairs:
        blocks.append(CommutantBlock("complex_general", 2 * m, _draw_general(rng, m, True)))
    for _, k in spec.negative:
        blocks.append(CommutantBlock("real_general", 2 * k, _draw_general(rng, 2 * k, False)))
    return _assemble(blocks)


def sample_orthogonal_commutant(spec: OrthoSpectralData, seed) -> CommutantElement:
    """Random orthogonal element commuting with the orthogonal canonical
    form: QR-sampled orthogonal blocks for the +-1 eigenspaces and
    decomplexified unitary blocks for the rotations."""
    rng = _as_rng(seed)
    blocks = []
    if spec.h:
        blocks.append(CommutantBlock("real_orthogonal", spec.h, _haar_orthogonal(rng, spec.h)))
    for _, m in spec.rotations:
        blocks.append(CommutantBlock("complex_unitary", 2 * m, _haar_unitary(rng, m)))
    if spec.k:
        blocks.append(
            CommutantBlock("real_orthogonal", 2 * spec.k, _haar_orthogonal(rng, 2 * spec.k))
        )
    return _assemble(blocks)


def _eig_multiset_matches(matrix: np.ndarray, expected: list[complex], tol: float) -> bool:
    computed = sorted(np.linalg.eigvals(matrix), key=lambda z: (z.real, z.imag))
    scale = max(1.0, max(abs(z) for z in expected))
    remaining = list(computed)
    for target in expected:
        best = min(range(len(remaining)), key=lambda idx: abs(remaining[idx] - target))
        if abs(remaining[best] - target) > tol * scale:
            return False
        remaining.pop(best)
    return True


def sample_log_with_element(
    m, spec: SpectralData, c, branch: MultiIndexSet, seed
) -> tuple[np.ndarray, CommutantElement]:
    """One random logarithm of M on the branch, along with the centralizer
    element that produced it (for component signatures)."""
    marr = as_square_array(m)
    carr = as_square_array(c, name="transition matrix")
    if not check_admissible(spec, branch):
        raise InvalidBranchError("branch is not admissible for this spectrum")
    if np.linalg.cond(carr) > COND_CAP:
        raise IllConditionedError("transition matrix condition number exceeds 1e8")
    jlog = canonical_log(spec, branch)
    expected = log_eigenvalues(spec, branch)
    mnorm = np.linalg.norm(marr)
    rng = _as_rng(seed)
    for _ in range(MAX_TRIES):
        x = sample_commutant(spec, rng)
        if np.linalg.cond(x.assembled) > COND_CAP:
            continue
        t = carr @ x.assembled
        y = t @ jlog @ np.linalg.inv(t)
        if np.linalg.norm(mat_exp(y) - marr) > EXP_RESIDUAL * mnorm:
            continue
        if not _eig_multiset_matches(y, expected, EIG_MATCH_TOL):
            continue
        return y, x
    raise DegenerateSampleError("no well-conditioned sample after 100 draws")


def sample_log(m, spec: SpectralData, c, branch: MultiIndexSet, seed) -> np.ndarray:
    return sample_log_with_element(m, spec, c, branch, seed)[0]


def sample_skew_log_with_element(
    m, spec: OrthoSpectralData, q, branch: SkewMultiIndexSet, seed
) -> tuple[np.ndarray, CommutantElement]:
    """One random skew-symmetric logarithm of a special orthogonal M."""
    marr = as_square_array(m)
    qarr = as_square_array(q, name="orthogonal transition")
    if not check_skew_admissible(spec, branch):
        raise InvalidBranchError("branch is not admissible for this spectrum")
    jlog = canonical_skew_log(spec, branch)
    mnorm = np.linalg.norm(marr)
    rng = _as_rng(seed)
    for _ in range(MAX_TRIES):
        x = sample_orthogonal_commutant(spec, rng)
        conj = qarr @ x.assembled
        w = conj @ jlog @ conj.T
        w = 0.5 * (w - w.T)  # project out conjugation roundoff; exact skewness
        if np.linalg.norm(mat_exp(w) - marr) <= SKEW_EXP_RESIDUAL * mnorm:
            return w, x
    raise DegenerateSampleError("no acceptable skew sample after 100 draws")


def sample_skew_log(m, spec: OrthoSpectralData, q, branch: SkewMultiIndexSet, seed) -> np.ndarray:
    return sample_skew_log_with_element(m, spec, q, branch, seed)[0]


def _det_sign(block: CommutantBlock) -> int:
    det = float(np.linalg.det(block.entries.real if not np.iscomplexobj(block.entries) else block.entries))
    if abs(det) < SIGNATURE_DET_FLOOR:
        raise DegenerateSampleError("block determinant too close to zero for a sign")
    return 1 if det > 0 else -1


def component_signature(x: CommutantElement, branch: MultiIndexSet) -> tuple[int, ...]:
    """Determinant signs of the real general blocks whose sign class
    survives the quotient: positive eigenvalues with no real-log
    multiplicity left (g = 0) and every negative eigenvalue. The signature
    takes exactly 2^(|J| + q) values over a branch with that many
    components."""
    p = len(branch.eta)
    pairs = len(branch.tau)
    q = len(branch.sigma)
    if len(x.blocks) != p + pairs + q:
        raise InvalidInputError("centralizer element does not match the branch layout")
    signs = []
    for i in range(p):
        if branch.g(i) == 0:
            signs.append(_det_sign(x.blocks[i]))
    for j in range(q):
        signs.append(_det_sign(x.blocks[p + pairs + j]))
    return tuple(signs)


def skew_component_signature(x: CommutantElement, branch: SkewMultiIndexSet) -> tuple[int, ...]:
    """Skew analogue: the sign of the identity-eigenspace block when its
    sign is not absorbed (g = 0) and the sign of the -1 block."""
    expected_blocks = (1 if branch.h else 0) + len(branch.tau) + (1 if branch.k else 0)
    if len(x.blocks) != expected_blocks:
        raise InvalidInputError("centralizer element does not match the branch layout")
    signs = []
    if branch.h and branch.g == 0:
        signs.append(_det_sign(x.blocks[0]))
    if branch.k:
        signs.append(_det_sign(x.blocks[-1]))
    return tuple(signs)


@dataclass(frozen=True)
class VerifyReport:
    exp_residual: float
    skew_residual: float
    tol: float
    passed: bool


def verify_log(m, y, tol: float = EXP_RESIDUAL) -> VerifyReport:
    """Relative exponential residual of a claimed logarithm, plus its
    distance from skew-symmetry; passes when the residual is within tol."""
    marr = as_square_array(m)
    yarr = as_square_array(y, name="logarithm")
    if marr.shape != yarr.shape:
        raise InvalidInputError("matrix and logarithm orders differ")
    residual = float(
        np.linalg.norm(mat_exp(yarr) - marr) / np.linalg.norm(marr)
    )
    skewness = float(np.linalg.norm(yarr + yarr.T))
    return VerifyReport(residual, skewness, float(tol), residual <= tol)
