"""Logarithm branches: admissible winding-index sets and canonical logs.

A branch fixes the eigenvalue multiset of a logarithm of M: per positive
eigenvalue a ladder of winding indices eta with multiplicities u (g is the
multiplicity left on the real logarithm), per non-real conjugate pair
winding indices tau with multiplicities mu, per negative eigenvalue
winding indices sigma with multiplicities v. Branch sets are enumerated
exhaustively under a cap on the integer indices; multiplicity compositions
are always exhausted since they are finitely many.

sigma is canonicalized to be non-negative: sigma and -1-sigma produce the
same eigenvalue pair +-(pi + 2*pi*sigma)i, so allowing both would list one
logarithm set twice and break the disjoint-union decomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import InvalidBranchError, InvalidInputError
from .numkernel import direct_sum, spin_block
from .spectra import OrthoSpectralData, SpectralData


@dataclass(frozen=True)
class MultiIndexSet:
    """One admissible branch for a general semi-simple matrix.

    eta[i]   = (0, eta_1, ..., eta_b) strictly increasing, non-negative;
    u[i]     = (g, u_1, ..., u_b), multiplicities matching eta[i];
    tau[p]   = strictly increasing integers for the p-th non-real pair;
    mu[p]    = matching multiplicities summing to that pair's m;
    sigma[j] = strictly increasing non-negative integers;
    v[j]     = matching multiplicities summing to k_j.
    """

    eta: tuple[tuple[int, ...], ...] = ()
    u: tuple[tuple[int, ...], ...] = ()
    tau: tuple[tuple[int, ...], ...] = ()
    mu: tuple[tuple[int, ...], ...] = ()
    sigma: tuple[tuple[int, ...], ...] = ()
    v: tuple[tuple[int, ...], ...] = ()

    def b(self, i: int) -> int:
        return len(self.eta[i]) - 1

    def g(self, i: int) -> int:
        return self.u[i][0]

    @property
    def set_i(self) -> tuple[int, ...]:
        """Positive eigenvalues carrying at least one non-zero winding."""
        return tuple(i for i in range(len(self.eta)) if self.b(i) >= 1)

    @property
    def set_j(self) -> tuple[int, ...]:
        """Positive eigenvalues whose real logarithm multiplicity vanishes."""
        return tuple(i for i in self.set_i if self.g(i) == 0)

    @property
    def set_j_hat(self) -> tuple[int, ...]:
        return tuple(i for i in self.set_i if self.g(i) == 2)

    @property
    def set_k(self) -> tuple[int, ...]:
        return tuple(
            i for i in self.set_i if self.g(i) == 0 and self.b(i) == 1 and self.u[i][1] == 1
        )

    @property
    def set_l(self) -> tuple[int, ...]:
        return tuple(
            j for j in range(len(self.sigma)) if len(self.sigma[j]) == 1 and self.v[j][0] == 1
        )

    @property
    def max_index(self) -> int:
        entries = [abs(x) for grp in self.eta + self.tau + self.sigma for x in grp]
        return max(entries, default=0)


@dataclass(frozen=True)
class SkewMultiIndexSet:
    """One admissible branch of skew-symmetric logarithms.

    Same layout as MultiIndexSet but with a single eta/u ladder for the
    eigenvalue 1, one (tau, mu) group per rotation angle, and a single
    (sigma, v) ladder for the eigenvalue -1.
    """

    eta: tuple[int, ...] = (0,)
    u: tuple[int, ...] = (0,)
    tau: tuple[tuple[int, ...], ...] = ()
    mu: tuple[tuple[int, ...], ...] = ()
    sigma: tuple[int, ...] = ()
    v: tuple[int, ...] = ()

    @property
    def b(self) -> int:
        return len(self.eta) - 1

    @property
    def g(self) -> int:
        return self.u[0]

    @property
    def c(self) -> int:
        return len(self.sigma)

    @property
    def h(self) -> int:
        return self.u[0] + 2 * sum(self.u[1:])

    @property
    def k(self) -> int:
        return sum(self.v)

    @property
    def max_index(self) -> int:
        entries = [abs(x) for x in self.eta + self.sigma]
        entries += [abs(x) for grp in self.tau for x in grp]
        return max(entries, default=0)


def _ladder_ok(indices, mults, total, lowest) -> bool:
    """Shared shape check for an (indices, multiplicities) ladder where the
    leading multiplicity g = total - 2*sum(rest) may be zero."""
    if len(indices) != len(mults) or not indices or indices[0] != 0:
        return False
    if any(indices[x] >= indices[x + 1] for x in range(len(indices) - 1)):
        return False
    if indices[0] < lowest:
        return False
    rest = mults[1:]
    if any(ux < 1 for ux in rest):
        return False
    return mults[0] == total - 2 * sum(rest) and mults[0] >= 0


def _group_ok(indices, mults, total, lowest) -> bool:
    """Shape check for a (tau, mu) or (sigma, v) group: all multiplicities
    at least one and summing exactly to total."""
    if len(indices) != len(mults) or not indices:
        return False
    if any(indices[x] >= indices[x + 1] for x in range(len(indices) - 1)):
        return False
    if indices[0] < lowest:
        return False
    return all(m >= 1 for m in mults) and sum(mults) == total


def check_admissible(spec: SpectralData, branch: MultiIndexSet) -> bool:
    """Pure predicate: does the branch satisfy every arithmetic constraint
    against the spectrum's multiplicities?"""
    try:
        p = len(spec.positive)
        pairs = spec.pairs
        q = len(spec.negative)
        if (
            len(branch.eta) != p
            or len(branch.u) != p
            or len(branch.tau) != len(pairs)
            or len(branch.mu) != len(pairs)
            or len(branch.sigma) != q
            or len(branch.v) != q
        ):
            return False
        for i in range(p):
            if not _ladder_ok(branch.eta[i], branch.u[i], spec.positive[i][1], 0):
                return False
        for idx, (_, _, m) in enumerate(pairs):
            if not _group_ok(branch.tau[idx], branch.mu[idx], m, -(10**9)):
                return False
        for j in range(q):
            if not _group_ok(branch.sigma[j], branch.v[j], spec.negative[j][1], 0):
                return False
        return True
    except (TypeError, IndexError):
        return False


def check_skew_admissible(spec: OrthoSpectralData, branch: SkewMultiIndexSet) -> bool:
    try:
        if len(branch.tau) != len(spec.rotations) or len(branch.mu) != len(spec.rotations):
            return False
        if not _ladder_ok(branch.eta, branch.u, spec.h, 0):
            return False
        for idx, (_, m) in enumerate(spec.rotations):
            if not _group_ok(branch.tau[idx], branch.mu[idx], m, -(10**9)):
                return False
        if spec.k == 0:
            return len(branch.sigma) == 0 and len(branch.v) == 0
        return _group_ok(branch.sigma, branch.v, spec.k, 0)
    except (TypeError, IndexError):
        return False


def _compositions(total: int, parts: int):
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0, *cuts, total)
        yield tuple(bounds[x + 1] - bounds[x] for x in range(parts))


def _ladder_choices(h: int, max_index: int):
    """All (eta, u) ladders for a real eigenvalue of multiplicity h."""
    out = [((0,), (h,))]
    for b in range(1, min(h // 2, max_index) + 1):
        for etas in combinations(range(1, max_index + 1), b):
            for tot in range(b, h // 2 + 1):
                for mult in _compositions(tot, b):
                    out.append(((0, *etas), (h - 2 * tot, *mult)))
    return out


def _pair_choices(m: int, max_index: int):
    """All (tau, mu) groups for a conjugate pair of multiplicity m."""
    out = []
    for d in range(1, m + 1):
        for taus in combinations(range(-max_index, max_index + 1), d):
            for mult in _compositions(m, d):
                out.append((taus, mult))
    return out


def _negative_choices(k: int, max_index: int):
    """All (sigma, v) groups for a negative eigenvalue of half-multiplicity
    k; sigma is canonicalized to non-negative integers."""
    out = []
    for c in range(1, k + 1):
        for sigmas in combinations(range(0, max_index + 1), c):
            for mult in _compositions(k, c):
                out.append((sigmas, mult))
    return out


def _branch_sort_key(branch: MultiIndexSet):
    return (
        branch.max_index,
        tuple(branch.b(i) for i in range(len(branch.eta))),
        tuple(x for grp in branch.eta for x in grp),
        tuple(x for grp in branch.u for x in grp),
        tuple(len(grp) for grp in branch.tau),
        tuple(x for grp in branch.tau for x in grp),
        tuple(x for grp in branch.mu for x in grp),
        tuple(len(grp) for grp in branch.sigma),
        tuple(x for grp in branch.sigma for x in grp),
        tuple(x for grp in branch.v for x in grp),
    )


def _skew_sort_key(branch: SkewMultiIndexSet):
    return (
        branch.max_index,
        (branch.b,),
        branch.eta,
        branch.u,
        tuple(len(grp) for grp in branch.tau),
        tuple(x for grp in branch.tau for x in grp),
        tuple(x for grp in branch.mu for x in grp),
        (branch.c,),
        branch.sigma,
        branch.v,
    )


def enumerate_branches(
    spec: SpectralData, max_index: int, max_count: int = 200
) -> tuple[list[MultiIndexSet], bool]:
    """All admissible branches with integer indices bounded by max_index,
    sorted by (max absolute index, lexicographic layout) and truncated at
    max_count. Returns (branches, truncated)."""
    if max_index < 0 or max_count < 1:
        raise InvalidInputError("max_index must be >= 0 and max_count >= 1")
    ladder_opts = [_ladder_choices(h, max_index) for _, h in spec.positive]
    pair_opts = [_pair_choices(m, max_index) for _, _, m in spec.pairs]
    neg_opts = [_negative_choices(k, max_index) for _, k in spec.negative]

    branches = []
    for ladders in product(*ladder_opts):
        for pair_groups in product(*pair_opts):
            for neg_groups in product(*neg_opts):
                branches.append(
                    MultiIndexSet(
                        eta=tuple(e for e, _ in ladders),
                        u=tuple(uu for _, uu in ladders),
                        tau=tuple(t for t, _ in pair_groups),
                        mu=tuple(mm for _, mm in pair_groups),
                        sigma=tuple(s for s, _ in neg_groups),
                        v=tuple(vv for _, vv in neg_groups),
                    )
                )
    branches.sort(key=_branch_sort_key)
    truncated = len(branches) > max_count
    return branches[:max_count], truncated


def enumerate_skew_branches(
    spec: OrthoSpectralData, max_index: int, max_count: int = 200
) -> tuple[list[SkewMultiIndexSet], bool]:
    """Skew analogue of :func:`enumerate_branches`."""
    if max_index < 0 or max_count < 1:
        raise InvalidInputError("max_index must be >= 0 and max_count >= 1")
    ladder_opts = _ladder_choices(spec.h, max_index) if spec.h else [((0,), (0,))]
    pair_opts = [_pair_choices(m, max_index) for _, m in spec.rotations]
    neg_opts = _negative_choices(spec.k, max_index) if spec.k else [((), ())]

    branches = []
    for eta, u in ladder_opts:
        for pair_groups in product(*pair_opts):
            for sigma, v in neg_opts:
                branches.append(
                    SkewMultiIndexSet(
                        eta=eta,
                        u=u,
                        tau=tuple(t for t, _ in pair_groups),
                        mu=tuple(mm for _, mm in pair_groups),
                        sigma=sigma,
                        v=v,
                    )
                )
    branches.sort(key=_skew_sort_key)
    truncated = len(branches) > max_count
    return branches[:max_count], truncated


def canonical_log(spec: SpectralData, branch: MultiIndexSet) -> np.ndarray:
    """The block-diagonal canonical logarithm of the canonical form of M
    on the given branch: log-of-modulus diagonals plus (angle + whole
    turns) rotation generators, blocks in SpectralData order."""
    if not check_admissible(spec, branch):
        raise InvalidBranchError("branch is not admissible for this spectrum")
    blocks = []
    for i, (lam, _) in enumerate(spec.positive):
        alpha = math.log(lam)
        g = branch.g(i)
        if g:
            blocks.append(alpha * np.eye(g))
        for x in range(1, len(branch.eta[i])):
            blocks.append(
                np.kron(
                    np.eye(branch.u[i][x]),
                    spin_block(alpha, 2.0 * math.pi * branch.eta[i][x]),
                )
            )
    for idx, (theta, rho, _) in enumerate(spec.pairs):
        alpha = math.log(rho)
        for z in range(len(branch.tau[idx])):
            phi = theta + 2.0 * math.pi * branch.tau[idx][z]
            blocks.append(np.kron(np.eye(branch.mu[idx][z]), spin_block(alpha, phi)))
    for j, (w, _) in enumerate(spec.negative):
        alpha = math.log(w)
        for y in range(len(branch.sigma[j])):
            phi = math.pi * (1.0 + 2.0 * branch.sigma[j][y])
            blocks.append(np.kron(np.eye(branch.v[j][y]), spin_block(alpha, phi)))
    return direct_sum(blocks)


def canonical_skew_log(spec: OrthoSpectralData, branch: SkewMultiIndexSet) -> np.ndarray:
    """Canonical skew-symmetric logarithm on the given branch; exactly
    antisymmetric by construction."""
    if not check_skew_admissible(spec, branch):
        raise InvalidBranchError("branch is not admissible for this spectrum")
    blocks = []
    if branch.g:
        blocks.append(np.zeros((branch.g, branch.g)))
    for x in range(1, len(branch.eta)):
        blocks.append(
            np.kron(np.eye(branch.u[x]), spin_block(0.0, 2.0 * math.pi * branch.eta[x]))
        )
    for idx, (theta, _) in enumerate(spec.rotations):
        for z in range(len(branch.tau[idx])):
            phi = theta + 2.0 * math.pi * branch.tau[idx][z]
            blocks.append(np.kron(np.eye(branch.mu[idx][z]), spin_block(0.0, phi)))
    for y in range(len(branch.sigma)):
        phi = math.pi * (1.0 + 2.0 * branch.sigma[y])
        blocks.append(np.kron(np.eye(branch.v[y]), spin_block(0.0, phi)))
    return direct_sum(blocks)


def principal_branch(spec: SpectralData) -> MultiIndexSet:
    """The unique branch with every winding index zero; its canonical log
    has all eigenvalue imaginary parts in [-pi, pi]."""
    return MultiIndexSet(
        eta=tuple((0,) for _ in spec.positive),
        u=tuple((h,) for _, h in spec.positive),
        tau=tuple((0,) for _ in spec.pairs),
        mu=tuple((m,) for _, _, m in spec.pairs),
        sigma=tuple((0,) for _ in spec.negative),
        v=tuple((k,) for _, k in spec.negative),
    )


def principal_skew_branch(spec: OrthoSpectralData) -> SkewMultiIndexSet:
    return SkewMultiIndexSet(
        eta=(0,),
        u=(spec.h,),
        tau=tuple((0,) for _ in spec.rotations),
        mu=tuple((m,) for _, m in spec.rotations),
        sigma=(0,) if spec.k else (),
        v=(spec.k,) if spec.k else (),
    )


def log_eigenvalues(spec: SpectralData, branch: MultiIndexSet) -> list[complex]:
    """Eigenvalues (with multiplicity, conjugates included) of any
    logarithm on the branch."""
    out: list[complex] = []
    for i, (lam, _) in enumerate(spec.positive):
        alpha = math.log(lam)
        out.extend([complex(alpha, 0.0)] * branch.g(i))
        for x in range(1, len(branch.eta[i])):
            phi = 2.0 * math.pi * branch.eta[i][x]
            out.extend([complex(alpha, phi)] * branch.u[i][x])
            out.extend([complex(alpha, -phi)] * branch.u[i][x])
    for idx, (theta, rho, _) in enumerate(spec.pairs):
        alpha = math.log(rho)
        for z in range(len(branch.tau[idx])):
            phi = theta + 2.0 * math.pi * branch.tau[idx][z]
            out.extend([complex(alpha, phi)] * branch.mu[idx][z])
            out.extend([complex(alpha, -phi)] * branch.mu[idx][z])
    for j, (w, _) in enumerate(spec.negative):
        alpha = math.log(w)
        for y in range(len(branch.sigma[j])):
            phi = math.pi * (1.0 + 2.0 * branch.sigma[j][y])
            out.extend([complex(alpha, phi)] * branch.v[j][y])
            out.extend([complex(alpha, -phi)] * branch.v[j][y])
    return out


def skew_log_eigenvalues(spec: OrthoSpectralData, branch: SkewMultiIndexSet) -> list[complex]:
    out: list[complex] = [0j] * branch.g
    for x in range(1, len(branch.eta)):
        phi = 2.0 * math.pi * branch.eta[x]
        out.extend([complex(0.0, phi)] * branch.u[x])
        out.extend([complex(0.0, -phi)] * branch.u[x])
    for idx in range(len(branch.tau)):
        theta = spec.rotations[idx][0]
        for z in range(len(branch.tau[idx])):
            phi = theta + 2.0 * math.pi * branch.tau[idx][z]
            out.extend([complex(0.0, phi)] * branch.mu[idx][z])
            out.extend([complex(0.0, -phi)] * branch.mu[idx][z])
    for y in range(len(branch.sigma)):
        phi = math.pi * (1.0 + 2.0 * branch.sigma[y])
        out.extend([complex(0.0, phi)] * branch.v[y])
        out.extend([complex(0.0, -phi)] * branch.v[y])
    return out


def branch_to_json(branch: MultiIndexSet) -> dict:
    return {
        "mode": "general",
        "eta": [list(grp) for grp in branch.eta],
        "u": [list(grp) for grp in branch.u],
        "tau": [list(grp) for grp in branch.tau],
        "mu": [list(grp) for grp in branch.mu],
        "sigma": [list(grp) for grp in branch.sigma],
        "v": [list(grp) for grp in branch.v],
    }


def skew_branch_to_json(branch: SkewMultiIndexSet) -> dict:
    return {
        "mode": "skew",
        "eta": list(branch.eta),
        "u": list(branch.u),
        "tau": [list(grp) for grp in branch.tau],
        "mu": [list(grp) for grp in branch.mu],
        "sigma": list(branch.sigma),
        "v": list(branch.v),
    }


def _int_tuple(values, name):
    try:
        out = tuple(int(x) for x in values)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"branch field {name} must hold integers") from exc
    if any(out[idx] != values[idx] for idx in range(len(out))):
        raise InvalidInputError(f"branch field {name} must hold integers")
    return out


def _nested_int_tuple(values, name):
    if not isinstance(values, (list, tuple)):
        raise InvalidInputError(f"branch field {name} must be a list of lists")
    return tuple(_int_tuple(grp, name) for grp in values)


def branch_from_json(doc) -> MultiIndexSet | SkewMultiIndexSet:
    """Decode a branch document; the "mode" field selects the flavor."""
    if not isinstance(doc, dict):
        raise InvalidInputError("branch JSON must be an object")
    missing = {"eta", "u", "tau", "mu", "sigma", "v"} - set(doc)
    if missing:
        raise InvalidInputError(f"branch JSON lacks fields: {sorted(missing)}")
    mode = doc.get("mode", "general")
    if mode == "skew":
        return SkewMultiIndexSet(
            eta=_int_tuple(doc["eta"], "eta"),
            u=_int_tuple(doc["u"], "u"),
            tau=_nested_int_tuple(doc["tau"], "tau"),
            mu=_nested_int_tuple(doc["mu"], "mu"),
            sigma=_int_tuple(doc["sigma"], "sigma"),
            v=_int_tuple(doc["v"], "v"),
        )
    if mode == "general":
        return MultiIndexSet(
            eta=_nested_int_tuple(doc["eta"], "eta"),
            u=_nested_int_tuple(doc["u"], "u"),
            tau=_nested_int_tuple(doc["tau"], "tau"),
            mu=_nested_int_tuple(doc["mu"], "mu"),
            sigma=_nested_int_tuple(doc["sigma"], "sigma"),
            v=_nested_int_tuple(doc["v"], "v"),
        )
    raise InvalidInputError(f"unknown branch mode {mode!r}")
